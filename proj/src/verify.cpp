#include "qmut/verify.hpp"

#include "qmut/io.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace qmut {

EpsilonTau epsilon_tau(const ExchangeMatrix& b0, const ForkCertificate& cert,
                       const MutationSequence& w) {
    const int n = b0.rank();
    require_vertices(n, w);
    if (w.empty()) throw InputError("epsilon/tau are defined for non-trivial sequences");
    if (!is_reduced(w)) throw InputError("sequence must be reduced");
    const int r = cert.point_of_return;
    const int k = w.front();
    if (k == r) throw InputError("sequence must not start at the point of return");

    const bool k_inbound =
        std::find(cert.inbound.begin(), cert.inbound.end(), k) != cert.inbound.end();

    EpsilonTau et;
    et.epsilon.resize(static_cast<std::size_t>(n));
    et.tau.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (k_inbound)
            et.epsilon[static_cast<std::size_t>(i)] = (i == k) ? -1 : 1;
        else
            et.epsilon[static_cast<std::size_t>(i)] = (i == k || i == r) ? 1 : -1;
    }
    for (int j = 0; j < n; ++j)
        et.tau[static_cast<std::size_t>(j)] = (k_inbound || j == r) ? 1 : -1;

    for (std::size_t t = 1; t < w.size(); ++t) {
        auto& e = et.epsilon[static_cast<std::size_t>(w[t])];
        e = -e;
    }
    return et;
}

std::vector<Int> pair_weights(const ExchangeMatrix& b) {
    std::vector<Int> q;
    for (int i = 0; i < b.rank(); ++i)
        for (int j = i + 1; j < b.rank(); ++j) q.push_back(abs(b.at(i, j)));
    return q;
}

std::vector<std::vector<int>> quadratic_signs(const std::vector<Int>& c,
                                              const std::vector<Int>& q) {
    const int n = static_cast<int>(c.size());
    const int m = n * (n - 1) / 2;
    if (static_cast<int>(q.size()) != m)
        throw InputError("expected " + std::to_string(m) + " pair weights for " +
                         std::to_string(n) + " vertices");
    if (m > 24) throw InputError("too many vertex pairs for exhaustive sign enumeration");

    Int base = 0;
    for (const Int& x : c) base += x * x;

    std::vector<Int> cross(static_cast<std::size_t>(m));
    {
        int p = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cross[static_cast<std::size_t>(p)] = q[static_cast<std::size_t>(p)] *
                                                     c[static_cast<std::size_t>(i)] *
                                                     c[static_cast<std::size_t>(j)];
                ++p;
            }
    }

    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        Int sum = base;
        for (int p = 0; p < m; ++p) {
            if (mask & (1u << p))
                sum += cross[static_cast<std::size_t>(p)];
            else
                sum -= cross[static_cast<std::size_t>(p)];
        }
        if (sum == 1) {
            std::vector<int> sigma(static_cast<std::size_t>(m));
            for (int p = 0; p < m; ++p)
                sigma[static_cast<std::size_t>(p)] = (mask & (1u << p)) ? 1 : -1;
            out.push_back(std::move(sigma));
        }
    }
    return out;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json checks_json = nlohmann::json::array();
    for (const auto& c : checks)
        checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"instance", instance}, {"checks", checks_json}, {"counterexample", counterexample}};
}

namespace {

std::string cell(int i, int j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// Entry check of the sign-case formula tying the mutated GIM to B^w and C^w.
bool gim_case_formula_holds(const Gim& g, const FramedSeed& seed, const EpsilonTau& et,
                            int i, int j) {
    if (i == j) return g.a.at(i, j) == 2;
    const Int& bij = seed.b.at(i, j);
    const int ci = row_sign(seed.c, i);
    const int cj = row_sign(seed.c, j);
    const int ei = et.epsilon[static_cast<std::size_t>(i)];
    const int ej = et.epsilon[static_cast<std::size_t>(j)];
    Int expected;
    if (bij * cj >= 0)
        expected = -ei * ej * abs(bij);
    else
        expected = -ei * ej * ci * cj * abs(bij);
    return g.a.at(i, j) == expected;
}

}  // namespace

VerificationReport verify_l_c_relation(const ExchangeMatrix& b0, const MutationSequence& w) {
    const auto cert = find_point_of_return(b0);
    if (!cert) throw InputError("quiver is not a fork");
    const ForkPreservingVerdict fp = is_fork_preserving(b0, w);
    if (!fp.ok) throw InputError("sequence is not fork-preserving: " + fp.reason);

    const LinearOrdering ord = fork_linear_ordering(*cert, b0);
    WalkState st = WalkState::initial(b0, ord);

    VerificationReport rep;
    rep.instance = {{"b", quiver_to_json(b0)["b"]},
                    {"w", json_from_indices(w)},
                    {"ordering", json_from_indices(ord.order)}};

    CheckResult lcheck{"l-equals-sign-adjusted-c", true, ""};
    CheckResult acheck{"gim-case-formula", true, ""};

    const int n = b0.rank();
    for (std::size_t t = 0; t < w.size(); ++t) {
        st.step(w[t]);
        const MutationSequence prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t) + 1);
        const EpsilonTau et = epsilon_tau(b0, *cert, prefix);

        for (int i = 0; i < n && lcheck.pass; ++i)
            for (int j = 0; j < n; ++j) {
                const Int expected = et.epsilon[static_cast<std::size_t>(i)] *
                                     et.tau[static_cast<std::size_t>(j)] * st.seed.c.at(i, j);
                if (st.lmat.raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                    expected) {
                    lcheck.pass = false;
                    lcheck.detail = "mismatch at " + cell(i, j) + " after prefix " +
                                    format_indices(prefix);
                    break;
                }
            }

        for (int i = 0; i < n && acheck.pass; ++i)
            for (int j = 0; j < n; ++j)
                if (!gim_case_formula_holds(st.gim, st.seed, et, i, j)) {
                    acheck.pass = false;
                    acheck.detail = "mismatch at " + cell(i, j) + " after prefix " +
                                    format_indices(prefix);
                    break;
                }

        if (!lcheck.pass || !acheck.pass) {
            rep.counterexample = {{"prefix", json_from_indices(prefix)},
                                  {"c", json_from_mat(st.seed.c)},
                                  {"l_raw", nlohmann::json::array()},
                                  {"a", json_from_mat(st.gim.a)}};
            for (const auto& row : st.lmat.raw)
                rep.counterexample["l_raw"].push_back(json_from_row(row));
            break;
        }
    }

    rep.checks = {lcheck, acheck};
    return rep;
}

VerificationReport verify_sign_invariance(const ExchangeMatrix& b1, const ExchangeMatrix& b2,
                                          const MutationSequence& w) {
    const int n = b1.rank();
    if (b2.rank() != n) throw InputError("quivers must share the vertex set");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sign_of(b1.at(i, j)) != sign_of(b2.at(i, j)))
                throw InputError("sign patterns differ at " + cell(i, j));
    require_vertices(n, w);

    VerificationReport rep;
    rep.instance = {{"b1", quiver_to_json(b1)["b"]},
                    {"b2", quiver_to_json(b2)["b"]},
                    {"w", json_from_indices(w)}};

    CheckResult check{"sign-vectors-match", true, ""};
    FramedSeed s1 = FramedSeed::initial(b1);
    FramedSeed s2 = FramedSeed::initial(b2);
    for (std::size_t t = 0; t <= w.size(); ++t) {
        if (t > 0) {
            s1 = mutate_extended(s1, w[t - 1]);
            s2 = mutate_extended(s2, w[t - 1]);
        }
        if (sign_vector(s1) != sign_vector(s2)) {
            check.pass = false;
            const MutationSequence prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
            check.detail = "sign vectors diverge after prefix " + format_indices(prefix);
            rep.counterexample = {{"prefix", json_from_indices(prefix)},
                                  {"c1", json_from_mat(s1.c)},
                                  {"c2", json_from_mat(s2.c)}};
            break;
        }
    }
    rep.checks = {check};
    return rep;
}

namespace {

Mat mutate_b_only(const Mat& b, int k) {
    const int n = b.size();
    Mat nb(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                nb.at(i, j) = -b.at(i, j);
            } else {
                Int prod = b.at(i, k) * b.at(k, j);
                nb.at(i, j) = (prod > 0) ? b.at(i, j) + sign_of(b.at(i, k)) * prod : b.at(i, j);
            }
        }
    return nb;
}

bool is_acyclic_b(const Mat& b) { return structural_predicates(b).acyclic; }

std::array<Int, 3> sorted_weights(const Mat& b) {
    std::array<Int, 3> w = {abs(b.at(0, 1)), abs(b.at(0, 2)), abs(b.at(1, 2))};
    std::sort(w.begin(), w.end(), std::greater<Int>());
    return w;
}

std::vector<std::string> mat_key(const Mat& b) {
    std::vector<std::string> key;
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j) key.push_back(b.at(i, j).str());
    return key;
}

// Greedy weight descent; returns {stuck-while-cyclic, steps taken}.
std::pair<bool, int> rank3_descent(Mat b) {
    int steps = 0;
    while (true) {
        if (is_acyclic_b(b)) return {false, steps};
        const std::array<Int, 3> cur = sorted_weights(b);
        int best_k = -1;
        std::array<Int, 3> best = cur;
        for (int k = 0; k < 3; ++k) {
            const std::array<Int, 3> cand = sorted_weights(mutate_b_only(b, k));
            if (cand < best) {
                best = cand;
                best_k = k;
            }
        }
        if (best_k < 0) return {true, steps};
        b = mutate_b_only(b, best_k);
        ++steps;
    }
}

// All reduced mutation paths to the given depth; true when some node is
// acyclic.
bool rank3_bfs_finds_acyclic(const Mat& b0, int depth) {
    std::set<std::vector<std::string>> seen;
    std::vector<std::pair<Mat, int>> frontier = {{b0, -1}};
    seen.insert(mat_key(b0));
    for (int d = 0; d <= depth; ++d) {
        std::vector<std::pair<Mat, int>> next;
        for (const auto& [b, last] : frontier) {
            if (is_acyclic_b(b)) return true;
            if (d == depth) continue;
            for (int k = 0; k < 3; ++k) {
                if (k == last) continue;
                Mat nb = mutate_b_only(b, k);
                if (seen.insert(mat_key(nb)).second) next.emplace_back(std::move(nb), k);
            }
        }
        frontier = std::move(next);
    }
    return false;
}

}  // namespace

bool is_mutation_cyclic_rank3(const ExchangeMatrix& b, int bfs_depth) {
    if (b.rank() != 3) throw InputError("mutation-cyclicity test is rank-3 only");
    const auto [descent_cyclic, steps] = rank3_descent(b.mat());
    const int depth = std::max(bfs_depth, steps + 1);
    const bool bfs_found = rank3_bfs_finds_acyclic(b.mat(), depth);
    if (descent_cyclic && bfs_found)
        throw InternalError("weight descent got stuck on a cyclic quiver but a bounded "
                            "search reached an acyclic one");
    if (!descent_cyclic && !bfs_found)
        throw InternalError("weight descent reached an acyclic quiver the bounded search "
                            "could not find");
    return descent_cyclic;
}

VerificationReport verify_rank3_theorem(const ExchangeMatrix& b, int max_depth) {
    if (b.rank() != 3) throw InputError("this check is rank-3 only");
    if (max_depth < 1) throw InputError("max_depth must be at least 1");
    if (!is_mutation_cyclic_rank3(b))
        throw InputError("quiver is mutation-acyclic; the claim under test needs a "
                         "mutation-cyclic quiver");

    const std::vector<Int> q = pair_weights(b);

    VerificationReport rep;
    rep.instance = {{"b", quiver_to_json(b)["b"]}, {"max_depth", max_depth}};
    CheckResult check{"quadratic-membership", true, ""};

    long long rows_checked = 0;
    long long sequences = 0;

    struct Node {
        FramedSeed seed;
        int depth;
    };
    std::vector<Node> stack;
    stack.push_back({FramedSeed::initial(b), 0});

    while (!stack.empty() && check.pass) {
        Node node = std::move(stack.back());
        stack.pop_back();
        ++sequences;

        for (int i = 0; i < 3; ++i) {
            ++rows_checked;
            const std::vector<Int> row = node.seed.c.row(i);
            if (quadratic_signs(row, q).empty()) {
                check.pass = false;
                check.detail = "row " + std::to_string(i + 1) + " after " +
                               format_indices(node.seed.history) +
                               " admits no sign pattern";
                rep.counterexample = {{"w", json_from_indices(node.seed.history)},
                                      {"row", i + 1},
                                      {"c_row", json_from_row(row)},
                                      {"q", json_from_row(q)}};
                break;
            }
        }
        if (!check.pass || node.depth == max_depth) continue;

        const int last = node.seed.history.empty() ? -1 : node.seed.history.back();
        for (int k = 2; k >= 0; --k) {
            if (k == last) continue;
            stack.push_back({mutate_extended(node.seed, k), node.depth + 1});
        }
    }

    if (check.pass)
        check.detail = std::to_string(rows_checked) + " rows over " +
                       std::to_string(sequences) + " sequences";
    rep.checks = {check};
    return rep;
}

const std::vector<std::string>& campaign_check_names() {
    static const std::vector<std::string> names = {
        "fork-preserving",      "gim-admissible",   "gram-identity",
        "l-c-relation",         "word-recurrence-agreement",
        "coxeter-product",      "sign-invariance",  "quadratic-membership",
        "vortex-free"};
    return names;
}

namespace {

Int bilinear(const std::vector<Int>& u, const Mat& a, const std::vector<Int>& v) {
    const std::vector<Int> ua = row_times(u, a);
    Int s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += ua[j] * v[j];
    return s;
}

bool rows_equal_up_to_sign(const std::vector<Int>& u, const std::vector<Int>& v) {
    if (u == v) return true;
    for (std::size_t j = 0; j < u.size(); ++j)
        if (u[j] != -v[j]) return false;
    return true;
}

}  // namespace

VerificationReport random_walk_campaign(const CampaignConfig& config) {
    if (config.trials < 0) throw InputError("trials must be non-negative");
    if (config.walk_length < 1) throw InputError("walk_length must be positive");
    if (config.ranks.empty()) throw InputError("at least one rank is required");
    for (int n : config.ranks)
        if (n < 3) throw InputError("forks need rank >= 3");

    const auto& known = campaign_check_names();
    std::vector<std::string> selected = config.checks.empty() ? known : config.checks;
    for (const auto& name : selected)
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw InputError("unknown check '" + name + "'");
    const auto on = [&](const char* name) {
        return std::find(selected.begin(), selected.end(), name) != selected.end();
    };

    std::map<std::string, CheckResult> tally;
    for (const auto& name : selected) tally[name] = {name, true, ""};
    long long evaluations = 0;

    VerificationReport rep;
    rep.instance = {{"ranks", config.ranks},
                    {"max_weight", config.max_weight},
                    {"walk_length", config.walk_length},
                    {"trials", config.trials},
                    {"rng_seed", config.rng_seed},
                    {"checks", selected}};

    for (int trial = 0; trial < config.trials; ++trial) {
        const int n = config.ranks[static_cast<std::size_t>(trial) % config.ranks.size()];
        const std::uint64_t trial_seed = mix_seed(config.rng_seed, static_cast<std::uint64_t>(trial));
        Rng rng(trial_seed);

        const ExchangeMatrix fork = random_fork(n, config.max_weight, rng.next());
        const auto cert = find_point_of_return(fork);
        if (!cert) throw InternalError("random fork lost its certificate");

        const int len = rng.uniform(1, config.walk_length);
        const MutationSequence w =
            random_fork_preserving_sequence(n, cert->point_of_return, len, rng);

        const LinearOrdering ord = fork_linear_ordering(*cert, fork);
        const Gim a0 = gim_from_ordering(fork, ord);
        const std::vector<Int> q0 = pair_weights(fork);

        WalkState st = WalkState::initial(fork, ord);
        FramedSeed sibling = FramedSeed::initial(
            reweighted_fork(fork, *cert, config.max_weight, rng));

        auto fail = [&](const std::string& name, const std::string& detail,
                        const MutationSequence& prefix) {
            auto& t = tally[name];
            if (!t.pass) return;
            t.pass = false;
            t.detail = detail;
            if (rep.counterexample.is_null())
                rep.counterexample = {{"trial", trial},
                                      {"trial_seed", trial_seed},
                                      {"n", n},
                                      {"b", quiver_to_json(fork)["b"]},
                                      {"w", json_from_indices(w)},
                                      {"prefix", json_from_indices(prefix)},
                                      {"check", name},
                                      {"detail", detail}};
        };

        if (on("vortex-free")) {
            ++evaluations;
            if (has_vortex(fork)) fail("vortex-free", "fork contains a vortex", {});
        }

        MutationSequence prefix;
        for (int k : w) {
            st.step(k);
            sibling = mutate_extended(sibling, k);
            prefix.push_back(k);
            const EpsilonTau et = epsilon_tau(fork, *cert, prefix);

            if (on("fork-preserving")) {
                ++evaluations;
                if (!certificate_at(st.seed.b, k))
                    fail("fork-preserving",
                         "mutated quiver is not a fork returning at " + std::to_string(k + 1),
                         prefix);
            }
            if (on("gim-admissible")) {
                ++evaluations;
                if (!is_admissible(st.gim, st.seed.b))
                    fail("gim-admissible", "mutated GIM is not admissible", prefix);
            }
            if (on("gram-identity")) {
                ++evaluations;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (bilinear(st.lmat.raw[static_cast<std::size_t>(i)], a0.a,
                                     st.lmat.raw[static_cast<std::size_t>(j)]) !=
                            st.gim.a.at(i, j)) {
                            fail("gram-identity", "l_i A l_j^T != a_ij at " + cell(i, j),
                                 prefix);
                            i = n;
                            break;
                        }
            }
            if (on("l-c-relation")) {
                ++evaluations;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i)
                    for (int j = 0; j < n; ++j) {
                        const Int expected = et.epsilon[static_cast<std::size_t>(i)] *
                                             et.tau[static_cast<std::size_t>(j)] *
                                             st.seed.c.at(i, j);
                        if (st.lmat.raw[static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(j)] != expected ||
                            !gim_case_formula_holds(st.gim, st.seed, et, i, j)) {
                            fail("l-c-relation", "relation fails at " + cell(i, j), prefix);
                            ok = false;
                            break;
                        }
                    }
            }
            if (on("word-recurrence-agreement")) {
                ++evaluations;
                const LMatrix from_words = l_matrix_from_words(a0, st.refs);
                for (int i = 0; i < n; ++i)
                    if (!rows_equal_up_to_sign(from_words.raw[static_cast<std::size_t>(i)],
                                               st.lmat.raw[static_cast<std::size_t>(i)])) {
                        fail("word-recurrence-agreement",
                             "row " + std::to_string(i + 1) + " differs beyond sign", prefix);
                        break;
                    }
            }
            if (on("sign-invariance")) {
                ++evaluations;
                if (sign_vector(st.seed) != sign_vector(sibling))
                    fail("sign-invariance", "sibling fork sign vector diverged", prefix);
            }
            if (on("quadratic-membership")) {
                ++evaluations;
                for (int i = 0; i < n; ++i)
                    if (quadratic_signs(st.seed.c.row(i), q0).empty()) {
                        fail("quadratic-membership",
                             "row " + std::to_string(i + 1) + " admits no sign pattern",
                             prefix);
                        break;
                    }
            }
        }

        if (on("coxeter-product")) {
            ++evaluations;
            const CoxeterProductCheck cpc = coxeter_product_check(fork, w);
            if (!cpc.equal)
                fail("coxeter-product", "reflection product differs from the base product", w);
        }
    }

    for (const auto& name : selected) {
        CheckResult r = tally[name];
        if (r.pass) r.detail = "";
        rep.checks.push_back(std::move(r));
    }
    rep.instance["evaluations"] = evaluations;
    return rep;
}

}  // namespace qmut
