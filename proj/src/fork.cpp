#include "qmut/fork.hpp"

#include <algorithm>

namespace qmut {

std::optional<ForkCertificate> certificate_at(const ExchangeMatrix& b, int r) {
    const int n = b.rank();
    const QuiverTraits t = structural_predicates(b.mat());
    if (!t.abundant || t.acyclic) return std::nullopt;

    ForkCertificate cert;
    cert.point_of_return = r;
    for (int v = 0; v < n; ++v) {
        if (v == r) continue;
        if (b.at(v, r) > 0)
            cert.inbound.push_back(v);
        else if (b.at(r, v) > 0)
            cert.outbound.push_back(v);
        else
            return std::nullopt;  // b_vr == 0 contradicts abundance anyway
    }

    for (int i : cert.inbound)
        for (int j : cert.outbound) {
            const Int& cross = b.at(j, i);
            if (cross <= 0) return std::nullopt;
            if (cross <= b.at(i, r) || cross <= b.at(r, j)) return std::nullopt;
        }

    const auto acyclic_on = [&](const std::vector<int>& part) {
        try {
            acyclic_ordering(b, part);
            return true;
        } catch (const InputError&) {
            return false;
        }
    };
    if (!acyclic_on(cert.inbound) || !acyclic_on(cert.outbound)) return std::nullopt;

    return cert;
}

std::optional<ForkCertificate> find_point_of_return(const ExchangeMatrix& b) {
    for (int r = 0; r < b.rank(); ++r)
        if (auto cert = certificate_at(b, r)) return cert;
    return std::nullopt;
}

std::vector<int> acyclic_ordering(const ExchangeMatrix& b, const std::vector<int>& subset) {
    std::vector<int> indeg(subset.size(), 0);
    for (std::size_t p = 0; p < subset.size(); ++p)
        for (std::size_t q = 0; q < subset.size(); ++q)
            if (b.at(subset[q], subset[p]) > 0) ++indeg[p];

    std::vector<int> out;
    std::vector<bool> used(subset.size(), false);
    for (std::size_t step = 0; step < subset.size(); ++step) {
        int pick = -1;
        for (std::size_t p = 0; p < subset.size(); ++p)
            if (!used[p] && indeg[p] == 0) {
                pick = static_cast<int>(p);
                break;
            }
        if (pick < 0) throw InputError("induced subquiver has a directed cycle");
        used[static_cast<std::size_t>(pick)] = true;
        out.push_back(subset[static_cast<std::size_t>(pick)]);
        for (std::size_t p = 0; p < subset.size(); ++p)
            if (!used[p] && b.at(subset[static_cast<std::size_t>(pick)], subset[p]) > 0)
                --indeg[p];
    }
    return out;
}

LinearOrdering fork_linear_ordering(const ForkCertificate& cert, const ExchangeMatrix& b) {
    std::vector<int> rest;
    for (int v = 0; v < b.rank(); ++v)
        if (v != cert.point_of_return) rest.push_back(v);
    std::vector<int> acyc = acyclic_ordering(b, rest);

    LinearOrdering ord;
    ord.order.push_back(cert.point_of_return);
    for (auto it = acyc.rbegin(); it != acyc.rend(); ++it) ord.order.push_back(*it);
    return ord;
}

ForkPreservingVerdict is_fork_preserving(const ExchangeMatrix& b, const MutationSequence& w) {
    require_vertices(b.rank(), w);
    auto cert = find_point_of_return(b);
    if (!cert) throw InputError("quiver is not a fork");
    if (w.empty()) return {false, "sequence is trivial"};
    if (!is_reduced(w)) return {false, "sequence is not reduced"};
    if (w.front() == cert->point_of_return)
        return {false, "first mutation hits the point of return " +
                           std::to_string(cert->point_of_return + 1)};

    FramedSeed seed = FramedSeed::initial(b);
    for (int k : w) {
        seed = mutate_extended(seed, k);
        if (!certificate_at(seed.b, k))
            throw InternalError("intermediate quiver is not a fork with point of return " +
                                std::to_string(k + 1));
    }
    return {true, ""};
}

bool has_vortex(const ExchangeMatrix& b) {
    const int n = b.rank();
    if (n < 4) return false;

    std::vector<int> sub(4);
    const auto oriented_triangle = [&](int x, int y, int z) {
        const int sxy = sign_of(b.at(x, y));
        const int syz = sign_of(b.at(y, z));
        const int szx = sign_of(b.at(z, x));
        return sxy != 0 && sxy == syz && syz == szx;
    };

    for (sub[0] = 0; sub[0] < n; ++sub[0])
        for (sub[1] = sub[0] + 1; sub[1] < n; ++sub[1])
            for (sub[2] = sub[1] + 1; sub[2] < n; ++sub[2])
                for (sub[3] = sub[2] + 1; sub[3] < n; ++sub[3]) {
                    bool complete = true;
                    for (int p = 0; p < 4 && complete; ++p)
                        for (int q = p + 1; q < 4; ++q)
                            if (b.at(sub[p], sub[q]) == 0) {
                                complete = false;
                                break;
                            }
                    if (!complete) continue;

                    bool apex = false;
                    for (int p = 0; p < 4 && !apex; ++p) {
                        bool source = true, sink = true;
                        for (int q = 0; q < 4; ++q) {
                            if (p == q) continue;
                            if (b.at(sub[p], sub[q]) < 0) source = false;
                            if (b.at(sub[p], sub[q]) > 0) sink = false;
                        }
                        apex = source || sink;
                    }
                    if (!apex) continue;

                    bool cycle = false;
                    for (int p = 0; p < 4 && !cycle; ++p)
                        for (int q = p + 1; q < 4 && !cycle; ++q)
                            for (int s = q + 1; s < 4; ++s)
                                if (oriented_triangle(sub[p], sub[q], sub[s]) ||
                                    oriented_triangle(sub[p], sub[s], sub[q])) {
                                    cycle = true;
                                    break;
                                }
                    if (cycle) return true;
                }
    return false;
}

int last_green_vertex(const FramedSeed& seed, const ForkCertificate& cert) {
    const int n = seed.b.rank();
    const int r = cert.point_of_return;
    const std::vector<int> signs = sign_vector(seed);

    std::vector<int> greens;
    for (int v = 0; v < n; ++v)
        if (v != r && signs[static_cast<std::size_t>(v)] > 0) greens.push_back(v);

    if (greens.empty()) {
        if (signs[static_cast<std::size_t>(r)] <= 0)
            throw InternalError("every row is negative; no last green vertex exists");
        return r;
    }

    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (v != r) rest.push_back(v);
    const std::vector<int> acyc = acyclic_ordering(seed.b, rest);

    int v = -1;
    for (auto it = acyc.rbegin(); it != acyc.rend(); ++it)
        if (signs[static_cast<std::size_t>(*it)] > 0) {
            v = *it;
            break;
        }
    if (v < 0) throw InternalError("green vertex disappeared from the acyclic ordering");

    // The frontier conditions: v is green, everything pointing at v (other
    // than r) is still green, everything v points at (other than r) is red.
    for (int i = 0; i < n; ++i) {
        if (i == r || i == v) continue;
        if (seed.b.at(i, v) > 0 && signs[static_cast<std::size_t>(i)] <= 0)
            throw InternalError("vertex " + std::to_string(i + 1) +
                                " points at the last green vertex but is red");
        if (seed.b.at(v, i) > 0 && signs[static_cast<std::size_t>(i)] >= 0)
            throw InternalError("last green vertex points at " + std::to_string(i + 1) +
                                " which is still green");
    }
    return v;
}

LinearOrdering cyclic_signed_ordering(const FramedSeed& seed, const ForkCertificate& cert) {
    const int r = cert.point_of_return;
    const LinearOrdering base = fork_linear_ordering(cert, seed.b);
    const int v = last_green_vertex(seed, cert);

    LinearOrdering out;
    if (v == r) {
        out = base;
    } else {
        const auto it = std::find(base.order.begin(), base.order.end(), v);
        out.order.assign(it, base.order.end());
        out.order.insert(out.order.end(), base.order.begin(), it);
    }

    // Positive rows must precede the point of return, negative rows follow.
    const std::vector<int> signs = sign_vector(seed);
    bool before_r = true;
    for (int u : out.order) {
        if (u == r) {
            before_r = false;
            continue;
        }
        const int s = signs[static_cast<std::size_t>(u)];
        if (before_r && s <= 0)
            throw InternalError("negative row ahead of the point of return in the cyclic ordering");
        if (!before_r && s >= 0)
            throw InternalError("positive row behind the point of return in the cyclic ordering");
    }
    return out;
}

ExchangeMatrix random_fork(int n, int max_weight, std::uint64_t rng_seed) {
    if (n < 3) throw InputError("a fork needs at least 3 vertices");
    if (max_weight < 3)
        throw InputError("max_weight must be at least 3: cross weights must strictly "
                         "dominate spoke weights that are already >= 2");

    Rng rng(rng_seed);
    const int r = rng.uniform(0, n - 1);

    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (v != r) rest.push_back(v);
    rng.shuffle(rest);
    const int in_count = rng.uniform(1, n - 2);
    const std::vector<int> inbound(rest.begin(), rest.begin() + in_count);
    const std::vector<int> outbound(rest.begin() + in_count, rest.end());

    Mat b(n);
    const auto set_arrow = [&](int from, int to, int w) {
        b.at(from, to) = w;
        b.at(to, from) = -w;
    };

    for (int i : inbound) set_arrow(i, r, rng.uniform(2, max_weight - 1));
    for (int j : outbound) set_arrow(r, j, rng.uniform(2, max_weight - 1));

    // Random acyclic tournament within each spoke set: pass weights along a
    // shuffled order.
    const auto fill_part = [&](std::vector<int> part) {
        rng.shuffle(part);
        for (std::size_t p = 0; p < part.size(); ++p)
            for (std::size_t q = p + 1; q < part.size(); ++q)
                set_arrow(part[p], part[q], rng.uniform(2, max_weight));
    };
    fill_part(inbound);
    fill_part(outbound);

    for (int i : inbound)
        for (int j : outbound) {
            const int lo = static_cast<int>(std::max(b.at(i, r), b.at(r, j))) + 1;
            set_arrow(j, i, rng.uniform(lo, max_weight));
        }

    ExchangeMatrix out(std::move(b));
    if (!certificate_at(out, r))
        throw InternalError("random_fork produced a quiver that fails its own certificate");
    return out;
}

ExchangeMatrix reweighted_fork(const ExchangeMatrix& fork, const ForkCertificate& cert,
                               int max_weight, Rng& rng) {
    const int n = fork.rank();
    const int r = cert.point_of_return;
    if (max_weight < 3) throw InputError("max_weight must be at least 3");

    Mat b(n);
    const auto set_arrow = [&](int from, int to, int w) {
        b.at(from, to) = w;
        b.at(to, from) = -w;
    };

    for (int i : cert.inbound) set_arrow(i, r, rng.uniform(2, max_weight - 1));
    for (int j : cert.outbound) set_arrow(r, j, rng.uniform(2, max_weight - 1));

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == r || j == r || i == j) continue;
            const bool cross_pair =
                (std::find(cert.inbound.begin(), cert.inbound.end(), i) != cert.inbound.end()) !=
                (std::find(cert.inbound.begin(), cert.inbound.end(), j) != cert.inbound.end());
            if (cross_pair || fork.at(i, j) <= 0) continue;
            set_arrow(i, j, rng.uniform(2, max_weight));
        }

    for (int i : cert.inbound)
        for (int j : cert.outbound) {
            const int lo = static_cast<int>(std::max(b.at(i, r), b.at(r, j))) + 1;
            set_arrow(j, i, rng.uniform(lo, max_weight));
        }

    ExchangeMatrix out(std::move(b));
    if (!certificate_at(out, r))
        throw InternalError("reweighted fork lost its certificate");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sign_of(out.at(i, j)) != sign_of(fork.at(i, j)))
                throw InternalError("reweighted fork changed the sign pattern");
    return out;
}

MutationSequence random_fork_preserving_sequence(int n, int point_of_return,
                                                 int length, Rng& rng) {
    if (length < 1) throw InputError("fork-preserving sequences are non-trivial");
    MutationSequence w;
    int banned = point_of_return;
    for (int t = 0; t < length; ++t) {
        int k = rng.uniform(0, n - 2);
        if (k >= banned) ++k;  // skip the banned vertex
        w.push_back(k);
        banned = k;
    }
    return w;
}

}  // namespace qmut
