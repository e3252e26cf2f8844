#include "qmut/curves.hpp"
#include "qmut/io.hpp"
#include "qmut/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qmut;
using nlohmann::json;

namespace {

std::string align_rows(const std::vector<std::vector<std::string>>& rows) {
    std::size_t cols = 0;
    for (const auto& r : rows) cols = std::max(cols, r.size());
    std::vector<std::size_t> width(cols, 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream out;
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) out << "  ";
            out << std::string(width[c] - r[c].size(), ' ') << r[c];
        }
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> mat_row_cells(const Mat& m, int i) {
    std::vector<std::string> cells;
    for (int j = 0; j < m.size(); ++j) cells.push_back(m.at(i, j).str());
    return cells;
}

std::string table_extended(const Mat& b, const Mat& c) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < b.size(); ++i) {
        auto cells = mat_row_cells(b, i);
        cells.push_back("|");
        for (const auto& cell : mat_row_cells(c, i)) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return align_rows(rows);
}

std::string table_mat(const Mat& m) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < m.size(); ++i) rows.push_back(mat_row_cells(m, i));
    return align_rows(rows);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) out += ",";
        out += csv_field(cells[c]);
    }
    return out + "\n";
}

std::string csv_mat(const Mat& m) {
    std::string out;
    for (int i = 0; i < m.size(); ++i) out += csv_line(mat_row_cells(m, i));
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(v[i]);
    }
    return out;
}

json json_rows(const std::vector<std::vector<Int>>& rows) {
    json out = json::array();
    for (const auto& r : rows) out.push_back(json_from_row(r));
    return out;
}

LinearOrdering parse_ordering(const std::string& csv, int n) {
    LinearOrdering ord{parse_indices(csv, n)};
    if (static_cast<int>(ord.order.size()) != n)
        throw InputError("ordering must list all " + std::to_string(n) + " vertices");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : ord.order) {
        if (seen[static_cast<std::size_t>(v)])
            throw InputError("ordering repeats vertex " + std::to_string(v + 1));
        seen[static_cast<std::size_t>(v)] = true;
    }
    return ord;
}

LinearOrdering fork_ordering_or_throw(const ExchangeMatrix& b) {
    auto cert = find_point_of_return(b);
    if (!cert) throw InputError("quiver is not a fork; pass --ordering explicitly");
    return fork_linear_ordering(*cert, b);
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = std::stoi(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw InputError("bad integer list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

struct CommonFlags {
    std::string format = "table";
    std::string out;
    std::string log;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    sub->add_option("--out", flags.out, "Write output to this path instead of stdout");
    sub->add_option("--log", flags.log, "Append a run record (JSON lines) to this path");
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputError("cannot open output path " + out_path);
    file << text;
}

int finish(const std::string& command, const json& config, const CommonFlags& flags,
           const json& payload, const std::string& table, const std::string& csv, bool pass) {
    std::string text;
    if (flags.format == "json")
        text = payload.dump(2) + "\n";
    else if (flags.format == "csv")
        text = csv;
    else
        text = table;
    emit_text(text, flags.out);
    if (!flags.log.empty()) append_run_record(flags.log, command, config, digest64(payload), pass);
    return pass ? 0 : 1;
}

std::string sign_string(const std::vector<int>& sv) {
    std::string out;
    for (std::size_t i = 0; i < sv.size(); ++i) {
        if (i) out += " ";
        out += (sv[i] > 0 ? "+1" : "-1");
    }
    return out;
}

ReflectionTuple reflections_after(const ExchangeMatrix& b0, const MutationSequence& w) {
    ReflectionTuple refs = initial_reflections(b0.rank());
    FramedSeed seed = FramedSeed::initial(b0);
    for (int k : w) {
        refs = mutate_reflections(refs, seed, k);
        seed = mutate_extended(seed, k);
    }
    return refs;
}

// ---------------------------------------------------------------- mutate --

int run_mutate(const std::string& quiver, const std::string& seq, const CommonFlags& flags) {
    const ExchangeMatrix b0 = load_quiver(quiver);
    const MutationSequence w = parse_indices(seq, b0.rank());
    const FramedSeed state = apply_sequence(b0, w);
    const std::vector<int> sv = sign_vector(state);

    json payload = {{"n", b0.rank()},
                    {"seq", json_from_indices(w)},
                    {"b", json_from_mat(state.b.mat())},
                    {"c", json_from_mat(state.c)},
                    {"sign_vector", sv}};
    const std::string table =
        table_extended(state.b.mat(), state.c) + "sign vector: " + sign_string(sv) + "\n";
    std::string csv;
    for (int i = 0; i < b0.rank(); ++i) {
        auto cells = mat_row_cells(state.b.mat(), i);
        for (auto& extra : mat_row_cells(state.c, i)) cells.push_back(extra);
        csv += csv_line(cells);
    }
    const json config = {{"quiver", quiver}, {"seq", seq}, {"format", flags.format}};
    return finish("mutate", config, flags, payload, table, csv, true);
}

// --------------------------------------------------------------- lmatrix --

int run_lmatrix(const std::string& quiver, const std::string& seq, const std::string& ordering,
                const std::string& method, const CommonFlags& flags) {
    const ExchangeMatrix b0 = load_quiver(quiver);
    const MutationSequence w = parse_indices(seq, b0.rank());
    const LinearOrdering ord =
        ordering.empty() ? fork_ordering_or_throw(b0) : parse_ordering(ordering, b0.rank());

    std::optional<LMatrix> by_word;
    std::optional<LMatrix> by_recurrence;
    if (method == "word" || method == "both") {
        const Gim g0 = gim_from_ordering(b0, ord);
        by_word = l_matrix_from_words(g0, reflections_after(b0, w));
    }
    if (method == "recurrence" || method == "both") by_recurrence = l_matrix_recurrence(b0, ord, w);

    bool pass = true;
    json payload = {{"n", b0.rank()},
                    {"seq", json_from_indices(w)},
                    {"ordering", json_from_indices(ord.order)},
                    {"method", method}};
    std::string table;
    std::string csv;
    const LMatrix& primary = by_word ? *by_word : *by_recurrence;
    if (by_word) {
        payload["word"] = {{"raw", json_rows(by_word->raw)},
                           {"canonical", json_rows(by_word->canonical())}};
        table += "word path, raw rows:\n" + table_mat(Mat::from_rows(by_word->raw));
    }
    if (by_recurrence) {
        payload["recurrence"] = {{"raw", json_rows(by_recurrence->raw)},
                                 {"canonical", json_rows(by_recurrence->canonical())}};
        table += "recurrence, raw rows:\n" + table_mat(Mat::from_rows(by_recurrence->raw));
    }
    if (by_word && by_recurrence) {
        pass = by_word->canonical() == by_recurrence->canonical();
        payload["agree_up_to_row_sign"] = pass;
        table += std::string("agree up to row sign: ") + (pass ? "yes" : "NO") + "\n";
    }
    csv = csv_mat(Mat::from_rows(primary.raw));

    const json config = {{"quiver", quiver},
                         {"seq", seq},
                         {"ordering", ordering},
                         {"method", method},
                         {"format", flags.format}};
    return finish("lmatrix", config, flags, payload, table, csv, pass);
}

// ----------------------------------------------------------- reflections --

int run_reflections(const std::string& quiver, const std::string& seq, const CommonFlags& flags) {
    const ExchangeMatrix b0 = load_quiver(quiver);
    const MutationSequence w = parse_indices(seq, b0.rank());
    const ReflectionTuple refs = reflections_after(b0, w);

    json words = json::array();
    std::string table;
    std::string csv;
    for (int i = 0; i < b0.rank(); ++i) {
        words.push_back(json_from_indices(refs[static_cast<std::size_t>(i)]));
        table += "r_" + std::to_string(i + 1) + ": " +
                 word_to_string(refs[static_cast<std::size_t>(i)]) + "\n";
        std::vector<std::string> cells;
        for (int letter : refs[static_cast<std::size_t>(i)])
            cells.push_back(std::to_string(letter + 1));
        csv += csv_line(cells);
    }
    const json payload = {
        {"n", b0.rank()}, {"seq", json_from_indices(w)}, {"reflections", words}};
    const json config = {{"quiver", quiver}, {"seq", seq}, {"format", flags.format}};
    return finish("reflections", config, flags, payload, table, csv, true);
}

// ------------------------------------------------------------------ gim --

int run_gim(const std::string& quiver, const std::string& seq, const std::string& ordering,
            const CommonFlags& flags) {
    const ExchangeMatrix b0 = load_quiver(quiver);
    const MutationSequence w = parse_indices(seq, b0.rank());
    const LinearOrdering ord =
        ordering.empty() ? fork_ordering_or_throw(b0) : parse_ordering(ordering, b0.rank());

    const auto [g, state] = apply_gim_sequence(b0, ord, w);
    const bool admissible = is_admissible(g, state.b);

    const json payload = {{"n", b0.rank()},
                          {"seq", json_from_indices(w)},
                          {"ordering", json_from_indices(ord.order)},
                          {"a", json_from_mat(g.a)},
                          {"admissible", admissible}};
    const std::string table =
        table_mat(g.a) + std::string("admissible: ") + (admissible ? "yes" : "NO") + "\n";
    const json config = {
        {"quiver", quiver}, {"seq", seq}, {"ordering", ordering}, {"format", flags.format}};
    return finish("gim", config, flags, payload, table, csv_mat(g.a), admissible);
}

// ---------------------------------------------------------------- verify --

std::string report_table(const VerificationReport& report) {
    std::string out;
    for (const auto& check : report.checks) {
        out += check.name + ": " + (check.pass ? "pass" : "FAIL");
        if (!check.detail.empty()) out += "  (" + check.detail + ")";
        out += "\n";
    }
    if (!report.counterexample.is_null())
        out += "counterexample: " + report.counterexample.dump() + "\n";
    return out;
}

std::string report_csv(const VerificationReport& report) {
    std::string out;
    for (const auto& check : report.checks)
        out += csv_line({check.name, check.pass ? "pass" : "fail", check.detail});
    return out;
}

VerificationReport gim_admissible_report(const ExchangeMatrix& b0, const MutationSequence& w,
                                         const LinearOrdering& ord) {
    VerificationReport report;
    report.instance = {{"quiver", quiver_to_json(b0)},
                       {"seq", json_from_indices(w)},
                       {"ordering", json_from_indices(ord.order)}};
    Gim g = gim_from_ordering(b0, ord);
    FramedSeed state = FramedSeed::initial(b0);
    bool pass = true;
    std::size_t checked = 0;
    for (std::size_t t = 0; t <= w.size(); ++t) {
        if (!is_admissible(g, state.b)) {
            pass = false;
            report.counterexample = {
                {"prefix", json_from_indices(MutationSequence(w.begin(), w.begin() + t))},
                {"a", json_from_mat(g.a)}};
            break;
        }
        ++checked;
        if (t < w.size()) {
            g = mutate_gim(g, state, w[t]);
            state = mutate_extended(state, w[t]);
        }
    }
    report.checks.push_back({"gim-admissible", pass,
                             std::to_string(checked) + " of " + std::to_string(w.size() + 1) +
                                 " prefixes admissible"});
    return report;
}

VerificationReport coxeter_report(const ExchangeMatrix& b0, const MutationSequence& w,
                                  const std::string& lambda, const std::string& rho) {
    if (lambda.empty() != rho.empty())
        throw InputError("--lambda and --rho must be given together");
    CoxeterProductCheck check =
        lambda.empty() ? coxeter_product_check(b0, w)
                       : coxeter_product_check_explicit(b0, w, parse_ordering(lambda, b0.rank()).order,
                                                        parse_ordering(rho, b0.rank()).order);
    VerificationReport report;
    report.instance = {{"quiver", quiver_to_json(b0)},
                       {"seq", json_from_indices(w)},
                       {"lambda", json_from_indices(check.lambda_order)},
                       {"rho", json_from_indices(check.rho_order)}};
    report.checks.push_back({"coxeter-product", check.equal,
                             "lhs = " + word_to_string(check.lhs) +
                                 ", rhs = " + word_to_string(check.rhs)});
    if (!check.equal)
        report.counterexample = {{"lhs", json_from_indices(check.lhs)},
                                 {"rhs", json_from_indices(check.rhs)}};
    return report;
}

// ------------------------------------------------------------------ walk --

json walk_snapshot(const WalkState& st, const MutationSequence& prefix) {
    json refs = json::array();
    for (const auto& r : st.refs) refs.push_back(json_from_indices(r));
    return {{"prefix", json_from_indices(prefix)},
            {"sign_vector", sign_vector(st.seed)},
            {"b", json_from_mat(st.seed.b.mat())},
            {"c", json_from_mat(st.seed.c)},
            {"a", json_from_mat(st.gim.a)},
            {"l_raw", json_rows(st.lmat.raw)},
            {"reflections", refs}};
}

int run_walk(const std::string& quiver, const std::string& seq, const std::string& ordering,
             int length, std::uint64_t rng_seed, bool seed_given, const CommonFlags& flags) {
    const ExchangeMatrix b0 = load_quiver(quiver);
    const auto cert = find_point_of_return(b0);
    if (!cert) throw InputError("walks are defined for forks; the quiver has no point of return");

    MutationSequence w;
    if (!seq.empty()) {
        w = parse_indices(seq, b0.rank());
    } else {
        if (!seed_given) throw InputError("--rng-seed is required when --seq is absent");
        if (length < 1) throw InputError("--length must be at least 1");
        Rng rng(rng_seed);
        w = random_fork_preserving_sequence(b0.rank(), cert->point_of_return, length, rng);
    }
    const ForkPreservingVerdict verdict = is_fork_preserving(b0, w);
    if (!verdict.ok) throw InputError("sequence is not fork-preserving: " + verdict.reason);

    const LinearOrdering ord =
        ordering.empty() ? fork_linear_ordering(*cert, b0) : parse_ordering(ordering, b0.rank());

    WalkState st = WalkState::initial(b0, ord);
    json steps = json::array();
    std::string table;
    MutationSequence prefix;
    steps.push_back(walk_snapshot(st, prefix));
    table += "start: signs " + sign_string(sign_vector(st.seed)) + "\n";
    for (int k : w) {
        st.step(k);
        prefix.push_back(k);
        steps.push_back(walk_snapshot(st, prefix));
        table += "after " + format_indices(prefix) + ": signs " +
                 sign_string(sign_vector(st.seed)) + ", point of return " +
                 std::to_string(k + 1) + "\n";
    }
    table += "final [B | C]:\n" + table_extended(st.seed.b.mat(), st.seed.c);
    table += "final GIM:\n" + table_mat(st.gim.a);
    table += "final L raw:\n" + table_mat(Mat::from_rows(st.lmat.raw));
    for (std::size_t i = 0; i < st.refs.size(); ++i)
        table += "r_" + std::to_string(i + 1) + ": " + word_to_string(st.refs[i]) + "\n";

    std::string csv;
    {
        std::size_t t = 0;
        for (const auto& step : steps) {
            std::vector<std::string> cells = {std::to_string(t++)};
            for (const auto& s : step["sign_vector"]) cells.push_back(s.dump());
            csv += csv_line(cells);
        }
    }
    const json payload = {{"n", b0.rank()},
                          {"seq", json_from_indices(w)},
                          {"ordering", json_from_indices(ord.order)},
                          {"steps", steps}};
    json config = {{"quiver", quiver},
                   {"seq", seq},
                   {"ordering", ordering},
                   {"length", length},
                   {"format", flags.format}};
    if (seed_given) config["rng_seed"] = rng_seed;
    return finish("walk", config, flags, payload, table, csv, true);
}

// ---------------------------------------------------------------- curves --

int run_curves(const std::string& quiver, const std::string& seq, const std::string& sigma,
               int bound, const CommonFlags& flags) {
    const ExchangeMatrix b0 = load_quiver(quiver);
    const QuiverTraits traits = structural_predicates(b0.mat());
    if (b0.rank() != 3 || !traits.abundant || traits.acyclic)
        throw InputError("curves need a rank-3 abundant non-acyclic quiver");

    const MutationSequence w = parse_indices(seq, 3);
    LinearOrdering ord;
    if (!sigma.empty()) {
        ord = parse_ordering(sigma, 3);
    } else {
        const FramedSeed end = apply_sequence(b0, w);
        auto cert = find_point_of_return(end.b);
        if (cert)
            ord = fork_linear_ordering(*cert, end.b);
        else if (auto cert0 = find_point_of_return(b0))
            ord = fork_linear_ordering(*cert0, b0);
        else
            throw InputError("quiver is not a fork; pass --sigma explicitly");
    }
    const FamilyLabeling lab{ord};
    const ReflectionTuple refs = reflections_after(b0, w);

    const auto family = curve_family(refs, lab, bound);
    json words = json::array();
    for (const auto& r : refs) words.push_back(json_from_indices(r));

    json config = {{"quiver", quiver},
                   {"seq", seq},
                   {"sigma", sigma},
                   {"bound", bound},
                   {"format", flags.format}};
    if (!family) {
        const json payload = {{"n", 3},
                              {"seq", json_from_indices(w)},
                              {"sigma", json_from_indices(ord.order)},
                              {"reflections", words},
                              {"found", false}};
        const std::string table = "curve search inconclusive within bound " +
                                  std::to_string(bound) + "\n";
        return finish("curves", config, flags, payload, table, table, false);
    }

    json crossing = json::array();
    std::string summary;
    for (std::size_t i = 0; i < family->size(); ++i) {
        const Word cw = crossing_word((*family)[i], lab);
        if (cw != refs[i]) throw InternalError("curve family fails self-validation");
        crossing.push_back(json_from_indices(cw));
        summary += "curve " + std::to_string(i + 1) + ": word " + word_to_string(cw) +
                   ", admissible\n";
    }
    summary += "pairwise non-crossing: yes\n";

    int x0, y0, x1, y1;
    svg_window(*family, x0, y0, x1, y1);
    const std::string svg = render_svg(*family, x0, y0, x1, y1);

    const json payload = {{"n", 3},
                          {"seq", json_from_indices(w)},
                          {"sigma", json_from_indices(ord.order)},
                          {"reflections", words},
                          {"crossing_words", crossing},
                          {"found", true},
                          {"non_crossing", true},
                          {"svg", svg}};

    std::string table;
    std::string csv;
    if (!flags.out.empty()) {
        std::ofstream file(flags.out, std::ios::binary);
        if (!file) throw InputError("cannot open output path " + flags.out);
        file << svg;
        table = summary + "svg written to " + flags.out + "\n";
        for (std::size_t i = 0; i < family->size(); ++i)
            csv += csv_line({std::to_string(i + 1), word_to_string(refs[i])});
    } else {
        table = svg;  // stdout carries the figure itself
        csv = svg;
    }
    if (flags.format == "json") {
        if (!flags.log.empty())
            append_run_record(flags.log, "curves", config, digest64(payload), true);
        std::cout << payload.dump(2) << "\n";
        return 0;
    }
    std::cout << table;
    std::cout.flush();
    if (!flags.log.empty()) append_run_record(flags.log, "curves", config, digest64(payload), true);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quiver mutation, fork walks, GIMs, and admissible curves"};
    app.require_subcommand(1);
    int rc = 0;

    std::string quiver, seq, ordering, method = "both", theorem = "campaign";
    std::string pair_arg, lambda_arg, rho_arg, sigma_arg, checks_arg, ranks_arg = "3,4,5";
    int depth = 6, trials = 200, max_weight = 7, walk_length = 10, length = 6, bound = 8;
    std::uint64_t rng_seed = 0;
    CommonFlags mutate_flags, lmatrix_flags, refl_flags, gim_flags, verify_flags, walk_flags,
        curves_flags;

    auto* cmd_mutate = app.add_subcommand("mutate", "Mutate [B | C] along a sequence");
    cmd_mutate->add_option("--quiver", quiver, "Quiver file or builtin name")->required();
    cmd_mutate->add_option("--seq", seq, "Comma-separated 1-based mutation sequence");
    add_common(cmd_mutate, mutate_flags);
    cmd_mutate->callback([&] { rc = run_mutate(quiver, seq, mutate_flags); });

    auto* cmd_lmatrix = app.add_subcommand("lmatrix", "L-matrix along a sequence");
    cmd_lmatrix->add_option("--quiver", quiver)->required();
    cmd_lmatrix->add_option("--seq", seq);
    cmd_lmatrix->add_option("--ordering", ordering, "Linear ordering for the GIM (1-based)");
    cmd_lmatrix->add_option("--method", method)
        ->check(CLI::IsMember({"word", "recurrence", "both"}))
        ->capture_default_str();
    add_common(cmd_lmatrix, lmatrix_flags);
    cmd_lmatrix->callback([&] { rc = run_lmatrix(quiver, seq, ordering, method, lmatrix_flags); });

    auto* cmd_refl = app.add_subcommand("reflections", "Mutated reflection words");
    cmd_refl->add_option("--quiver", quiver)->required();
    cmd_refl->add_option("--seq", seq);
    add_common(cmd_refl, refl_flags);
    cmd_refl->callback([&] { rc = run_reflections(quiver, seq, refl_flags); });

    auto* cmd_gim = app.add_subcommand("gim", "GIM from an ordering, mutated along a sequence");
    cmd_gim->add_option("--quiver", quiver)->required();
    cmd_gim->add_option("--seq", seq);
    cmd_gim->add_option("--ordering", ordering);
    add_common(cmd_gim, gim_flags);
    cmd_gim->callback([&] { rc = run_gim(quiver, seq, ordering, gim_flags); });

    auto* cmd_verify = app.add_subcommand("verify", "Check a theorem instance or run a campaign");
    cmd_verify->add_option("--theorem", theorem)
        ->check(CLI::IsMember(
            {"campaign", "quadratic", "sign-invariance", "l-c", "coxeter", "gim-admissible"}))
        ->capture_default_str();
    cmd_verify->add_option("--quiver", quiver);
    cmd_verify->add_option("--pair", pair_arg, "Two quivers, comma separated");
    cmd_verify->add_option("--seq", seq);
    cmd_verify->add_option("--ordering", ordering);
    cmd_verify->add_option("--lambda", lambda_arg, "Explicit left product order (1-based)");
    cmd_verify->add_option("--rho", rho_arg, "Explicit right product order (1-based)");
    cmd_verify->add_option("--depth", depth)->capture_default_str();
    cmd_verify->add_option("--trials", trials)->capture_default_str();
    auto* seed_opt_verify = cmd_verify->add_option("--rng-seed", rng_seed);
    cmd_verify->add_option("--ranks", ranks_arg)->capture_default_str();
    cmd_verify->add_option("--max-weight", max_weight)->capture_default_str();
    cmd_verify->add_option("--walk-length", walk_length)->capture_default_str();
    cmd_verify->add_option("--checks", checks_arg, "Subset of campaign checks, comma separated");
    add_common(cmd_verify, verify_flags);
    cmd_verify->callback([&] {
        VerificationReport report;
        json config = {{"theorem", theorem}, {"format", verify_flags.format}};
        if (theorem == "campaign") {
            CampaignConfig cc;
            cc.ranks = parse_int_list(ranks_arg);
            cc.max_weight = max_weight;
            cc.walk_length = walk_length;
            cc.trials = trials;
            if (trials > 0 && seed_opt_verify->count() == 0)
                throw InputError("--rng-seed is required for randomized runs");
            cc.rng_seed = rng_seed;
            if (!checks_arg.empty()) {
                std::stringstream ss(checks_arg);
                std::string item;
                while (std::getline(ss, item, ',')) cc.checks.push_back(item);
            }
            config["trials"] = trials;
            config["ranks"] = ranks_arg;
            config["max_weight"] = max_weight;
            config["walk_length"] = walk_length;
            config["rng_seed"] = rng_seed;
            config["checks"] = checks_arg;
            report = random_walk_campaign(cc);
        } else if (theorem == "quadratic") {
            if (quiver.empty()) throw InputError("--theorem quadratic needs --quiver");
            config["quiver"] = quiver;
            config["depth"] = depth;
            report = verify_rank3_theorem(load_quiver(quiver), depth);
        } else if (theorem == "sign-invariance") {
            const auto comma = pair_arg.find(',');
            if (comma == std::string::npos)
                throw InputError("--theorem sign-invariance needs --pair <quiver,quiver>");
            const ExchangeMatrix b1 = load_quiver(pair_arg.substr(0, comma));
            const ExchangeMatrix b2 = load_quiver(pair_arg.substr(comma + 1));
            config["pair"] = pair_arg;
            config["seq"] = seq;
            report = verify_sign_invariance(b1, b2, parse_indices(seq, b1.rank()));
        } else if (theorem == "l-c") {
            if (quiver.empty()) throw InputError("--theorem l-c needs --quiver");
            const ExchangeMatrix b0 = load_quiver(quiver);
            config["quiver"] = quiver;
            config["seq"] = seq;
            report = verify_l_c_relation(b0, parse_indices(seq, b0.rank()));
        } else if (theorem == "coxeter") {
            if (quiver.empty()) throw InputError("--theorem coxeter needs --quiver");
            const ExchangeMatrix b0 = load_quiver(quiver);
            config["quiver"] = quiver;
            config["seq"] = seq;
            config["lambda"] = lambda_arg;
            config["rho"] = rho_arg;
            report = coxeter_report(b0, parse_indices(seq, b0.rank()), lambda_arg, rho_arg);
        } else {  // gim-admissible
            if (quiver.empty()) throw InputError("--theorem gim-admissible needs --quiver");
            const ExchangeMatrix b0 = load_quiver(quiver);
            const LinearOrdering ord = ordering.empty() ? fork_ordering_or_throw(b0)
                                                        : parse_ordering(ordering, b0.rank());
            config["quiver"] = quiver;
            config["seq"] = seq;
            config["ordering"] = ordering;
            report = gim_admissible_report(b0, parse_indices(seq, b0.rank()), ord);
        }
        rc = finish("verify", config, verify_flags, report.to_json(), report_table(report),
                    report_csv(report), report.all_pass());
    });

    auto* cmd_walk = app.add_subcommand("walk", "Co-evolve [B | C], GIM, reflections, and L");
    cmd_walk->add_option("--quiver", quiver)->required();
    cmd_walk->add_option("--seq", seq, "Explicit fork-preserving sequence");
    cmd_walk->add_option("--ordering", ordering);
    cmd_walk->add_option("--length", length, "Random walk length when --seq is absent")
        ->capture_default_str();
    auto* seed_opt_walk = cmd_walk->add_option("--rng-seed", rng_seed);
    add_common(cmd_walk, walk_flags);
    cmd_walk->callback([&] {
        rc = run_walk(quiver, seq, ordering, length, rng_seed, seed_opt_walk->count() > 0,
                      walk_flags);
    });

    auto* cmd_curves = app.add_subcommand("curves", "Admissible curves for mutated reflections");
    cmd_curves->add_option("--quiver", quiver)->required();
    cmd_curves->add_option("--seq", seq);
    cmd_curves->add_option("--sigma", sigma_arg, "Vertex-to-family ordering (1-based)");
    cmd_curves->add_option("--bound", bound)->capture_default_str();
    add_common(cmd_curves, curves_flags);
    cmd_curves->callback([&] { rc = run_curves(quiver, seq, sigma_arg, bound, curves_flags); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
