#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmut/curves.hpp"
#include "qmut/io.hpp"
#include "qmut/verify.hpp"

#include <string>
#include <vector>

namespace py = pybind11;

namespace pybind11 {
namespace detail {

// Arbitrary-precision entries cross the boundary as Python ints, via their
// decimal representation.
template <>
struct type_caster<qmut::Int> {
    PYBIND11_TYPE_CASTER(qmut::Int, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        value = qmut::Int(py::cast<std::string>(py::str(src)));
        return true;
    }

    static handle cast(const qmut::Int& v, return_value_policy, handle) {
        return handle(PyLong_FromString(v.str().c_str(), nullptr, 10));
    }
};

}  // namespace detail
}  // namespace pybind11

namespace {

using Rows = std::vector<std::vector<qmut::Int>>;

Rows rows_of(const qmut::Mat& m) {
    Rows out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) out.push_back(m.row(i));
    return out;
}

qmut::ExchangeMatrix exchange_of(const Rows& rows) {
    return qmut::ExchangeMatrix(qmut::Mat::from_rows(rows));
}

std::vector<int> seq_of(const std::vector<int>& one_based, int n) {
    std::vector<int> w;
    w.reserve(one_based.size());
    for (int v : one_based) {
        if (v < 1 || v > n)
            throw qmut::InputError("vertex label " + std::to_string(v) + " out of range 1.." +
                                   std::to_string(n));
        w.push_back(v - 1);
    }
    return w;
}

std::vector<int> one_based(const std::vector<int>& w) {
    std::vector<int> out;
    out.reserve(w.size());
    for (int v : w) out.push_back(v + 1);
    return out;
}

std::vector<std::vector<int>> words_one_based(const qmut::ReflectionTuple& refs) {
    std::vector<std::vector<int>> out;
    out.reserve(refs.size());
    for (const auto& r : refs) out.push_back(one_based(r));
    return out;
}

qmut::LinearOrdering ordering_of(const std::vector<int>& one_based_order, int n) {
    qmut::LinearOrdering ord{seq_of(one_based_order, n)};
    if (static_cast<int>(ord.order.size()) != n)
        throw qmut::InputError("ordering must list all vertices");
    return ord;
}

qmut::ReflectionTuple refs_after(const qmut::ExchangeMatrix& b0, const std::vector<int>& w) {
    qmut::ReflectionTuple refs = qmut::initial_reflections(b0.rank());
    qmut::FramedSeed seed = qmut::FramedSeed::initial(b0);
    for (int k : w) {
        refs = qmut::mutate_reflections(refs, seed, k);
        seed = qmut::mutate_extended(seed, k);
    }
    return refs;
}

}  // namespace

PYBIND11_MODULE(_qmut, m) {
    m.doc() = "exact quiver mutation, forks, GIMs, reflections, and admissible curves";

    py::register_exception<qmut::InputError>(m, "InputError", PyExc_ValueError);

    m.def("load_quiver",
          [](const std::string& name) { return rows_of(qmut::load_quiver(name).mat()); },
          py::arg("name"), "Load a builtin quiver (markov, q233) or a JSON file");

    m.def("structural_predicates",
          [](const Rows& b) {
              const auto t = qmut::structural_predicates(qmut::Mat::from_rows(b));
              py::dict d;
              d["skew_symmetric"] = t.skew_symmetric;
              d["abundant"] = t.abundant;
              d["acyclic"] = t.acyclic;
              d["complete"] = t.complete;
              return d;
          },
          py::arg("b"));

    m.def("mutate",
          [](const Rows& b, const std::vector<int>& seq) {
              const auto b0 = exchange_of(b);
              const auto state = qmut::apply_sequence(b0, seq_of(seq, b0.rank()));
              py::dict d;
              d["b"] = rows_of(state.b.mat());
              d["c"] = rows_of(state.c);
              d["sign_vector"] = qmut::sign_vector(state);
              return d;
          },
          py::arg("b"), py::arg("seq"), "Mutate [B | C] along a 1-based sequence");

    m.def("point_of_return",
          [](const Rows& b) -> py::object {
              const auto cert = qmut::find_point_of_return(exchange_of(b));
              if (!cert) return py::none();
              return py::int_(cert->point_of_return + 1);
          },
          py::arg("b"), "1-based point of return, or None when the quiver is not a fork");

    m.def("fork_ordering",
          [](const Rows& b) {
              const auto b0 = exchange_of(b);
              const auto cert = qmut::find_point_of_return(b0);
              if (!cert) throw qmut::InputError("quiver is not a fork");
              return one_based(qmut::fork_linear_ordering(*cert, b0).order);
          },
          py::arg("b"));

    m.def("is_fork_preserving",
          [](const Rows& b, const std::vector<int>& seq) {
              const auto b0 = exchange_of(b);
              return qmut::is_fork_preserving(b0, seq_of(seq, b0.rank())).ok;
          },
          py::arg("b"), py::arg("seq"));

    m.def("random_fork",
          [](int n, int max_weight, std::uint64_t seed) {
              return rows_of(qmut::random_fork(n, max_weight, seed).mat());
          },
          py::arg("n"), py::arg("max_weight"), py::arg("seed"));

    m.def("gim",
          [](const Rows& b, const std::vector<int>& ordering, const std::vector<int>& seq) {
              const auto b0 = exchange_of(b);
              const auto ord = ordering_of(ordering, b0.rank());
              const auto [g, state] =
                  qmut::apply_gim_sequence(b0, ord, seq_of(seq, b0.rank()));
              py::dict d;
              d["a"] = rows_of(g.a);
              d["admissible"] = qmut::is_admissible(g, state.b);
              return d;
          },
          py::arg("b"), py::arg("ordering"), py::arg("seq") = std::vector<int>{});

    m.def("reflections",
          [](const Rows& b, const std::vector<int>& seq) {
              const auto b0 = exchange_of(b);
              return words_one_based(refs_after(b0, seq_of(seq, b0.rank())));
          },
          py::arg("b"), py::arg("seq") = std::vector<int>{},
          "Reflection words r_i^w, 1-based letters");

    m.def("reduce_word",
          [](const std::vector<int>& word) {
              qmut::Word w;
              for (int v : word) {
                  if (v < 1) throw qmut::InputError("letters are 1-based");
                  w.push_back(v - 1);
              }
              return one_based(qmut::reduce(w));
          },
          py::arg("word"));

    m.def("lmatrix",
          [](const Rows& b, const std::vector<int>& ordering, const std::vector<int>& seq,
             const std::string& method) {
              const auto b0 = exchange_of(b);
              const auto ord = ordering_of(ordering, b0.rank());
              const auto w = seq_of(seq, b0.rank());
              qmut::LMatrix lm;
              if (method == "word")
                  lm = qmut::l_matrix_from_words(qmut::gim_from_ordering(b0, ord),
                                                 refs_after(b0, w));
              else if (method == "recurrence")
                  lm = qmut::l_matrix_recurrence(b0, ord, w);
              else
                  throw qmut::InputError("method must be 'word' or 'recurrence'");
              py::dict d;
              d["raw"] = lm.raw;
              d["canonical"] = lm.canonical();
              return d;
          },
          py::arg("b"), py::arg("ordering"), py::arg("seq"), py::arg("method") = "word");

    m.def("epsilon_tau",
          [](const Rows& b, const std::vector<int>& seq) {
              const auto b0 = exchange_of(b);
              const auto cert = qmut::find_point_of_return(b0);
              if (!cert) throw qmut::InputError("quiver is not a fork");
              const auto et = qmut::epsilon_tau(b0, *cert, seq_of(seq, b0.rank()));
              return py::make_tuple(et.epsilon, et.tau);
          },
          py::arg("b"), py::arg("seq"));

    m.def("quadratic_sign_patterns", &qmut::quadratic_signs, py::arg("c"), py::arg("q"),
          "Sign patterns realizing sum c_i^2 + sum sigma_ij q_ij c_i c_j = 1");

    m.def("coxeter_product_check",
          [](const Rows& b, const std::vector<int>& seq) {
              const auto b0 = exchange_of(b);
              const auto check = qmut::coxeter_product_check(b0, seq_of(seq, b0.rank()));
              py::dict d;
              d["lambda"] = one_based(check.lambda_order);
              d["rho"] = one_based(check.rho_order);
              d["lhs"] = one_based(check.lhs);
              d["rhs"] = one_based(check.rhs);
              d["equal"] = check.equal;
              return d;
          },
          py::arg("b"), py::arg("seq"));

    m.def("is_mutation_cyclic_rank3",
          [](const Rows& b) { return qmut::is_mutation_cyclic_rank3(exchange_of(b)); },
          py::arg("b"));

    m.def("verify_quadratic",
          [](const Rows& b, int depth) {
              const auto report = qmut::verify_rank3_theorem(exchange_of(b), depth);
              return py::make_tuple(report.all_pass(), report.to_json().dump());
          },
          py::arg("b"), py::arg("depth") = 6);

    m.def("campaign",
          [](int trials, const std::vector<int>& ranks, int max_weight, int walk_length,
             std::uint64_t seed) {
              qmut::CampaignConfig cc;
              cc.trials = trials;
              cc.ranks = ranks;
              cc.max_weight = max_weight;
              cc.walk_length = walk_length;
              cc.rng_seed = seed;
              const auto report = qmut::random_walk_campaign(cc);
              return py::make_tuple(report.all_pass(), report.to_json().dump());
          },
          py::arg("trials"), py::arg("ranks") = std::vector<int>{3, 4, 5},
          py::arg("max_weight") = 7, py::arg("walk_length") = 10, py::arg("seed") = 0);

    m.def("curves_svg",
          [](const Rows& b, const std::vector<int>& seq, const std::vector<int>& sigma,
             int bound) -> py::object {
              const auto b0 = exchange_of(b);
              if (b0.rank() != 3) throw qmut::InputError("curves need a rank-3 quiver");
              const auto refs = refs_after(b0, seq_of(seq, 3));
              const qmut::FamilyLabeling lab{ordering_of(sigma, 3)};
              const auto family = qmut::curve_family(refs, lab, bound);
              if (!family) return py::none();
              int x0, y0, x1, y1;
              qmut::svg_window(*family, x0, y0, x1, y1);
              py::dict d;
              d["words"] = words_one_based(refs);
              d["svg"] = qmut::render_svg(*family, x0, y0, x1, y1);
              return d;
          },
          py::arg("b"), py::arg("seq"), py::arg("sigma"), py::arg("bound") = 8);
}
