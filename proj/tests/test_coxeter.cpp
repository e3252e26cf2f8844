#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>

using namespace qmut;
using namespace qtest;

namespace {

ReflectionTuple walk_reflections(const ExchangeMatrix& b0, const MutationSequence& w) {
    ReflectionTuple refs = initial_reflections(b0.rank());
    FramedSeed seed = FramedSeed::initial(b0);
    for (int k : w) {
        refs = mutate_reflections(refs, seed, k);
        seed = mutate_extended(seed, k);
    }
    return refs;
}

// Cancel adjacent equal pairs in random order until none remain.
Word scrub_random(Word w, Rng& rng) {
    while (true) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] == w[i + 1]) hits.push_back(i);
        if (hits.empty()) return w;
        const std::size_t at = hits[static_cast<std::size_t>(
            rng.uniform(0, static_cast<int>(hits.size()) - 1))];
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(at),
                w.begin() + static_cast<std::ptrdiff_t>(at) + 2);
    }
}

}  // namespace

TEST_CASE("word reduction fixtures") {
    CHECK(reduce({}) == Word{});
    CHECK(reduce({0, 0}) == Word{});
    CHECK(reduce(seq({1, 2, 2, 1, 3})) == seq({3}));
    CHECK(reduce(seq({1, 2, 1})) == seq({1, 2, 1}));
    CHECK(is_reduced_word(seq({1, 2, 1})));
    CHECK_FALSE(is_reduced_word(seq({1, 1})));
}

TEST_CASE("word reduction agrees with random-order cancellation") {
    Rng rng(1212);
    for (int trial = 0; trial < 1000; ++trial) {
        const int len = rng.uniform(0, 30);
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(rng.uniform(0, 3));
        const Word fast = reduce(w);
        const Word slow = scrub_random(w, rng);
        CHECK(fast == slow);
        CHECK(reduce(fast) == fast);
    }
}

TEST_CASE("reflection predicate") {
    CHECK(is_reflection(seq({1})));
    CHECK(is_reflection(seq({1, 2, 1})));
    CHECK(is_reflection(seq({2, 1, 3, 1, 2})));
    CHECK_FALSE(is_reflection({}));
    CHECK_FALSE(is_reflection(seq({1, 2})));        // even
    CHECK_FALSE(is_reflection(seq({1, 2, 3})));     // not a palindrome
    CHECK_FALSE(is_reflection(seq({1, 1, 1})));     // not reduced
}

TEST_CASE("initial reflections are the generators") {
    CHECK(initial_reflections(3) == ReflectionTuple{{0}, {1}, {2}});
}

TEST_CASE("reflection words for the rank-3 fixtures, short walks") {
    for (const ExchangeMatrix& b0 : {q233(), markov()}) {
        CHECK(walk_reflections(b0, seq({1})) ==
              ReflectionTuple{seq({1}), seq({2}), seq({1, 3, 1})});
        CHECK(walk_reflections(b0, seq({1, 2})) ==
              ReflectionTuple{seq({1}), seq({2}), seq({2, 1, 3, 1, 2})});
        CHECK(walk_reflections(b0, seq({1, 2, 3})) ==
              ReflectionTuple{seq({1}), seq({2, 1, 3, 1, 2, 1, 3, 1, 2}),
                              seq({2, 1, 3, 1, 2})});
    }
}

TEST_CASE("reflection words for the rank-3 fixtures, long walk") {
    const Word r1 = seq({2, 1, 3, 1, 2, 1, 3, 1, 2, 1, 3, 1, 2, 1,
                         2, 1, 3, 1, 2, 1, 3, 1, 2, 1, 3, 1, 2});
    const Word r2 = seq({1, 2, 1, 3, 1, 2, 1, 3, 1, 2, 1});
    const Word r3 = seq({2, 1, 3, 1, 2, 1, 3, 1, 2, 1, 3, 1, 2});
    for (const ExchangeMatrix& b0 : {q233(), markov()}) {
        const auto refs = walk_reflections(b0, seq({1, 2, 3, 2, 1, 3}));
        CHECK(refs[0] == r1);
        CHECK(refs[1] == r2);
        CHECK(refs[2] == r3);
    }
}

TEST_CASE("pi matrices for the worked GIM") {
    const Gim a = gim_from_ordering(markov(), {{0, 2, 1}});
    CHECK(pi_matrix(a, 0) == mat({{-1, 0, 0}, {-2, 1, 0}, {2, 0, 1}}));
    CHECK(pi_matrix(a, 1) == mat({{1, -2, 0}, {0, -1, 0}, {0, 2, 1}}));
    CHECK(pi_matrix(a, 2) == mat({{1, 0, 2}, {0, 1, 2}, {0, 0, -1}}));
}

TEST_CASE("pi matrices are involutions") {
    Rng rng(1313);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.uniform(2, 5);
        const Gim g = random_gim(n, 9, rng);
        const int i = rng.uniform(0, n - 1);
        const Mat s = pi_matrix(g, i);
        CHECK(mat_mul(s, s) == Mat::identity(n));
    }
}

TEST_CASE("l-vectors of the worked examples, exact signs") {
    const Gim aq = gim_from_ordering(q233(), {{0, 2, 1}});
    const Gim am = gim_from_ordering(markov(), {{0, 2, 1}});
    const Word r2w = seq({2, 1, 3, 1, 2, 1, 3, 1, 2});
    CHECK(l_vector_from_word(aq, r2w) == irow({-9, 8, -3}));
    CHECK(l_vector_from_word(am, r2w) == irow({-4, 3, -2}));

    // Longer walk, ordering 3 < 2 < 1.
    const Gim aq321 = gim_from_ordering(q233(), {{2, 1, 0}});
    const Word r3w = seq({2, 1, 3, 1, 2, 1, 3, 1, 2, 1, 3, 1, 2});
    CHECK(l_vector_from_word(aq321, r3w) == irow({-24, -21, 8}));
}

TEST_CASE("l-vector rejects non-reflections") {
    const Gim a = gim_from_ordering(q233(), {{0, 2, 1}});
    CHECK_THROWS_AS(l_vector_from_word(a, seq({1, 2})), InputError);
}

TEST_CASE("canonical sign flips rows to lead positive") {
    CHECK(canonical_sign(irow({-9, 8, -3})) == irow({9, -8, 3}));
    CHECK(canonical_sign(irow({0, -2, 1})) == irow({0, 2, -1}));
    CHECK(canonical_sign(irow({0, 0, 0})) == irow({0, 0, 0}));
}

namespace {

void check_l_table(const ExchangeMatrix& b0, const MutationSequence& w,
                   const LinearOrdering& ord,
                   const std::vector<std::vector<long long>>& expected,
                   bool word_exact = false) {
    const LMatrix by_word = l_matrix_from_words(gim_from_ordering(b0, ord),
                                                walk_reflections(b0, w));
    const LMatrix by_rec = l_matrix_recurrence(b0, ord, w);
    LMatrix target{irows(expected)};
    CHECK(by_word.canonical() == target.canonical());
    CHECK(by_rec.canonical() == target.canonical());
    if (word_exact) CHECK(by_word.raw == target.raw);
}

// a_ij = eps_i tau_j b_ij for some sign vectors eps, tau.  Assumes row 0 and
// column 0 have no zeros, which holds for every fixture fed to it.
bool same_up_to_row_col_signs(const std::vector<std::vector<Int>>& a,
                              const std::vector<std::vector<Int>>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) return false;
    std::vector<int> tau(n), eps(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (abs(a[0][j]) != abs(b[0][j]) || a[0][j] == 0) return false;
        tau[j] = (a[0][j] > 0) == (b[0][j] > 0) ? 1 : -1;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (a[i][0] == 0) return false;
        eps[i] = ((a[i][0] > 0) == (b[i][0] > 0) ? 1 : -1) * tau[0];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j] != Int(eps[i] * tau[j]) * b[i][j]) return false;
    return true;
}

}  // namespace

TEST_CASE("L-matrix tables for the short walks, ordering 1 < 3 < 2") {
    const LinearOrdering ord{{0, 2, 1}};
    check_l_table(q233(), seq({1}), ord, {{1, 0, 0}, {0, 1, 0}, {3, 0, 1}});
    check_l_table(markov(), seq({1}), ord, {{1, 0, 0}, {0, 1, 0}, {2, 0, 1}});
    check_l_table(q233(), seq({1, 2}), ord, {{1, 0, 0}, {0, 1, 0}, {3, -3, 1}});
    check_l_table(markov(), seq({1, 2}), ord, {{1, 0, 0}, {0, 1, 0}, {2, -2, 1}});
    check_l_table(q233(), seq({1, 2, 3}), ord, {{1, 0, 0}, {-9, 8, -3}, {3, -3, 1}});
    check_l_table(markov(), seq({1, 2, 3}), ord, {{1, 0, 0}, {-4, 3, -2}, {2, -2, 1}});
}

TEST_CASE("L-matrix tables for the long walk, all six orderings") {
    const MutationSequence w = seq({1, 2, 3, 2, 1, 3});

    check_l_table(q233(), w, {{0, 2, 1}},
                  {{433, -378, 144}, {-16, 8, -3}, {24, -21, 8}}, true);
    check_l_table(q233(), w, {{1, 0, 2}},
                  {{433, 378, 144}, {16, 8, 3}, {24, 21, 8}}, true);
    check_l_table(q233(), w, {{2, 1, 0}},
                  {{433, 378, -144}, {16, 8, -3}, {-24, -21, 8}}, true);
    check_l_table(q233(), w, {{2, 0, 1}},
                  {{283681, -840402, -94560}, {-160, 80, 9}, {-240, 711, 80}}, true);

    check_l_table(markov(), w, {{0, 2, 1}},
                  {{13, -8, 6}, {-6, 3, -2}, {6, -4, 3}}, true);
    check_l_table(markov(), w, {{1, 0, 2}},
                  {{13, 8, 6}, {6, 3, 2}, {6, 4, 3}}, true);
    check_l_table(markov(), w, {{2, 1, 0}},
                  {{13, 8, -6}, {6, 3, -2}, {-6, -4, 3}}, true);
    check_l_table(markov(), w, {{2, 0, 1}},
                  {{23661, -68952, -11830}, {-70, 35, 6}, {-70, 204, 35}}, true);
}

TEST_CASE("remaining long-walk orderings match up to row and column signs") {
    // The last two orderings land on the same magnitudes with the signs
    // twisted by a column flip as well as row flips, so plain row
    // canonicalisation is not enough.
    const MutationSequence w = seq({1, 2, 3, 2, 1, 3});
    const std::vector<std::vector<Int>> big_q =
        irows({{283681, -840402, -94560}, {-160, 80, 9}, {-240, 711, 80}});
    const std::vector<std::vector<Int>> big_m =
        irows({{23661, -68952, -11830}, {-70, 35, 6}, {-70, 204, 35}});
    for (const LinearOrdering& ord : {LinearOrdering{{0, 1, 2}}, LinearOrdering{{1, 2, 0}}}) {
        const LMatrix q_word = l_matrix_from_words(gim_from_ordering(q233(), ord),
                                                   walk_reflections(q233(), w));
        CHECK(same_up_to_row_col_signs(q_word.raw, big_q));
        CHECK(l_matrix_recurrence(q233(), ord, w).canonical() == q_word.canonical());

        const LMatrix m_word = l_matrix_from_words(gim_from_ordering(markov(), ord),
                                                   walk_reflections(markov(), w));
        CHECK(same_up_to_row_col_signs(m_word.raw, big_m));
        CHECK(l_matrix_recurrence(markov(), ord, w).canonical() == m_word.canonical());
    }
}

TEST_CASE("word and recurrence paths agree up to row sign on random fork walks") {
    Rng rng(1414);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = rng.uniform(3, 5);
        const ExchangeMatrix f = random_fork(n, 7, rng.next());
        const auto cert = find_point_of_return(f);
        REQUIRE(cert.has_value());
        const auto ord = fork_linear_ordering(*cert, f);
        const auto w = random_fork_preserving_sequence(n, cert->point_of_return,
                                                       rng.uniform(1, 10), rng);
        const LMatrix by_rec = l_matrix_recurrence(f, ord, w);
        const LMatrix by_word =
            l_matrix_from_words(gim_from_ordering(f, ord), walk_reflections(f, w));
        CHECK(by_rec.canonical() == by_word.canonical());
    }
}

TEST_CASE("walk state advances all layers consistently") {
    const auto w = seq({1, 3, 2, 3});
    WalkState st = WalkState::initial(fork345(), {{1, 0, 2}});
    for (int k : w) st.step(k);
    CHECK(st.seed.b == apply_sequence(fork345(), w).b);
    CHECK(st.refs == walk_reflections(fork345(), w));
    CHECK(st.lmat == l_matrix_recurrence(fork345(), {{1, 0, 2}}, w));
}

TEST_CASE("reflection products reduce concatenations") {
    const ReflectionTuple refs = initial_reflections(3);
    CHECK(reflection_product(refs, {2, 0, 1}) == seq({3, 1, 2}));
    const ReflectionTuple mutated = walk_reflections(q233(), seq({1}));
    CHECK(reflection_product(mutated, {0, 2, 1}) == seq({3, 1, 2}));
}

TEST_CASE("published Coxeter products, explicit orders") {
    for (const ExchangeMatrix& b0 : {q233(), markov()}) {
        const auto one = coxeter_product_check_explicit(b0, seq({1}), {0, 2, 1}, {2, 0, 1});
        CHECK(one.equal);
        CHECK(one.lhs == seq({3, 1, 2}));

        const auto two =
            coxeter_product_check_explicit(b0, seq({1, 2}), {0, 1, 2}, {2, 0, 1});
        CHECK(two.equal);

        const auto three =
            coxeter_product_check_explicit(b0, seq({1, 2, 3}), {0, 2, 1}, {2, 0, 1});
        CHECK(three.equal);

        const auto six = coxeter_product_check_explicit(b0, seq({1, 2, 3, 2, 1, 3}),
                                                        {1, 2, 0}, {2, 0, 1});
        CHECK(six.equal);
        CHECK(six.rhs == seq({3, 1, 2}));
    }
}

TEST_CASE("Coxeter product identity on forks, derived orders") {
    const auto check = coxeter_product_check(fork345(), seq({1}));
    CHECK(check.equal);
    CHECK(check.lambda_order == std::vector<int>{1, 2, 0});
    // Vertex 1 sits in F-(r), so the return goes first on the right side.
    CHECK(check.rho_order == std::vector<int>{1, 0, 2});

    Rng rng(1515);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.uniform(3, 5);
        const ExchangeMatrix f = random_fork(n, 7, rng.next());
        const auto cert = find_point_of_return(f);
        REQUIRE(cert.has_value());
        const auto w = random_fork_preserving_sequence(n, cert->point_of_return,
                                                       rng.uniform(1, 10), rng);
        CHECK(coxeter_product_check(f, w).equal);
    }
}
