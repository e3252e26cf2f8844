#pragma once

#include "qmut/gim.hpp"

namespace qmut {

// Word in the universal Coxeter group on n letters (0-based).  Generators
// have order 2 and no other relations, so cancelling adjacent equal letters
// yields a unique normal form.
using Word = std::vector<int>;

Word reduce(Word w);
bool is_reduced_word(const Word& w);

// Reduced, nonempty, odd-length palindrome.
bool is_reflection(const Word& w);

using ReflectionTuple = std::vector<Word>;

ReflectionTuple initial_reflections(int n);

// r_i <- r_k r_i r_k whenever b_ik * sgn(c_k) > 0, using pre-mutation data.
ReflectionTuple mutate_reflections(const ReflectionTuple& refs, const FramedSeed& seed, int k);

// Matrix of the involution alpha_j -> alpha_j - a_ji alpha_i acting on row
// vectors of root coordinates.
Mat pi_matrix(const Gim& g, int i);

// l-vector of a reflection word r = p_1 ... p_m c p_m ... p_1:
// alpha_c moved by the generators of the prefix, rightmost first.
std::vector<Int> l_vector_from_word(const Gim& g, const Word& reflection);

// Flips the row so its first nonzero entry is positive.
std::vector<Int> canonical_sign(std::vector<Int> v);

struct LMatrix {
    std::vector<std::vector<Int>> raw;

    std::vector<std::vector<Int>> canonical() const {
        std::vector<std::vector<Int>> out;
        out.reserve(raw.size());
        for (const auto& r : raw) out.push_back(canonical_sign(r));
        return out;
    }

    bool operator==(const LMatrix&) const = default;
};

// [B | C], the GIM, the reflection tuple, and the L-matrix advancing in
// lock step, each mutation reading only pre-mutation data.
struct WalkState {
    FramedSeed seed;
    Gim gim;
    ReflectionTuple refs;
    LMatrix lmat;

    static WalkState initial(const ExchangeMatrix& b0, const LinearOrdering& ord);
    void step(int k);
};

// L-matrix after w via the row recurrence l_i <- l_i - a_ik l_k.
LMatrix l_matrix_recurrence(const ExchangeMatrix& b0, const LinearOrdering& ord,
                            const MutationSequence& w);

// L-matrix of the tuple via the word path, one l_vector_from_word per row.
LMatrix l_matrix_from_words(const Gim& g, const ReflectionTuple& refs);

// reduce(r_{order[0]} r_{order[1]} ... ).
Word reflection_product(const ReflectionTuple& refs, const std::vector<int>& order);

struct CoxeterProductCheck {
    std::vector<int> lambda_order;  // cyclic signed ordering of the final state
    std::vector<int> rho_order;     // initial linear ordering, rotated per first step
    Word lhs;
    Word rhs;
    bool equal = false;
};

// Mutated reflections multiplied along the cyclic signed ordering must equal
// the product of the initial generators along the initial fork ordering,
// rotated so the point of return sits last or first depending on whether the
// walk starts in F+ or F-.
CoxeterProductCheck coxeter_product_check(const ExchangeMatrix& b0, const MutationSequence& w);

// Equality check only, for instances outside the fork hypotheses: both
// orders are supplied by the caller.
CoxeterProductCheck coxeter_product_check_explicit(const ExchangeMatrix& b0,
                                                   const MutationSequence& w,
                                                   const std::vector<int>& lambda_order,
                                                   const std::vector<int>& rho_order);

}  // namespace qmut
