#pragma once

#include "qmut/fork.hpp"

#include <optional>
#include <utility>

namespace qmut {

// Generalized intersection matrix: 2 on the diagonal, and a_ij, a_ji share a
// sign (both positive, both negative, or both zero).
struct Gim {
    Mat a;

    bool operator==(const Gim&) const = default;
};

// Validates the GIM shape; names the offending entry on failure.
void require_gim(const Mat& a);

// a_ij = b_ij when i precedes j, 2 on the diagonal, -b_ij otherwise.
Gim gim_from_ordering(const ExchangeMatrix& b, const LinearOrdering& ord);

// Every 3-subset must satisfy the sign condition
// (-a_ij)(-a_jk)(-a_ki) < 0 for an oriented induced triangle, > 0 otherwise.
// Requires a complete quiver with |a_ij| = |b_ij|.
bool is_admissible(const Gim& g, const ExchangeMatrix& b);

// One GIM mutation at k, driven by the pre-mutation exchange matrix and the
// sign of C-row k.  Column k of B must have no zero entries.
Gim mutate_gim(const Gim& g, const FramedSeed& seed, int k);

// Builds the GIM from the ordering and co-evolves it with [B | C] along w.
std::pair<Gim, FramedSeed> apply_gim_sequence(const ExchangeMatrix& b0,
                                              const LinearOrdering& ord,
                                              const MutationSequence& w);

}  // namespace qmut
