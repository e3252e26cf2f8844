#pragma once

#include "qmut/quiver.hpp"

#include <optional>
#include <string>

namespace qmut {

// Total order on vertices; order[p] is the vertex at position p, smallest
// first.
struct LinearOrdering {
    std::vector<int> order;

    // positions()[v] is the rank of vertex v.
    std::vector<int> positions() const {
        std::vector<int> pos(order.size());
        for (int p = 0; p < static_cast<int>(order.size()); ++p)
            pos[static_cast<std::size_t>(order[p])] = p;
        return pos;
    }

    bool operator==(const LinearOrdering&) const = default;
};

struct ForkCertificate {
    int point_of_return = -1;
    std::vector<int> inbound;   // F-(r): vertices with an arrow into r
    std::vector<int> outbound;  // F+(r): vertices r points at
};

// Checks the fork conditions with the point of return fixed at r: abundant,
// non-acyclic, strict cross-weight dominance, and acyclic spoke sets.
std::optional<ForkCertificate> certificate_at(const ExchangeMatrix& b, int r);

// Lowest-index point of return; at most one vertex can qualify.
std::optional<ForkCertificate> find_point_of_return(const ExchangeMatrix& b);

// Topological order of the induced subquiver on `subset` (arrows point from
// earlier to later, lowest index first among ties); throws InputError on a
// directed cycle.
std::vector<int> acyclic_ordering(const ExchangeMatrix& b, const std::vector<int>& subset);

// The ordering r < a_{n-1} < ... < a_1 where a_1 < ... < a_{n-1} orders the
// fork minus its point of return.
LinearOrdering fork_linear_ordering(const ForkCertificate& cert, const ExchangeMatrix& b);

struct ForkPreservingVerdict {
    bool ok = false;
    std::string reason;
};

// A sequence is fork-preserving when it is reduced and never mutates the
// current point of return.  Every intermediate quiver is revalidated; an
// intermediate non-fork throws InternalError.
ForkPreservingVerdict is_fork_preserving(const ExchangeMatrix& b, const MutationSequence& w);

// Some 4 vertices span a complete underlying simple graph whose induced
// subquiver has a source or sink and contains an oriented 3-cycle.
bool has_vortex(const ExchangeMatrix& b);

// The unique vertex closing the green-to-red frontier after a non-trivial
// fork-preserving sequence; validated against the C-matrix row signs.
int last_green_vertex(const FramedSeed& seed, const ForkCertificate& cert);

// Rotation of the fork linear ordering at the last green vertex; rows with
// positive sign precede the point of return, negative rows follow it.
LinearOrdering cyclic_signed_ordering(const FramedSeed& seed, const ForkCertificate& cert);

// Deterministic random fork on n >= 3 vertices with all |b_ij| <= max_weight;
// both spoke sets are nonempty (an empty side would force an acyclic quiver).
ExchangeMatrix random_fork(int n, int max_weight, std::uint64_t rng_seed);

// Fresh weights over the same arrow directions, so the sign pattern is
// unchanged and the fork certificate still holds at the same vertex.
ExchangeMatrix reweighted_fork(const ExchangeMatrix& fork, const ForkCertificate& cert,
                               int max_weight, Rng& rng);

// Random fork-preserving sequence of the given length (>= 1).
MutationSequence random_fork_preserving_sequence(int n, int point_of_return,
                                                 int length, Rng& rng);

}  // namespace qmut
