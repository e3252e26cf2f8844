#pragma once

#include "qmut/base.hpp"

namespace qmut {

struct QuiverTraits {
    bool skew_symmetric = false;
    bool abundant = false;   // |b_ij| >= 2 for all i != j
    bool acyclic = false;    // digraph i -> j when b_ij > 0 has no directed cycle
    bool complete = false;   // b_ij != 0 for all i != j
};

QuiverTraits structural_predicates(const Mat& b);

// Skew-symmetric exchange matrix; skew symmetry is checked at construction
// and a violation names the offending entry.
class ExchangeMatrix {
public:
    explicit ExchangeMatrix(Mat b);

    int rank() const { return b_.size(); }
    const Int& at(int i, int j) const { return b_.at(i, j); }
    const Mat& mat() const { return b_; }

    bool operator==(const ExchangeMatrix&) const = default;

private:
    Mat b_;
};

// Mutation sequence over 0-based vertex indices.  External text and JSON use
// 1-based labels; conversion happens only at the I/O boundary.
using MutationSequence = std::vector<int>;

bool is_reduced(const MutationSequence& w);
void require_vertices(int n, const MutationSequence& w);

// Exchange matrix plus C-matrix, i.e. the framed extended matrix [B | C]
// with C starting at the identity.
struct FramedSeed {
    ExchangeMatrix b;
    Mat c;
    MutationSequence history;

    static FramedSeed initial(ExchangeMatrix b0);
};

// One mutation of [B | C] at vertex k.  Exact; the result is revalidated
// (skew symmetry of B, row sign coherence of C) and a violation aborts.
FramedSeed mutate_extended(const FramedSeed& seed, int k);

FramedSeed apply_sequence(const ExchangeMatrix& b0, const MutationSequence& w);

// Sign of row i of a sign-coherent matrix: +1 when every entry >= 0, -1 when
// every entry <= 0.  Zero entries never decide; a zero or mixed-sign row is
// an error.
int row_sign(const Mat& c, int i);

std::vector<int> sign_vector(const FramedSeed& seed);

}  // namespace qmut
