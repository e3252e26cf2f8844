#include "qmut/quiver.hpp"

#include <algorithm>
#include <functional>

namespace qmut {

QuiverTraits structural_predicates(const Mat& b) {
    const int n = b.size();
    QuiverTraits t;

    t.skew_symmetric = true;
    for (int i = 0; i < n && t.skew_symmetric; ++i)
        for (int j = 0; j < n; ++j)
            if (b.at(i, j) != -b.at(j, i)) {
                t.skew_symmetric = false;
                break;
            }

    t.abundant = true;
    t.complete = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (b.at(i, j) == 0) t.complete = false;
            if (abs(b.at(i, j)) < 2) t.abundant = false;
        }

    // Kahn's algorithm on the arrow digraph.
    std::vector<int> indeg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b.at(i, j) > 0) ++indeg[j];
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int seen = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++seen;
        for (int j = 0; j < n; ++j)
            if (b.at(v, j) > 0 && --indeg[j] == 0) queue.push_back(j);
    }
    t.acyclic = (seen == n);

    return t;
}

ExchangeMatrix::ExchangeMatrix(Mat b) : b_(std::move(b)) {
    const int n = b_.size();
    for (int i = 0; i < n; ++i) {
        if (b_.at(i, i) != 0)
            throw InputError("not skew-symmetric: b[" + std::to_string(i + 1) + "][" +
                             std::to_string(i + 1) + "] = " + b_.at(i, i).str() +
                             " is nonzero");
        for (int j = i + 1; j < n; ++j)
            if (b_.at(i, j) != -b_.at(j, i))
                throw InputError("not skew-symmetric: b[" + std::to_string(i + 1) +
                                 "][" + std::to_string(j + 1) + "] = " +
                                 b_.at(i, j).str() + " but b[" + std::to_string(j + 1) +
                                 "][" + std::to_string(i + 1) + "] = " +
                                 b_.at(j, i).str());
    }
}

bool is_reduced(const MutationSequence& w) {
    for (std::size_t t = 1; t < w.size(); ++t)
        if (w[t] == w[t - 1]) return false;
    return true;
}

void require_vertices(int n, const MutationSequence& w) {
    for (int k : w)
        if (k < 0 || k >= n)
            throw InputError("vertex index " + std::to_string(k + 1) +
                             " out of range 1.." + std::to_string(n));
}

FramedSeed FramedSeed::initial(ExchangeMatrix b0) {
    const int n = b0.rank();
    return FramedSeed{std::move(b0), Mat::identity(n), {}};
}

namespace {

// max(x, 0) contribution of the exchange rule: m_ij + sgn(m_ik) [m_ik m_kj]_+
Int exchange_entry(const Int& m_ij, const Int& m_ik, const Int& m_kj) {
    Int prod = m_ik * m_kj;
    if (prod <= 0) return m_ij;
    return m_ij + sign_of(m_ik) * prod;
}

}  // namespace

FramedSeed mutate_extended(const FramedSeed& seed, int k) {
    const int n = seed.b.rank();
    if (k < 0 || k >= n)
        throw InputError("mutation vertex " + std::to_string(k + 1) +
                         " out of range 1.." + std::to_string(n));

    const Mat& b = seed.b.mat();
    const Mat& c = seed.c;
    Mat nb(n), nc(n);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k)
                nb.at(i, j) = -b.at(i, j);
            else
                nb.at(i, j) = exchange_entry(b.at(i, j), b.at(i, k), b.at(k, j));
        }

    // C occupies columns n+1..2n of the extended matrix, so only the row
    // flip at k applies; column indices never equal k.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k)
                nc.at(i, j) = -c.at(i, j);
            else
                nc.at(i, j) = exchange_entry(c.at(i, j), b.at(i, k), c.at(k, j));
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (nb.at(i, j) != -nb.at(j, i))
                throw InternalError("mutation broke skew symmetry at (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");

    FramedSeed out{ExchangeMatrix(std::move(nb)), std::move(nc), seed.history};
    out.history.push_back(k);
    for (int i = 0; i < n; ++i) row_sign(out.c, i);  // aborts on incoherence
    return out;
}

FramedSeed apply_sequence(const ExchangeMatrix& b0, const MutationSequence& w) {
    require_vertices(b0.rank(), w);
    FramedSeed s = FramedSeed::initial(b0);
    for (int k : w) s = mutate_extended(s, k);
    return s;
}

int row_sign(const Mat& c, int i) {
    const int n = c.size();
    int sign = 0;
    for (int j = 0; j < n; ++j) {
        const int s = sign_of(c.at(i, j));
        if (s == 0) continue;
        if (sign == 0)
            sign = s;
        else if (sign != s)
            throw InternalError("sign coherence violated in row " + std::to_string(i + 1));
    }
    if (sign == 0)
        throw InternalError("all-zero row " + std::to_string(i + 1) + " has no sign");
    return sign;
}

std::vector<int> sign_vector(const FramedSeed& seed) {
    const int n = seed.c.size();
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = row_sign(seed.c, i);
    return s;
}

}  // namespace qmut
