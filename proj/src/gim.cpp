#include "qmut/gim.hpp"

namespace qmut {

void require_gim(const Mat& a) {
    const int n = a.size();
    for (int i = 0; i < n; ++i) {
        if (a.at(i, i) != 2)
            throw InputError("GIM diagonal entry a[" + std::to_string(i + 1) + "][" +
                             std::to_string(i + 1) + "] must be 2");
        for (int j = i + 1; j < n; ++j) {
            const int s = sign_of(a.at(i, j));
            const int t = sign_of(a.at(j, i));
            if (s != t)
                throw InputError("GIM entries a[" + std::to_string(i + 1) + "][" +
                                 std::to_string(j + 1) + "] and a[" + std::to_string(j + 1) +
                                 "][" + std::to_string(i + 1) + "] must share a sign");
        }
    }
}

Gim gim_from_ordering(const ExchangeMatrix& b, const LinearOrdering& ord) {
    const int n = b.rank();
    if (static_cast<int>(ord.order.size()) != n)
        throw InputError("ordering must list every vertex exactly once");
    const std::vector<int> pos = ord.positions();

    Mat a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                a.at(i, j) = 2;
            else if (pos[static_cast<std::size_t>(i)] < pos[static_cast<std::size_t>(j)])
                a.at(i, j) = b.at(i, j);
            else
                a.at(i, j) = -b.at(i, j);
        }

    Gim g{std::move(a)};
    require_gim(g.a);
    return g;
}

bool is_admissible(const Gim& g, const ExchangeMatrix& b) {
    const int n = b.rank();
    require_gim(g.a);
    if (!structural_predicates(b.mat()).complete)
        throw InputError("admissibility is defined here for complete quivers only");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && abs(g.a.at(i, j)) != abs(b.at(i, j)))
                throw InputError("GIM magnitudes must match the exchange matrix");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const int sij = sign_of(b.at(i, j));
                const int sjk = sign_of(b.at(j, k));
                const int ski = sign_of(b.at(k, i));
                const bool oriented = (sij == sjk && sjk == ski);
                const Int prod = -g.a.at(i, j) * -g.a.at(j, k) * -g.a.at(k, i);
                if (oriented ? prod >= 0 : prod <= 0) return false;
            }
    return true;
}

Gim mutate_gim(const Gim& g, const FramedSeed& seed, int k) {
    const int n = seed.b.rank();
    if (g.a.size() != n) throw InputError("GIM and quiver sizes differ");
    if (k < 0 || k >= n)
        throw InputError("mutation vertex " + std::to_string(k + 1) + " out of range");

    const Mat& b = seed.b.mat();
    for (int i = 0; i < n; ++i)
        if (i != k && b.at(i, k) == 0)
            throw InputError("GIM mutation at " + std::to_string(k + 1) +
                             " needs b[" + std::to_string(i + 1) + "][" +
                             std::to_string(k + 1) + "] nonzero");

    const int ck = row_sign(seed.c, k);

    Mat a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                a.at(i, j) = 2;
            } else if (j == k) {
                a.at(i, j) = -sign_of(b.at(i, k) * ck) * g.a.at(i, k);
            } else if (i == k) {
                a.at(i, j) = -sign_of(b.at(j, k) * ck) * g.a.at(k, j);
            } else if (b.at(i, k) * b.at(k, j) > 0) {
                a.at(i, j) = g.a.at(i, j) - g.a.at(i, k) * g.a.at(k, j);
            } else {
                a.at(i, j) = g.a.at(i, j);
            }
        }

    Gim out{std::move(a)};
    require_gim(out.a);
    return out;
}

std::pair<Gim, FramedSeed> apply_gim_sequence(const ExchangeMatrix& b0,
                                              const LinearOrdering& ord,
                                              const MutationSequence& w) {
    require_vertices(b0.rank(), w);
    Gim g = gim_from_ordering(b0, ord);
    FramedSeed seed = FramedSeed::initial(b0);
    for (int k : w) {
        Gim next = mutate_gim(g, seed, k);
        seed = mutate_extended(seed, k);
        g = std::move(next);
    }
    return {std::move(g), std::move(seed)};
}

}  // namespace qmut
