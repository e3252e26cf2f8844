#include "qmut/coxeter.hpp"

#include <algorithm>

namespace qmut {

Word reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (int letter : w) {
        if (!out.empty() && out.back() == letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

bool is_reduced_word(const Word& w) {
    for (std::size_t t = 1; t < w.size(); ++t)
        if (w[t] == w[t - 1]) return false;
    return true;
}

bool is_reflection(const Word& w) {
    if (w.empty() || w.size() % 2 == 0 || !is_reduced_word(w)) return false;
    for (std::size_t t = 0; t < w.size() / 2; ++t)
        if (w[t] != w[w.size() - 1 - t]) return false;
    return true;
}

ReflectionTuple initial_reflections(int n) {
    ReflectionTuple t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = {i};
    return t;
}

ReflectionTuple mutate_reflections(const ReflectionTuple& refs, const FramedSeed& seed, int k) {
    const int n = seed.b.rank();
    if (static_cast<int>(refs.size()) != n)
        throw InputError("reflection tuple and quiver sizes differ");
    const int ck = row_sign(seed.c, k);
    const Word& rk = refs[static_cast<std::size_t>(k)];

    ReflectionTuple out = refs;
    for (int i = 0; i < n; ++i) {
        if (seed.b.at(i, k) * ck <= 0) continue;
        Word conj;
        conj.reserve(refs[static_cast<std::size_t>(i)].size() + 2 * rk.size());
        conj.insert(conj.end(), rk.begin(), rk.end());
        conj.insert(conj.end(), refs[static_cast<std::size_t>(i)].begin(),
                    refs[static_cast<std::size_t>(i)].end());
        conj.insert(conj.end(), rk.begin(), rk.end());
        out[static_cast<std::size_t>(i)] = reduce(std::move(conj));
        if (!is_reflection(out[static_cast<std::size_t>(i)]))
            throw InternalError("conjugation produced a non-reflection at vertex " +
                                std::to_string(i + 1));
    }
    return out;
}

Mat pi_matrix(const Gim& g, int i) {
    const int n = g.a.size();
    if (i < 0 || i >= n) throw InputError("generator index out of range");
    Mat m = Mat::identity(n);
    for (int j = 0; j < n; ++j) m.at(j, i) -= g.a.at(j, i);
    return m;
}

std::vector<Int> l_vector_from_word(const Gim& g, const Word& reflection) {
    const int n = g.a.size();
    if (!is_reflection(reflection)) throw InputError("word is not a reflection");
    for (int letter : reflection)
        if (letter < 0 || letter >= n) throw InputError("letter out of range");

    const std::size_t mid = reflection.size() / 2;
    std::vector<Int> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(reflection[mid])] = 1;

    // alpha_c S_{p_m} ... S_{p_1}: the prefix letter nearest the centre acts
    // first.
    for (std::size_t t = mid; t-- > 0;) {
        const int p = reflection[t];
        // v * S_p in place: only column p changes under S_p.
        Int vp = 0;
        for (int j = 0; j < n; ++j) {
            if (j == p)
                vp -= v[static_cast<std::size_t>(j)];
            else
                vp -= v[static_cast<std::size_t>(j)] * g.a.at(j, p);
        }
        v[static_cast<std::size_t>(p)] = vp;
    }
    return v;
}

std::vector<Int> canonical_sign(std::vector<Int> v) {
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        break;
    }
    return v;
}

WalkState WalkState::initial(const ExchangeMatrix& b0, const LinearOrdering& ord) {
    WalkState s{FramedSeed::initial(b0), gim_from_ordering(b0, ord),
                initial_reflections(b0.rank()), LMatrix{}};
    s.lmat.raw.resize(static_cast<std::size_t>(b0.rank()));
    for (int i = 0; i < b0.rank(); ++i) {
        s.lmat.raw[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(b0.rank()), 0);
        s.lmat.raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    }
    return s;
}

void WalkState::step(int k) {
    const int n = seed.b.rank();
    const int ck = row_sign(seed.c, k);

    ReflectionTuple nrefs = mutate_reflections(refs, seed, k);

    LMatrix nl = lmat;
    for (int i = 0; i < n; ++i) {
        if (seed.b.at(i, k) * ck <= 0) continue;
        for (int j = 0; j < n; ++j)
            nl.raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                gim.a.at(i, k) * lmat.raw[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }

    Gim ng = mutate_gim(gim, seed, k);
    seed = mutate_extended(seed, k);
    gim = std::move(ng);
    refs = std::move(nrefs);
    lmat = std::move(nl);
}

LMatrix l_matrix_recurrence(const ExchangeMatrix& b0, const LinearOrdering& ord,
                            const MutationSequence& w) {
    require_vertices(b0.rank(), w);
    WalkState s = WalkState::initial(b0, ord);
    for (int k : w) s.step(k);
    return s.lmat;
}

LMatrix l_matrix_from_words(const Gim& g, const ReflectionTuple& refs) {
    LMatrix out;
    out.raw.reserve(refs.size());
    for (const Word& r : refs) out.raw.push_back(l_vector_from_word(g, r));
    return out;
}

Word reflection_product(const ReflectionTuple& refs, const std::vector<int>& order) {
    Word prod;
    for (int v : order) {
        if (v < 0 || v >= static_cast<int>(refs.size()))
            throw InputError("order index out of range");
        const Word& r = refs[static_cast<std::size_t>(v)];
        prod.insert(prod.end(), r.begin(), r.end());
    }
    return reduce(std::move(prod));
}

namespace {

CoxeterProductCheck product_check_impl(const ExchangeMatrix& b0, const MutationSequence& w,
                                        const std::vector<int>& lambda_order,
                                        const std::vector<int>& rho_order) {
    FramedSeed seed = FramedSeed::initial(b0);
    ReflectionTuple refs = initial_reflections(b0.rank());
    for (int k : w) {
        ReflectionTuple next = mutate_reflections(refs, seed, k);
        seed = mutate_extended(seed, k);
        refs = std::move(next);
    }

    CoxeterProductCheck out;
    out.lambda_order = lambda_order;
    out.rho_order = rho_order;
    out.lhs = reflection_product(refs, lambda_order);
    out.rhs = reduce(Word(rho_order.begin(), rho_order.end()));
    out.equal = (out.lhs == out.rhs);
    return out;
}

}  // namespace

CoxeterProductCheck coxeter_product_check(const ExchangeMatrix& b0, const MutationSequence& w) {
    const auto cert0 = find_point_of_return(b0);
    if (!cert0) throw InputError("quiver is not a fork; supply both orders explicitly");
    const ForkPreservingVerdict fp = is_fork_preserving(b0, w);
    if (!fp.ok) throw InputError("sequence is not fork-preserving: " + fp.reason);

    FramedSeed seed = apply_sequence(b0, w);
    const auto cert_w = certificate_at(seed.b, w.back());
    if (!cert_w) throw InternalError("final quiver lost its fork certificate");
    const LinearOrdering lambda = cyclic_signed_ordering(seed, *cert_w);

    // Initial ordering r < a_{n-1} < ... < a_1; the product runs
    // a_{n-1} ... a_1 r when the walk starts in F+, r a_{n-1} ... a_1 in F-.
    const LinearOrdering initial = fork_linear_ordering(*cert0, b0);
    std::vector<int> rho(initial.order.begin() + 1, initial.order.end());
    const bool starts_outbound =
        std::find(cert0->outbound.begin(), cert0->outbound.end(), w.front()) !=
        cert0->outbound.end();
    if (starts_outbound)
        rho.push_back(cert0->point_of_return);
    else
        rho.insert(rho.begin(), cert0->point_of_return);

    return product_check_impl(b0, w, lambda.order, rho);
}

CoxeterProductCheck coxeter_product_check_explicit(const ExchangeMatrix& b0,
                                                   const MutationSequence& w,
                                                   const std::vector<int>& lambda_order,
                                                   const std::vector<int>& rho_order) {
    require_vertices(b0.rank(), w);
    require_vertices(b0.rank(), lambda_order);
    require_vertices(b0.rank(), rho_order);
    return product_check_impl(b0, w, lambda_order, rho_order);
}

}  // namespace qmut
