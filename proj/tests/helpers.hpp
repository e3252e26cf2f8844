#pragma once

#include "qmut/curves.hpp"
#include "qmut/io.hpp"
#include "qmut/verify.hpp"

#include <initializer_list>
#include <vector>

namespace qtest {

inline qmut::Mat mat(const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<qmut::Int>> conv;
    conv.reserve(rows.size());
    for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
    return qmut::Mat::from_rows(conv);
}

inline qmut::ExchangeMatrix ex(const std::vector<std::vector<long long>>& rows) {
    return qmut::ExchangeMatrix(mat(rows));
}

inline qmut::ExchangeMatrix markov() { return qmut::builtin_markov(); }
inline qmut::ExchangeMatrix q233() { return qmut::builtin_q233(); }

// Fork with weights (3, 4, 5); the point of return is vertex 2 (1-based).
inline qmut::ExchangeMatrix fork345() { return ex({{0, 3, -5}, {-3, 0, 4}, {5, -4, 0}}); }

// 1-based labels, as they appear everywhere outside the library.
inline std::vector<int> seq(std::initializer_list<int> one_based) {
    std::vector<int> w;
    for (int v : one_based) w.push_back(v - 1);
    return w;
}

inline std::vector<qmut::Int> irow(const std::vector<long long>& v) {
    return std::vector<qmut::Int>(v.begin(), v.end());
}

inline std::vector<std::vector<qmut::Int>> irows(const std::vector<std::vector<long long>>& v) {
    std::vector<std::vector<qmut::Int>> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(irow(r));
    return out;
}

inline qmut::ExchangeMatrix random_skew(int n, int max_abs, qmut::Rng& rng) {
    qmut::Mat b(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int v = rng.uniform(-max_abs, max_abs);
            b.at(i, j) = v;
            b.at(j, i) = -v;
        }
    return qmut::ExchangeMatrix(b);
}

// GIM with random entries: diagonal 2, off-diagonal pairs sharing a sign.
inline qmut::Gim random_gim(int n, int max_abs, qmut::Rng& rng) {
    qmut::Mat a(n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int v = rng.uniform(-max_abs, max_abs);
            a.at(i, j) = v;
            a.at(j, i) = (v == 0) ? 0 : qmut::sign_of(qmut::Int(v)) * rng.uniform(1, max_abs);
        }
    return qmut::Gim{a};
}

}  // namespace qtest
