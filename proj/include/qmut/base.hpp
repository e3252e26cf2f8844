#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmut {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Caller-supplied data violates a documented precondition.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed.  This signals a bug or a violated theorem
// hypothesis, never bad user input, and must abort the computation.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline int sign_of(const Int& v) { return v.sign(); }

// Dense square matrix over arbitrary-precision integers.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<Int>>& rows) {
        const int n = static_cast<int>(rows.size());
        Mat m(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw InputError("matrix rows must form a square matrix");
            for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int size() const { return n_; }

    Int& at(int i, int j) { return a_[idx(i, j)]; }
    const Int& at(int i, int j) const { return a_[idx(i, j)]; }

    std::vector<Int> row(int i) const {
        std::vector<Int> r(n_);
        for (int j = 0; j < n_; ++j) r[j] = at(i, j);
        return r;
    }

    bool operator==(const Mat&) const = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + j;
    }

    int n_ = 0;
    std::vector<Int> a_;
};

// v * M with v a row vector.
inline std::vector<Int> row_times(const std::vector<Int>& v, const Mat& m) {
    const int n = m.size();
    std::vector<Int> out(n);
    for (int j = 0; j < n; ++j) {
        Int s = 0;
        for (int i = 0; i < n; ++i) s += v[i] * m.at(i, j);
        out[j] = s;
    }
    return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    const int n = a.size();
    Mat out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

// SplitMix64 stream.  The algorithm is pinned here so that seeded runs replay
// bit-exactly regardless of platform or standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [lo, hi], both ends included, unbiased via rejection.
    int uniform(int lo, int hi) {
        if (lo > hi) throw InternalError("Rng::uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

    bool coin() { return (next() & 1) != 0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[static_cast<std::size_t>(uniform(0, i))]);
    }

private:
    std::uint64_t s_;
};

// Derives a per-trial seed from a campaign seed; fixed mixing constants keep
// replays stable.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    Rng r(base ^ (salt * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    return r.next();
}

}  // namespace qmut
