#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tensorank {

// GF(p) matrix rank for primes up to 2^62.  Default probe prime is the
// Mersenne prime 2^61 - 1; 2^31 - 1 has a delayed-reduction elimination
// fast path for the big Alexander-Hirschowitz sweeps.
constexpr uint64_t kPrime61 = (1ull << 61) - 1;
constexpr uint64_t kPrime31 = (1ull << 31) - 1;

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a, p - 2, p); }

struct GfMat {
    int64_t rows = 0, cols = 0;
    uint64_t p = kPrime61;
    std::vector<uint64_t> a; // row-major residues < p

    GfMat() = default;
    GfMat(int64_t r, int64_t c, uint64_t prime)
        : rows(r), cols(c), p(prime), a(static_cast<size_t>(r) * c, 0) {}
    uint64_t& at(int64_t i, int64_t j) { return a[static_cast<size_t>(i) * cols + j]; }
    uint64_t at(int64_t i, int64_t j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

namespace detail {
constexpr uint64_t kM31 = kPrime31;
inline uint64_t red31(uint64_t x) {
    x = (x & kM31) + (x >> 31);
    x = (x & kM31) + (x >> 31);
    return x >= kM31 ? x - kM31 : x;
}

// elimination specialized to p = 2^31-1: f*(p-a)+b < 2^62+2^31, one Mersenne fold per element
inline int64_t rank_m31(GfMat& m) {
    const uint64_t p = kM31;
    int64_t r = 0;
    for (int64_t c = 0; c < m.cols && r < m.rows; ++c) {
        int64_t piv = -1;
        for (int64_t i = r; i < m.rows; ++i)
            if (m.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int64_t j = c; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        const uint64_t inv = invmod(m.at(r, c), p);
        const uint64_t* prow = &m.at(r, 0);
        for (int64_t i = r + 1; i < m.rows; ++i) {
            uint64_t lead = m.at(i, c);
            if (!lead) continue;
            uint64_t f = red31(static_cast<unsigned __int128>(lead) * inv % p);
            uint64_t* row = &m.at(i, 0);
            for (int64_t j = c; j < m.cols; ++j) row[j] = red31(row[j] + f * (p - prow[j]));
        }
        ++r;
    }
    return r;
}
} // namespace detail

inline int64_t gf_rank(GfMat m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    if (m.p == kPrime31) return detail::rank_m31(m);
    const uint64_t p = m.p;
    int64_t r = 0;
    for (int64_t c = 0; c < m.cols && r < m.rows; ++c) {
        int64_t piv = -1;
        for (int64_t i = r; i < m.rows; ++i)
            if (m.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int64_t j = c; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        const uint64_t inv = invmod(m.at(r, c), p);
        for (int64_t i = r + 1; i < m.rows; ++i) {
            if (!m.at(i, c)) continue;
            uint64_t f = mulmod(m.at(i, c), inv, p);
            const uint64_t* prow = &m.at(r, 0);
            uint64_t* row = &m.at(i, 0);
            for (int64_t j = c; j < m.cols; ++j)
                if (prow[j]) row[j] = (row[j] + mulmod(f, p - prow[j], p)) % p;
        }
        ++r;
    }
    return r;
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit with the bases above
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

} // namespace tensorank
