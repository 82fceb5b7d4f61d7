#pragma once
#include <cstdint>

namespace tensorank {

// splitmix64: tiny, deterministic across platforms, good enough for sampling
// probe points and start vectors.  All randomness in the library flows
// through explicitly passed seeds.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
    // uniform double in [0, 1)
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// per-task seed derivation, order-independent (seed, r, trial) -> stream seed
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0) {
    SplitMix64 g(seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xc2b2ae3d27d4eb4full));
    g.next();
    return g.next();
}

} // namespace tensorank
