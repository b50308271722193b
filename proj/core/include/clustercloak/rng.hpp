#pragma once

#include <cstdint>

namespace clustercloak {

/// Deterministic pseudo-random generator: xoshiro256** with splitmix64
/// state expansion. Fully specified here so that any seed reproduces the
/// same sequence on every platform and toolchain; golden tests and the
/// replay bundles depend on that.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    /// Next raw 64-bit draw.
    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [lo, hi], inclusive.
    int int_range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Derives an independent stream seed from a base seed and a stream tag.
/// Used to give every experiment cell / trace its own generator.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t x = base ^ (0x9e3779b97f4a7c15ULL + (tag << 1));
    std::uint64_t a = Rng::splitmix64(x);
    (void)Rng::splitmix64(x);
    return a ^ Rng::splitmix64(x);
}

}  // namespace clustercloak
