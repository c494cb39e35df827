#ifndef WTD_RNG_HPP
#define WTD_RNG_HPP

#include <cstdint>

namespace wtd {

/// xoshiro256** with splitmix64 state expansion. The generator is part of
/// the instance-file contract: the same seed must yield the same instance on
/// every platform, so no std::uniform_*_distribution is used anywhere (their
/// output is implementation-defined). Identified as "xoshiro256ss" in file
/// headers.
class Xoshiro256ss {
public:
    static constexpr const char* algorithm_id = "xoshiro256ss";

    explicit Xoshiro256ss(std::uint64_t seed) {
        // splitmix64 expansion of the 64-bit seed into the 256-bit state
        std::uint64_t x = seed;
        for (auto& w : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

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

    /// Unbiased integer in [0, n), n >= 1 (rejection on the short range).
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    /// Uniform integer in [lo, hi], inclusive.
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(
                        bounded(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace wtd

#endif
