#pragma once

#include <array>
#include <cstdint>

namespace newscycle::rng {

// SplitMix64 step generator (Steele/Lea/Vigna). Used for seeding and for
// deriving per-stream keys; not used as a long-running generator itself.
struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256** (Blackman/Vigna). Self-contained so that draw sequences do not
// depend on the standard library's distribution implementations.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
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

    // Uniform in [0,1), 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0,bound) via 128-bit multiply-shift; bias is O(bound/2^64).
    std::uint32_t next_below(std::uint32_t bound) {
        const auto wide = static_cast<unsigned __int128>(next()) * bound;
        return static_cast<std::uint32_t>(wide >> 64);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

// Derives an independent stream for (iteration, ant) from a master seed.
// The same triple always yields the same stream, which is what makes parallel
// and serial tour construction interchangeable.
inline Xoshiro256StarStar make_stream(std::uint64_t master_seed,
                                      std::uint64_t iteration,
                                      std::uint64_t ant) {
    std::uint64_t key = master_seed;
    key = SplitMix64(key + 0x9E3779B97F4A7C15ULL * (iteration + 1)).next();
    key = SplitMix64(key + 0xBF58476D1CE4E5B9ULL * (ant + 1)).next();
    return Xoshiro256StarStar(key);
}

}  // namespace newscycle::rng
