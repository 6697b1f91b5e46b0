#pragma once

#include <cstdint>

namespace vdw {

// xoshiro256** seeded through splitmix64. All construction randomness flows
// through this generator so that a (seed, parameters) pair reproduces the
// same output on every platform; std::uniform_int_distribution is
// implementation-defined and must not be used anywhere in the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            // splitmix64 step
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
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

    // Uniform draw from [0, bound) by rejection; bound >= 1.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int s) {
        return (v << s) | (v >> (64 - s));
    }

    std::uint64_t state_[4];
};

}  // namespace vdw
