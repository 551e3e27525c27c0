#pragma once

#include <cstdint>
#include <span>

// Deterministic random streams. std::mt19937 plus the std distributions are
// implementation-defined in their output sequences, so everything here is
// hand-rolled: xoshiro256** state advanced by splitmix64 seeding, and fixed
// sampling algorithms that behave identically on every platform/compiler.

namespace mlsforge {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    std::uint64_t next_u64() {
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

    // Uniform double in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return u01() < p; }

    // Unbiased integer in [0, n), Lemire's multiply-and-reject.
    std::uint64_t uniform_index(std::uint64_t n) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Index sampled proportionally to nonnegative weights; the caller
    // guarantees a positive total.
    std::size_t weighted_index(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = u01() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Stream purposes keep sub-streams of one generation/group independent.
enum class StreamPurpose : std::uint64_t {
    InitStrategies = 1,
    Play = 2,
    Learning = 3,
    NormSeeding = 4,
};

// Derives an independent stream from (master seed, generation, group id,
// purpose) so parallel and serial group schedules draw identical numbers.
inline Rng derive_stream(std::uint64_t master_seed, std::uint64_t generation,
                         std::uint64_t group_id, StreamPurpose purpose) {
    std::uint64_t s = master_seed;
    std::uint64_t key = splitmix64(s);
    s ^= generation * 0x9e3779b97f4a7c15ULL;
    key ^= splitmix64(s);
    s ^= (group_id + 1) * 0xd1b54a32d192ed03ULL;
    key ^= splitmix64(s);
    s ^= static_cast<std::uint64_t>(purpose) * 0x8cb92ba72f3d8dd7ULL;
    key ^= splitmix64(s);
    return Rng(key);
}

}  // namespace mlsforge
