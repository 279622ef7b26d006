#ifndef PLSE_RNG_HPP
#define PLSE_RNG_HPP

#include <cstdint>

namespace plse {

// xoshiro256++ with splitmix64 seeding. All stochastic components draw from
// a stream derived as (master_seed, purpose_tag, index), so results are
// reproducible regardless of thread scheduling. std::uniform_* distributions
// are avoided on purpose: their output is not portable across standard
// library implementations.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng() : Rng(0) {}

    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, bound). Rejection sampling keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    std::uint32_t next_index(std::uint32_t bound) {
        return static_cast<std::uint32_t>(next_below(bound));
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Stream purposes. Distinct tags keep derived streams independent even when
// indices coincide.
namespace stream_tag {
inline constexpr std::uint64_t kInitPopulation = 1;
inline constexpr std::uint64_t kImprove = 2;
inline constexpr std::uint64_t kCrossover = 3;
inline constexpr std::uint64_t kInstanceGen = 4;
inline constexpr std::uint64_t kBench = 5;
inline constexpr std::uint64_t kMatch = 6;
}  // namespace stream_tag

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (tag * 0xD1B54A32D192ED03ULL);
    h = splitmix64(s);
    s = h ^ (index * 0x8CB92BA72F3D8DD7ULL);
    return splitmix64(s);
}

inline Rng derive_stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
    return Rng(derive_seed(master, tag, index));
}

}  // namespace plse

#endif  // PLSE_RNG_HPP
