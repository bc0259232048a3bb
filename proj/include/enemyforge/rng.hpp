#ifndef ENEMYFORGE_RNG_HPP
#define ENEMYFORGE_RNG_HPP

#include <cstdint>

namespace enemyforge {

// One splitmix64 step (Steele, Lea & Flood; Vigna's public-domain
// implementation). Used both to expand a 64-bit seed into generator state
// and as the finalizer behind seed derivation for batch runs.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** 1.0 (Blackman & Vigna), seeded through splitmix64.
//
// The whole project draws from this generator and nothing else, so a run is
// reproducible bit-for-bit from its 64-bit seed on any platform. Stream
// splitting rule: one Rng per evolution run; batches derive independent
// per-run seeds with deterministic_mix() and never share a stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t z = seed;
        for (auto& word : state_) {
            z = splitmix64(z);
            word = z;
        }
    }

    std::uint64_t next_u64() noexcept {
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

    // Uniform double on the closed interval [lo, hi]; 53-bit resolution.
    // The top endpoint is reachable only through rounding, which is all
    // closed-interval semantics can mean at double precision.
    double uniform_real(double lo, double hi) noexcept {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Uniform integer on the inclusive range [lo, hi], unbiased via
    // rejection. lo == hi consumes no randomness.
    int uniform_int(int lo, int hi) noexcept {
        if (lo >= hi) return lo;
        const std::uint64_t span =
            static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) -
                                       static_cast<std::int64_t>(lo)) + 1;
        const std::uint64_t limit = ~0ULL - (~0ULL % span);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

    // True with probability p; p <= 0 never fires, p >= 1 always does.
    bool bernoulli(double p) noexcept { return uniform_real(0.0, 1.0) < p; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace enemyforge

#endif
