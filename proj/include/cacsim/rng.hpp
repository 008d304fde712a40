#ifndef CACSIM_RNG_HPP
#define CACSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace cacsim {

// splitmix64 step; used for seed derivation and for expanding a single
// 64-bit seed into a full engine state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from (seed, stream index). Streams
// derived from distinct indices are used for per-sample Monte Carlo
// engines and per-(class, kind) traffic processes, so that partitioned
// runs merge to exactly the single-stream result.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b >> 17);
}

// xoshiro256++ with hand-rolled distribution mappings. The standard
// library's engines are portable but its distributions are not specified
// bit-for-bit, and every reproducibility contract here is bitwise.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
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

    // Uniform on (0, 1]; never returns 0 so log() is always finite.
    double u01() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return u01() <= p; }

    // Exponential with the given mean, by inversion.
    double exponential(double mean) { return -mean * std::log(u01()); }

    // Standard normal via Box-Muller; one value per call, two uniforms.
    double normal() {
        const double u1 = u01();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    // Binomial(n, p) as a Bernoulli sum. n stays small in this code base
    // (call counts per cell), so the O(n) draw is fine.
    std::uint32_t binomial(std::uint32_t n, double p) {
        std::uint32_t k = 0;
        for (std::uint32_t i = 0; i < n; ++i) k += bernoulli(p) ? 1u : 0u;
        return k;
    }

    // Uniform integer in [0, bound) by rejection-free multiply-shift.
    std::uint64_t below(std::uint64_t bound) {
        // 128-bit multiply avoids modulo bias well enough for test use.
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        return static_cast<std::uint64_t>(m >> 64);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

private:
    static constexpr double pi = 3.14159265358979323846;

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace cacsim

#endif
