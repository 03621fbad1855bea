#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace casctop {

// Deterministic RNG with self-contained distribution transforms.
//
// std:: distributions are not bit-stable across library versions, so every
// transform used by generators, diffusion and the trial harness is written
// out here. Same seed, same call sequence => same values, everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed == 0 ? 0x9e3779b97f4a7c15ULL : seed) {
        // warm up so that small seeds diverge immediately
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 bits
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, bound)
    std::uint64_t uniform_int(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
        // rejection to kill modulo bias
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % bound;
    }

    double exponential(double mean) {
        if (mean <= 0.0) throw std::invalid_argument("exponential: mean must be positive");
        return -mean * std::log1p(-uniform01());
    }

    double normal(double mean, double sd) {
        // Box-Muller, cosine branch only; deterministic, no cached state
        double u1, u2;
        do { u1 = uniform01(); } while (u1 <= 0.0);
        u2 = uniform01();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
        return mean + sd * z;
    }

    double gamma(double shape, double scale) {
        if (shape <= 0.0 || scale <= 0.0) throw std::invalid_argument("gamma: parameters must be positive");
        if (shape < 1.0) {
            // boost: Gamma(a) = Gamma(a+1) * U^(1/a)
            double u;
            do { u = uniform01(); } while (u <= 0.0);
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        // Marsaglia-Tsang squeeze
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal(0.0, 1.0);
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u;
            do { u = uniform01(); } while (u <= 0.0);
            if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // geometric count of successes with probability p: P(k) = (1-p) p^k, mean p/(1-p)
    std::uint64_t geometric_count(double p) {
        if (p < 0.0 || p >= 1.0) throw std::invalid_argument("geometric_count: p must be in [0,1)");
        if (p == 0.0) { uniform01(); return 0; }
        double u;
        do { u = uniform01(); } while (u <= 0.0);
        return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(p)));
    }

private:
    std::uint64_t state_;
};

// Independent stream derived from (seed, stream index); used for per-trial
// and per-cascade seeding so parallel work stays order-independent.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace casctop
