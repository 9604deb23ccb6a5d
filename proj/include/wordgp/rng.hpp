#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace wordgp {

// splitmix64 finalizer, used for seed mixing and derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable derivation of independent seeds from a master seed and a list of
// integer coordinates (dimension, run index, stream tag, ...). Used so that
// every run and every sub-stream gets its own reproducible generator. The
// accumulator enters the combine shifted so that argument order matters:
// derive_seed(a, b) and derive_seed(b, a) are distinct streams.
template <typename... Ints>
std::uint64_t derive_seed(std::uint64_t master, Ints... parts) {
    std::uint64_t h = mix64(master);
    ((h = mix64(h ^ (mix64(static_cast<std::uint64_t>(parts)) + 0x9e3779b97f4a7c15ULL +
                     (h << 12) + (h >> 4)))),
     ...);
    return h;
}

// mt19937_64 with hand-rolled distributions. The engine's output sequence is
// fixed by the standard; std::uniform_*_distribution is not, so we implement
// the few distributions we need to keep runs reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n), n > 0. Rejection sampling, bias-free.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

    // Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform_real();
        double u2 = uniform_real();
        while (u1 <= 0.0) u1 = uniform_real();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace wordgp
