#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cstrength {

// splitmix64 finalizer. Used everywhere a sub-seed is derived from a master
// seed so that parallel construction order cannot change results.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Sub-seed for stream `k` of master seed `s`: mix64(s ^ (golden * (k+1))).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

// Deterministic RNG wrapper. mt19937_64 is bit-specified by the standard;
// the distributions below are hand-rolled because the std:: ones are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= lim);
        return x % n;
    }

    // Box-Muller, cosine branch only (one normal per two uniforms, stateless).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mu, double sd) { return mu + sd * normal(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace cstrength
