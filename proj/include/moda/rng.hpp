#pragma once

#include "moda/common.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace moda {

// Seeded random stream. Normal deviates use an explicit Box-Muller so the
// byte stream depends only on the seed and the call sequence, not on the
// standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    int uniform_int(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

    // Standard normal; consumes exactly two uniforms per call.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Stable sub-seed derivation (splitmix64 of seed xor stream tag).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

template <class S>
MatT<S> random_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng, S stdev = S(1)) {
    MatT<S> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = static_cast<S>(rng.normal()) * stdev;
    return m;
}

// FNV-1a over raw bytes; used by determinism checks on emitted artifacts.
std::uint64_t fnv1a(const void* data, std::size_t nbytes);
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace moda
