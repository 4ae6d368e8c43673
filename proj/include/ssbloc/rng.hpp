#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <random>

namespace ssbloc {

/// @brief Deterministic random source used throughout the simulator.
///
/// Wraps a mt19937_64 engine but derives all variates from raw engine words,
/// so identical seeds give identical streams independent of the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_word() { return engine_(); }

    /// Single uniformly distributed bit.
    int bit() { return static_cast<int>(next_word() >> 63); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
    }

    /// Standard normal variate via Box-Muller; draws are generated in pairs.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        // Guard the log against an exactly-zero first draw.
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    /// Circular complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_gaussian() {
        return {gaussian() * M_SQRT1_2, gaussian() * M_SQRT1_2};
    }

    /// Derives an independent stream for a labelled sub-task (wake-up index,
    /// sweep cell, ...) without disturbing this stream.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
        // splitmix64 finalizer over the combined value.
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (label + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ssbloc
