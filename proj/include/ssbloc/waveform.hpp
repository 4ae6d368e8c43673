#pragma once

#include <cstdint>
#include <vector>

#include "ssbloc/numerics.hpp"

namespace ssbloc {

/// @brief CP-OFDM numerology for the periodically broadcast sync block.
///
/// Defaults describe a 256-point FFT carrying 240 active subcarriers at
/// 15 kHz spacing (20 resource blocks of 12 subcarriers, 3.6 MHz occupied),
/// sampled at fft_size * scs = 3.84 Msps with a 4.6 us cyclic prefix.
struct OfdmConfig {
    std::size_t fft_size = 256;
    std::size_t active_subcarriers = 240;
    double scs_hz = 15e3;
    double cp_duration_s = 4.6e-6;
    std::size_t prb_count = 20;

    double sample_rate_hz() const {
        return static_cast<double>(fft_size) * scs_hz;
    }
    double passband_hz() const {
        return static_cast<double>(prb_count) * 12.0 * scs_hz;
    }
    /// CP length in samples, rounded to the nearest integer (>= 1).
    std::size_t cp_samples() const;
    /// Samples per OFDM symbol including the prefix.
    std::size_t symbol_samples() const { return fft_size + cp_samples(); }

    /// Throws std::invalid_argument when the numerology is unusable
    /// (non-power-of-two FFT, more active subcarriers than bins, zero CP).
    void validate() const;
};

/// @brief Time-domain baseband frame: symbol_count OFDM symbols, each a
/// cyclic prefix followed by the IFFT body.
struct BasebandFrame {
    std::vector<cdouble> samples;
    std::size_t symbol_count = 0;
    double sample_rate_hz = 0.0;
    bool power_normalized = false;
};

/// @brief Generates a frame of seeded QPSK content.
///
/// Active subcarriers are split evenly around the excluded DC bin. The whole
/// frame is scaled to unit mean sample power; an all-zero frame (no active
/// subcarriers) skips normalization and reports power_normalized = false.
BasebandFrame generate_frame(const OfdmConfig& cfg, std::uint64_t seed,
                             std::size_t symbol_count = 4);

/// @brief True when every symbol's prefix equals the tail of its body exactly.
/// Throws std::invalid_argument on length mismatch or zero-length body.
bool cp_check(const BasebandFrame& frame, const OfdmConfig& cfg);

}  // namespace ssbloc
