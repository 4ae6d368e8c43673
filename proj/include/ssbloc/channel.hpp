#pragma once

#include <cstdint>
#include <vector>

#include "ssbloc/numerics.hpp"
#include "ssbloc/waveform.hpp"

namespace ssbloc {

/// @brief Link-budget and array parameters for the roadside-unit downlink.
///
/// The noise floor is thermal: k_B * T * B raised by the receiver noise
/// figure. Shadowing is one log-normal draw per propagate() call and fading
/// one Rician coefficient per call (block fading across a frame). The
/// default transmit power is calibrated so the trajectory's SNR spans the
/// controller's normalization window instead of saturating it.
struct ChannelConfig {
    double carrier_hz = 3.5e9;
    double tx_power_dbm = -21.0;
    double tx_gain_dbi = 10.0;
    double rx_gain_dbi = 5.0;
    double noise_figure_db = 5.0;
    double noise_temp_k = 290.0;
    double bandwidth_hz = 3.6e6;
    double shadowing_sigma_db = 3.0;
    double rician_k_db = 10.0;
    std::size_t antennas = 4;
    std::size_t snapshots = 20;
    bool enable_shadowing = true;
    bool enable_fading = true;
    bool enable_noise = true;
};

/// @brief Uniform linear array response at half-wavelength spacing;
/// component m is exp(j*pi*m*sin(angle)).
struct SteeringVector {
    double angle_rad = 0.0;
    std::vector<cdouble> components;
};

SteeringVector steering_vector(double angle_rad, std::size_t antennas);

/// Antenna-by-snapshot matrix of received baseband samples.
using SnapshotMatrix = ComplexMatrix;

struct PropagateResult {
    SnapshotMatrix snapshots;  ///< antennas x snapshots
    double true_snr_db = 0.0;  ///< per-antenna SNR from the drawn link budget
};

/// @brief Free-space power gain in dB: antenna gains minus path loss
/// 20*log10(4*pi*d*f/c). Throws std::domain_error for d <= 0.
double friis_gain_db(double distance_m, const ChannelConfig& cfg);

/// @brief Receiver noise power in watts over the configured bandwidth.
double noise_power_w(const ChannelConfig& cfg);

/// @brief Runs a frame through the flat-fading array channel.
///
/// Snapshot column n is h*g*a(theta)*s_n + w_n, where s_n are frame samples
/// spread evenly across the frame (scaled by the transmit amplitude), g the
/// Friis-plus-shadowing amplitude, h the Rician coefficient, and w_n
/// independent circular Gaussian noise of power noise_power_w per antenna.
/// The source angle must lie strictly inside the array's front half plane
/// (std::domain_error otherwise, same for d <= 0).
PropagateResult propagate(const BasebandFrame& frame, double true_aoa_rad,
                          double distance_m, const ChannelConfig& cfg,
                          std::uint64_t seed);

/// @brief Blind per-antenna SNR estimate from sample-covariance eigenvalues.
///
/// The largest eigenvalue carries signal plus noise; the mean of the others
/// estimates the noise floor mu. Returns 10*log10(max((l1-mu)/(M*mu), 1e-6)).
/// Throws std::domain_error when mu <= 0 (degenerate covariance).
double estimate_snr_db(const SnapshotMatrix& snapshots, double noise_power_w);

}  // namespace ssbloc
