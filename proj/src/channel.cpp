#include "ssbloc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "ssbloc/rng.hpp"

namespace ssbloc {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kBoltzmann = 1.380649e-23;
constexpr double kSnrFloorLinear = 1e-6;

}  // namespace

SteeringVector steering_vector(double angle_rad, std::size_t antennas) {
    if (antennas == 0)
        throw std::invalid_argument("steering_vector: antennas must be positive");
    SteeringVector a;
    a.angle_rad = angle_rad;
    a.components.resize(antennas);
    const double phase_step = M_PI * std::sin(angle_rad);
    for (std::size_t m = 0; m < antennas; ++m)
        a.components[m] = std::polar(1.0, phase_step * static_cast<double>(m));
    return a;
}

double friis_gain_db(double distance_m, const ChannelConfig& cfg) {
    if (distance_m <= 0.0)
        throw std::domain_error("friis_gain_db: distance must be positive");
    const double path_loss_db =
        20.0 * std::log10(4.0 * M_PI * distance_m * cfg.carrier_hz / kSpeedOfLight);
    return cfg.tx_gain_dbi + cfg.rx_gain_dbi - path_loss_db;
}

double noise_power_w(const ChannelConfig& cfg) {
    return kBoltzmann * cfg.noise_temp_k * cfg.bandwidth_hz *
           std::pow(10.0, cfg.noise_figure_db / 10.0);
}

PropagateResult propagate(const BasebandFrame& frame, double true_aoa_rad,
                          double distance_m, const ChannelConfig& cfg,
                          std::uint64_t seed) {
    if (std::abs(true_aoa_rad) >= M_PI / 2.0)
        throw std::domain_error(
            "propagate: source angle outside the array's unambiguous half plane");
    if (distance_m <= 0.0)
        throw std::domain_error("propagate: distance must be positive");
    if (frame.samples.empty())
        throw std::invalid_argument("propagate: frame has no samples");
    if (cfg.snapshots == 0 || cfg.antennas == 0)
        throw std::invalid_argument("propagate: antennas and snapshots must be positive");

    Rng rng(seed);

    double gain_db = friis_gain_db(distance_m, cfg);
    if (cfg.enable_shadowing) gain_db += cfg.shadowing_sigma_db * rng.gaussian();
    const double g = std::pow(10.0, gain_db / 20.0);

    // Rician block-fading coefficient with unit mean power; the line-of-sight
    // component is taken at zero phase.
    cdouble h = 1.0;
    if (cfg.enable_fading) {
        const double k = std::pow(10.0, cfg.rician_k_db / 10.0);
        h = std::sqrt(k / (k + 1.0)) +
            std::sqrt(1.0 / (k + 1.0)) * rng.complex_gaussian();
    }

    const double tx_power_w = std::pow(10.0, (cfg.tx_power_dbm - 30.0) / 10.0);
    const double tx_amplitude = std::sqrt(tx_power_w);
    const double noise_w = noise_power_w(cfg);
    const double noise_amp = std::sqrt(noise_w);

    const SteeringVector a = steering_vector(true_aoa_rad, cfg.antennas);
    const std::size_t total = frame.samples.size();

    PropagateResult out;
    out.snapshots = SnapshotMatrix(cfg.antennas, cfg.snapshots);
    for (std::size_t n = 0; n < cfg.snapshots; ++n) {
        const std::size_t idx = n * total / cfg.snapshots;
        const cdouble s = tx_amplitude * frame.samples[idx];
        const cdouble hg_s = h * g * s;
        for (std::size_t m = 0; m < cfg.antennas; ++m) {
            cdouble w{};
            if (cfg.enable_noise) w = noise_amp * rng.complex_gaussian();
            out.snapshots(m, n) = hg_s * a.components[m] + w;
        }
    }

    const double signal_w = std::norm(h) * g * g * tx_power_w;
    out.true_snr_db = 10.0 * std::log10(signal_w / noise_w);
    return out;
}

double estimate_snr_db(const SnapshotMatrix& snapshots,
                       [[maybe_unused]] double noise_power_w) {
    const std::size_t m = snapshots.rows();
    const std::size_t n = snapshots.cols();
    if (m < 2 || n == 0)
        throw std::invalid_argument("estimate_snr_db: need >= 2 antennas and >= 1 snapshot");

    ComplexMatrix r(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cdouble acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += snapshots(i, k) * std::conj(snapshots(j, k));
            r(i, j) = acc / static_cast<double>(n);
        }

    const EigenDecomposition eig = hermitian_eig(r);
    double mu = 0.0;
    for (std::size_t k = 1; k < m; ++k) mu += eig.eigenvalues[k];
    mu /= static_cast<double>(m - 1);
    // A noise floor at rounding-error level below the top eigenvalue means the
    // input was effectively noiseless; there is no floor to measure against.
    if (mu <= std::max(0.0, 1e-12 * eig.eigenvalues[0]))
        throw std::domain_error("estimate_snr_db: degenerate covariance (no noise floor)");

    const double snr = std::max(
        (eig.eigenvalues[0] - mu) / (static_cast<double>(m) * mu), kSnrFloorLinear);
    return 10.0 * std::log10(snr);
}

}  // namespace ssbloc
