#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssbloc/adaptive.hpp"
#include "ssbloc/aoa.hpp"
#include "ssbloc/channel.hpp"
#include "ssbloc/energy.hpp"
#include "ssbloc/kinematics.hpp"
#include "ssbloc/waveform.hpp"

namespace ssbloc {

enum class Regime { theoretical_20ms, fixed_baseline, adaptive };

/// @brief Everything one localization run needs: plant, link, estimator,
/// controller, and energy table, plus deterministic seeding.
struct ScenarioConfig {
    Regime regime = Regime::adaptive;
    AoaAlgorithm algorithm = AoaAlgorithm::music;
    int mode_id = 0;
    double t_max_s = 0.24;
    std::uint64_t seed = 1;
    double odometer_sigma_mps = 0.05;
    std::size_t frame_symbols = 4;

    TrackModel track;
    SpeedProfile profile;
    RrhSite rrh;
    OfdmConfig ofdm;
    ChannelConfig channel;
    PidGains pid;
    SnrBounds snr_bounds;
    std::vector<PowerMode> modes;  ///< empty means default_modes()

    // Test hooks. genie_aoa feeds the true angle to the tracker, genie_snr
    // feeds the true SNR to the controller, pin_errors overrides both
    // normalized controller errors with a constant.
    bool genie_aoa = false;
    bool genie_snr = false;
    std::optional<double> pin_errors;

    const PowerMode& mode() const;
    /// Throws std::invalid_argument on inconsistent settings (unknown mode,
    /// t_max below the mode's base period, bad bounds).
    void validate() const;
};

/// @brief One wake-up event: truth, estimate, link quality, and the interval
/// that ended at this event.
struct LocalizationRecord {
    double t_s = 0.0;
    double x_true_m = 0.0;
    double y_true_m = 0.0;
    double x_est_m = 0.0;
    double y_est_m = 0.0;
    double err_x_m = 0.0;
    double err_y_m = 0.0;
    double snr_db = 0.0;       ///< SNR the controller saw (estimated unless genie)
    double true_snr_db = 0.0;
    double wt_used_s = 0.0;
    double aoa_true_rad = 0.0;  ///< geometric convention (bearing minus heading)
    double aoa_est_rad = 0.0;
    bool heading_held = false;
    double cum_energy_j = 0.0;
};

struct RunResult {
    std::vector<LocalizationRecord> records;
    double worst_err_x_m = 0.0;
    double worst_err_y_m = 0.0;
    double rms_err_x_m = 0.0;
    double rms_err_y_m = 0.0;
    double duration_s = 0.0;
    EnergyLedger energy;

    std::uint64_t execution_count() const { return energy.executions; }
    double worst_err_m() const {
        return worst_err_x_m > worst_err_y_m ? worst_err_x_m : worst_err_y_m;
    }
};

/// @brief Runs one trajectory end to end.
///
/// The vehicle dead-reckons in 20 ms substeps on noisy odometry between
/// wake-ups. At each wake-up the configured estimator measures the arrival
/// angle, the heading is re-anchored through the incident-angle geometry
/// (held when the estimate is low confidence or the estimator fails), energy
/// is charged, and - in the adaptive regime - the PID controller emits the
/// next wake-up interval from the normalized SNR and velocity errors.
RunResult run_scenario(const ScenarioConfig& cfg);

/// @brief One aggregated design-space row: a mode run across seeds.
struct SweepRow {
    int mode_id = 0;
    double cpu_mhz = 0.0;
    Regime regime = Regime::adaptive;
    AoaAlgorithm algorithm = AoaAlgorithm::music;
    double rms_x_m = 0.0;     ///< mean over seeds of per-run RMS error
    double rms_y_m = 0.0;
    double worst_x_m = 0.0;   ///< max over seeds of per-run worst error
    double worst_y_m = 0.0;
    double mean_energy_j = 0.0;
};

/// @brief Runs base scenario variants across modes and seeds; result order
/// follows mode_ids regardless of worker count.
std::vector<SweepRow> sweep_modes(const ScenarioConfig& base,
                                  const std::vector<int>& mode_ids,
                                  const std::vector<std::uint64_t>& seeds,
                                  unsigned jobs = 1);

/// @brief Filters a design-space table to the rows meeting an energy budget
/// and/or an error tolerance (max of the two RMS axes). At least one
/// constraint is required (std::invalid_argument otherwise). Row order is
/// preserved.
std::vector<SweepRow> select_design_points(
    const std::vector<SweepRow>& table, std::optional<double> energy_budget_j,
    std::optional<double> error_tolerance_m);

}  // namespace ssbloc
