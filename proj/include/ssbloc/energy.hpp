#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ssbloc/aoa.hpp"

namespace ssbloc {

/// @brief One DVFS operating point of the receiver SoC: base wake-up period
/// and per-execution energy for each estimator.
struct PowerMode {
    int id = 0;
    double cpu_mhz = 0.0;
    /// Indexed by AoaAlgorithm: music, esprit, root_music.
    std::array<double, 3> t_base_s{};
    std::array<double, 3> e_exec_j{};

    double t_base_for(AoaAlgorithm alg) const {
        return t_base_s[static_cast<std::size_t>(alg)];
    }
    double e_exec_for(AoaAlgorithm alg) const {
        return e_exec_j[static_cast<std::size_t>(alg)];
    }
};

/// @brief The eight stock operating modes.
///
/// Mode 0 per-execution energies are calibrated from measured whole-run
/// totals at that mode's cadence; the other modes scale mode 0 by
/// (t_base ratio) * (clock ratio), a declared heuristic that keeps the
/// fastest clock the most expensive mode overall. Values are overridable
/// through the scenario config.
std::vector<PowerMode> default_modes();

/// @brief Per-execution energy implied by a measured run total: total divided
/// by the number of whole periods in the run. Throws std::domain_error when
/// no full period fits or inputs are non-positive.
double calibrate_e_exec(double total_j, double duration_s, double period_s);

/// @brief Running energy account for one scenario run.
struct EnergyLedger {
    std::uint64_t executions = 0;
    double total_j = 0.0;
};

/// Charges one estimator execution at the given mode to the ledger.
void account(EnergyLedger& ledger, const PowerMode& mode, AoaAlgorithm alg);

/// @brief Extrapolates a per-trajectory figure to joules per day of
/// continuous operation. Throws std::domain_error for non-positive duration.
double daily_scaling(double per_trajectory_j, double trajectory_duration_s);

}  // namespace ssbloc
