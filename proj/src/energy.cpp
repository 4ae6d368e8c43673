#include "ssbloc/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "ssbloc/kinematics.hpp"

namespace ssbloc {

namespace {

// Measured whole-run energy totals at mode 0 for MUSIC, ESPRIT, Root-MUSIC,
// used to back out per-execution costs at that mode's cadence.
constexpr std::array<double, 3> kMode0RunTotalsJ = {627.22, 679.77, 648.70};

double reference_duration_s() {
    const TrackModel track;
    const SpeedProfile profile;
    return profile.total_duration_s(track);
}

}  // namespace

std::vector<PowerMode> default_modes() {
    // {id, cpu_mhz, t_base per algorithm (s)}
    struct Row {
        int id;
        double mhz;
        std::array<double, 3> t_base;
    };
    static constexpr std::array<Row, 8> rows = {{
        {0, 2265.6, {0.080, 0.065, 0.070}},
        {1, 1200.0, {0.150, 0.130, 0.135}},
        {2, 1200.0, {0.150, 0.130, 0.135}},
        {3, 1200.0, {0.150, 0.130, 0.135}},
        {4, 1450.0, {0.120, 0.110, 0.110}},
        {5, 1780.0, {0.100, 0.090, 0.095}},
        {6, 2100.0, {0.100, 0.070, 0.075}},
        {7, 2188.0, {0.100, 0.070, 0.075}},
    }};

    const double duration = reference_duration_s();
    std::array<double, 3> mode0_e_exec{};
    for (std::size_t a = 0; a < 3; ++a)
        mode0_e_exec[a] =
            calibrate_e_exec(kMode0RunTotalsJ[a], duration, rows[0].t_base[a]);

    std::vector<PowerMode> modes;
    modes.reserve(rows.size());
    for (const Row& row : rows) {
        PowerMode mode;
        mode.id = row.id;
        mode.cpu_mhz = row.mhz;
        mode.t_base_s = row.t_base;
        for (std::size_t a = 0; a < 3; ++a) {
            mode.e_exec_j[a] = mode0_e_exec[a] *
                               (row.t_base[a] / rows[0].t_base[a]) *
                               (row.mhz / rows[0].mhz);
        }
        modes.push_back(mode);
    }
    return modes;
}

double calibrate_e_exec(double total_j, double duration_s, double period_s) {
    if (total_j <= 0.0 || duration_s <= 0.0 || period_s <= 0.0)
        throw std::domain_error("calibrate_e_exec: inputs must be positive");
    const double count = std::floor(duration_s / period_s);
    if (count < 1.0)
        throw std::domain_error("calibrate_e_exec: no full period fits the run");
    return total_j / count;
}

void account(EnergyLedger& ledger, const PowerMode& mode, AoaAlgorithm alg) {
    ledger.executions += 1;
    ledger.total_j += mode.e_exec_for(alg);
}

double daily_scaling(double per_trajectory_j, double trajectory_duration_s) {
    if (trajectory_duration_s <= 0.0)
        throw std::domain_error("daily_scaling: duration must be positive");
    return per_trajectory_j * (86400.0 / trajectory_duration_s);
}

}  // namespace ssbloc
