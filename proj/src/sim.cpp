#include "ssbloc/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ssbloc/rng.hpp"

namespace ssbloc {

namespace {

constexpr double kSsbPeriodS = 0.020;
constexpr double kSubstepS = 0.020;

/// The array is mounted broadside to the driver's side, where the radio head
/// sits; its frame is the geometric arrival angle rotated back by 90 degrees.
/// That keeps the whole trajectory inside the unambiguous half plane.
double array_angle_from_geometric(double aoa_geo_rad) {
    return wrap_angle(aoa_geo_rad - M_PI / 2.0);
}

double geometric_angle_from_array(double array_rad) {
    return wrap_angle(array_rad + M_PI / 2.0);
}

}  // namespace

const PowerMode& ScenarioConfig::mode() const {
    for (const PowerMode& m : modes)
        if (m.id == mode_id) return m;
    throw std::invalid_argument("ScenarioConfig: unknown mode_id " +
                                std::to_string(mode_id));
}

void ScenarioConfig::validate() const {
    profile.validate(track);
    ofdm.validate();
    if (modes.empty())
        throw std::invalid_argument("ScenarioConfig: mode table is empty");
    const PowerMode& m = mode();
    const double t_base = m.t_base_for(algorithm);
    if (t_base <= 0.0)
        throw std::invalid_argument("ScenarioConfig: mode has no period for algorithm");
    if (regime == Regime::adaptive && t_max_s < t_base)
        throw std::invalid_argument(
            "ScenarioConfig: t_max_s (" + std::to_string(t_max_s) +
            ") is below the mode's base period t_base (" + std::to_string(t_base) +
            ")");
    if (snr_bounds.hi_db <= snr_bounds.lo_db)
        throw std::invalid_argument("ScenarioConfig: snr bounds are inverted");
    if (odometer_sigma_mps < 0.0)
        throw std::invalid_argument("ScenarioConfig: odometer sigma must be >= 0");
    if (channel.antennas < 2)
        throw std::invalid_argument("ScenarioConfig: need at least two antennas");
    if (frame_symbols == 0)
        throw std::invalid_argument("ScenarioConfig: frame_symbols must be positive");
}

namespace {

struct Estimator {
    AoaAlgorithm algorithm;
    std::optional<MusicEstimator> music;

    explicit Estimator(const ScenarioConfig& cfg) : algorithm(cfg.algorithm) {
        if (algorithm == AoaAlgorithm::music)
            music.emplace(default_music_grid(), cfg.channel.antennas, 1);
    }

    AoaEstimate run(const SnapshotMatrix& snapshots) const {
        const ComplexMatrix r = covariance(snapshots);
        switch (algorithm) {
            case AoaAlgorithm::music:
                return music->estimate(r);
            case AoaAlgorithm::esprit:
                return esprit_aoa(r, 1);
            case AoaAlgorithm::root_music:
                return root_music_aoa(r, 1);
        }
        throw std::logic_error("Estimator: unreachable algorithm");
    }
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& input) {
    ScenarioConfig cfg = input;
    if (cfg.modes.empty()) cfg.modes = default_modes();
    cfg.validate();

    const double total_s = cfg.profile.total_duration_s(cfg.track);
    const PowerMode& mode = cfg.mode();
    const double t_base = mode.t_base_for(cfg.algorithm);
    const double noise_w = noise_power_w(cfg.channel);

    const bool fixed = cfg.regime != Regime::adaptive;
    const double fixed_period =
        cfg.regime == Regime::theoretical_20ms ? kSsbPeriodS : t_base;

    const Estimator estimator(cfg);
    WakeUpController controller(cfg.pid, t_base, cfg.t_max_s);

    Rng odometer(Rng::derive_seed(cfg.seed, 0));

    auto initial_errors = [&]() {
        NormalizedErrors e;
        if (cfg.pin_errors) e = {*cfg.pin_errors, *cfg.pin_errors};
        return e;
    };

    RunResult result;
    result.duration_s = total_s;

    VehicleState est;  // estimate starts on the known dock pose
    double wt = fixed ? fixed_period : controller.update(initial_errors(), t_base);
    double t = 0.0;
    double ctrl_snr_db = 0.5 * (cfg.snr_bounds.lo_db + cfg.snr_bounds.hi_db);
    double last_aoa_est_geo = true_aoa(est, cfg.rrh);
    std::uint64_t k = 0;

    double sum_sq_x = 0.0;
    double sum_sq_y = 0.0;

    while (true) {
        const double t_next = fixed ? static_cast<double>(k + 1) * fixed_period
                                    : t + wt;
        if (t_next > total_s) break;

        // Dead-reckon through the interval in SSB-period substeps. The
        // odometer reports distance covered per substep (wheel ticks), so its
        // noise-free reading is the interval-average speed, not a point
        // sample.
        double remaining = t_next - t;
        double t_sub = t;
        while (remaining > 1e-12) {
            const double dt = remaining < kSubstepS ? remaining : kSubstepS;
            const double t_sub_end = std::min(t_sub + dt, total_s);
            const double v_true = (cfg.profile.distance_at(t_sub_end, cfg.track) -
                                   cfg.profile.distance_at(t_sub, cfg.track)) /
                                  dt;
            double v_odo = v_true + cfg.odometer_sigma_mps * odometer.gaussian();
            if (v_odo < 0.0) v_odo = 0.0;
            est = dead_reckon(est, v_odo, dt);
            t_sub += dt;
            remaining -= dt;
        }
        t = t_next;
        ++k;

        const VehicleState truth = true_state(cfg.track, cfg.profile, t);
        const double aoa_geo_true = true_aoa(truth, cfg.rrh);
        const double theta_array_true = array_angle_from_geometric(aoa_geo_true);
        const double distance = std::hypot(cfg.rrh.x_m - truth.x_m,
                                           cfg.rrh.y_m - truth.y_m);

        const BasebandFrame frame = generate_frame(
            cfg.ofdm, Rng::derive_seed(cfg.seed, 2 * k), cfg.frame_symbols);
        const PropagateResult rx =
            propagate(frame, theta_array_true, distance, cfg.channel,
                      Rng::derive_seed(cfg.seed, 2 * k + 1));

        account(result.energy, mode, cfg.algorithm);

        bool held = false;
        double aoa_est_geo = last_aoa_est_geo;
        if (cfg.genie_aoa) {
            aoa_est_geo = aoa_geo_true;
        } else {
            try {
                const AoaEstimate e = estimator.run(rx.snapshots);
                aoa_est_geo = geometric_angle_from_array(e.angle_rad);
                held = e.low_confidence;
            } catch (const std::exception&) {
                held = true;
            }
        }
        if (!held) {
            const double aois = compute_aois(est.x_m, est.y_m, cfg.rrh);
            est.aoh_rad = compute_aoh(aois, aoa_est_geo);
            last_aoa_est_geo = aoa_est_geo;
        }

        if (cfg.genie_snr) {
            ctrl_snr_db = rx.true_snr_db;
        } else {
            try {
                ctrl_snr_db = estimate_snr_db(rx.snapshots, noise_w);
            } catch (const std::exception&) {
                // Degenerate covariance (noise-free tests): keep the last value.
            }
        }

        LocalizationRecord rec;
        rec.t_s = t;
        rec.x_true_m = truth.x_m;
        rec.y_true_m = truth.y_m;
        rec.x_est_m = est.x_m;
        rec.y_est_m = est.y_m;
        rec.err_x_m = std::abs(est.x_m - truth.x_m);
        rec.err_y_m = std::abs(est.y_m - truth.y_m);
        rec.snr_db = ctrl_snr_db;
        rec.true_snr_db = rx.true_snr_db;
        rec.wt_used_s = fixed ? fixed_period : wt;
        rec.aoa_true_rad = aoa_geo_true;
        rec.aoa_est_rad = aoa_est_geo;
        rec.heading_held = held;
        rec.cum_energy_j = result.energy.total_j;
        result.records.push_back(rec);

        sum_sq_x += rec.err_x_m * rec.err_x_m;
        sum_sq_y += rec.err_y_m * rec.err_y_m;
        if (rec.err_x_m > result.worst_err_x_m) result.worst_err_x_m = rec.err_x_m;
        if (rec.err_y_m > result.worst_err_y_m) result.worst_err_y_m = rec.err_y_m;

        if (!fixed) {
            const double v_plan = truth.speed_mps;
            const double v_meas =
                v_plan + cfg.odometer_sigma_mps * odometer.gaussian();
            NormalizedErrors eps;
            if (cfg.pin_errors) {
                eps = {*cfg.pin_errors, *cfg.pin_errors};
            } else {
                eps = normalize_errors(ctrl_snr_db, v_meas, v_plan,
                                       cfg.snr_bounds, cfg.profile.v_max_mps);
            }
            wt = controller.update(eps, wt);
        }
    }

    if (!result.records.empty()) {
        const double n = static_cast<double>(result.records.size());
        result.rms_err_x_m = std::sqrt(sum_sq_x / n);
        result.rms_err_y_m = std::sqrt(sum_sq_y / n);
    }
    return result;
}

std::vector<SweepRow> sweep_modes(const ScenarioConfig& base,
                                  const std::vector<int>& mode_ids,
                                  const std::vector<std::uint64_t>& seeds,
                                  unsigned jobs) {
    if (mode_ids.empty())
        throw std::invalid_argument("sweep_modes: no modes requested");
    if (seeds.empty())
        throw std::invalid_argument("sweep_modes: no seeds requested");

    ScenarioConfig proto = base;
    if (proto.modes.empty()) proto.modes = default_modes();

    struct Cell {
        int mode_id;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    cells.reserve(mode_ids.size() * seeds.size());
    for (int mode_id : mode_ids)
        for (std::uint64_t seed : seeds) cells.push_back({mode_id, seed});

    std::vector<RunResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            ScenarioConfig cfg = proto;
            cfg.mode_id = cells[i].mode_id;
            cfg.seed = cells[i].seed;
            results[i] = run_scenario(cfg);
        }
    };

    const unsigned n_threads =
        jobs == 0 ? 1u
                  : std::min<std::size_t>(jobs, cells.size() ? cells.size() : 1);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRow> rows;
    rows.reserve(mode_ids.size());
    const double per_mode = static_cast<double>(seeds.size());
    for (std::size_t mi = 0; mi < mode_ids.size(); ++mi) {
        ScenarioConfig cfg = proto;
        cfg.mode_id = mode_ids[mi];
        SweepRow row;
        row.mode_id = mode_ids[mi];
        row.cpu_mhz = cfg.mode().cpu_mhz;
        row.regime = proto.regime;
        row.algorithm = proto.algorithm;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            const RunResult& r = results[mi * seeds.size() + si];
            row.rms_x_m += r.rms_err_x_m / per_mode;
            row.rms_y_m += r.rms_err_y_m / per_mode;
            row.mean_energy_j += r.energy.total_j / per_mode;
            row.worst_x_m = std::max(row.worst_x_m, r.worst_err_x_m);
            row.worst_y_m = std::max(row.worst_y_m, r.worst_err_y_m);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> select_design_points(
    const std::vector<SweepRow>& table, std::optional<double> energy_budget_j,
    std::optional<double> error_tolerance_m) {
    if (!energy_budget_j && !error_tolerance_m)
        throw std::invalid_argument(
            "select_design_points: at least one constraint is required");
    std::vector<SweepRow> out;
    for (const SweepRow& row : table) {
        if (energy_budget_j && row.mean_energy_j > *energy_budget_j) continue;
        if (error_tolerance_m &&
            std::max(row.rms_x_m, row.rms_y_m) > *error_tolerance_m)
            continue;
        out.push_back(row);
    }
    return out;
}

}  // namespace ssbloc
