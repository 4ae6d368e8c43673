#include "ssbloc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ssbloc/config.hpp"
#include "ssbloc/energy.hpp"
#include "ssbloc/sim.hpp"

namespace ssbloc {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

// %.17g guarantees the printed decimal parses back to the identical double,
// so CSV consumers can cross-check against the JSON summaries exactly.
std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& dir,
                          const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
}

void write_json(const std::filesystem::path& dir, const std::string& name,
                const nlohmann::json& j) {
    std::ofstream out = open_output(dir, name);
    out << j.dump(2) << '\n';
}

void write_trajectory_csv(const std::filesystem::path& dir,
                          const RunResult& result) {
    std::ofstream out = open_output(dir, "trajectory.csv");
    out << "t_s,x_true,y_true,x_est,y_est,err_x_m,err_y_m,snr_db,wt_ms,"
           "aoa_true_deg,aoa_est_deg,cum_energy_j\n";
    for (const LocalizationRecord& r : result.records) {
        out << fmt(r.t_s) << ',' << fmt(r.x_true_m) << ',' << fmt(r.y_true_m)
            << ',' << fmt(r.x_est_m) << ',' << fmt(r.y_est_m) << ','
            << fmt(r.err_x_m) << ',' << fmt(r.err_y_m) << ',' << fmt(r.snr_db)
            << ',' << fmt(r.wt_used_s * 1e3) << ','
            << fmt(r.aoa_true_rad * kRadToDeg) << ','
            << fmt(r.aoa_est_rad * kRadToDeg) << ',' << fmt(r.cum_energy_j)
            << '\n';
    }
}

nlohmann::json run_result_json(const RunResult& result) {
    return {{"records", result.records.size()},
            {"worst_err_x_m", result.worst_err_x_m},
            {"worst_err_y_m", result.worst_err_y_m},
            {"rms_err_x_m", result.rms_err_x_m},
            {"rms_err_y_m", result.rms_err_y_m},
            {"duration_s", result.duration_s},
            {"executions", result.execution_count()},
            {"energy_j", result.energy.total_j},
            {"daily_energy_j",
             daily_scaling(result.energy.total_j, result.duration_s)}};
}

struct Aggregate {
    double mean_rms_x = 0.0;
    double mean_rms_y = 0.0;
    double worst_x = 0.0;
    double worst_y = 0.0;
    double mean_energy = 0.0;
    double mean_executions = 0.0;
};

Aggregate aggregate_runs(const ScenarioConfig& scenario,
                         const std::vector<std::uint64_t>& seeds) {
    Aggregate agg;
    for (std::uint64_t seed : seeds) {
        ScenarioConfig cfg = scenario;
        cfg.seed = seed;
        const RunResult result = run_scenario(cfg);
        agg.mean_rms_x += result.rms_err_x_m;
        agg.mean_rms_y += result.rms_err_y_m;
        agg.worst_x = std::max(agg.worst_x, result.worst_err_x_m);
        agg.worst_y = std::max(agg.worst_y, result.worst_err_y_m);
        agg.mean_energy += result.energy.total_j;
        agg.mean_executions += static_cast<double>(result.execution_count());
    }
    const double n = static_cast<double>(seeds.size());
    agg.mean_rms_x /= n;
    agg.mean_rms_y /= n;
    agg.mean_energy /= n;
    agg.mean_executions /= n;
    return agg;
}

nlohmann::json aggregate_json(const Aggregate& agg) {
    return {{"rms_x_m", agg.mean_rms_x},     {"rms_y_m", agg.mean_rms_y},
            {"worst_x_m", agg.worst_x},      {"worst_y_m", agg.worst_y},
            {"mean_energy_j", agg.mean_energy},
            {"mean_executions", agg.mean_executions}};
}

}  // namespace

int cmd_run(const CliOptions& opts) {
    FileConfig cfg = load_config(opts.config_path);
    if (opts.seed.has_value()) cfg.scenario.seed = *opts.seed;
    const RunResult result = run_scenario(cfg.scenario);

    const std::filesystem::path dir(opts.out_dir);
    write_trajectory_csv(dir, result);
    nlohmann::json summary = {{"command", "run"},
                              {"config", scenario_to_json(cfg.scenario)},
                              {"results", run_result_json(result)}};
    write_json(dir, "summary.json", summary);
    std::cout << "run: " << result.records.size() << " wake-ups, worst error "
              << fmt(result.worst_err_m()) << " m, energy "
              << fmt(result.energy.total_j) << " J\n";
    return 0;
}

int cmd_sweep(const CliOptions& opts) {
    FileConfig cfg = load_config(opts.config_path);
    if (opts.seed.has_value()) cfg.scenario.seed = *opts.seed;
    // Unknown mode ids are a configuration problem, not a runtime one.
    for (int id : cfg.sweep.mode_ids) {
        ScenarioConfig probe = cfg.scenario;
        probe.mode_id = id;
        try {
            probe.mode();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: sweep.mode_ids: ") +
                              e.what());
        }
    }
    const std::vector<SweepRow> rows =
        sweep_modes(cfg.scenario, cfg.sweep.mode_ids, cfg.sweep.seeds,
                    opts.jobs);

    const std::filesystem::path dir(opts.out_dir);
    std::ofstream out = open_output(dir, "dse.csv");
    out << "mode_id,cpu_mhz,regime,algorithm,rms_x_m,rms_y_m,worst_x_m,"
           "worst_y_m,mean_energy_j\n";
    nlohmann::json rows_json = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        out << row.mode_id << ',' << fmt(row.cpu_mhz) << ','
            << to_string(row.regime) << ',' << to_string(row.algorithm) << ','
            << fmt(row.rms_x_m) << ',' << fmt(row.rms_y_m) << ','
            << fmt(row.worst_x_m) << ',' << fmt(row.worst_y_m) << ','
            << fmt(row.mean_energy_j) << '\n';
        rows_json.push_back({{"mode_id", row.mode_id},
                             {"cpu_mhz", row.cpu_mhz},
                             {"regime", to_string(row.regime)},
                             {"algorithm", to_string(row.algorithm)},
                             {"rms_x_m", row.rms_x_m},
                             {"rms_y_m", row.rms_y_m},
                             {"worst_x_m", row.worst_x_m},
                             {"worst_y_m", row.worst_y_m},
                             {"mean_energy_j", row.mean_energy_j}});
    }

    nlohmann::json results = {{"rows", rows_json}};
    if (cfg.sweep.energy_budget_j.has_value() ||
        cfg.sweep.error_tolerance_m.has_value()) {
        const std::vector<SweepRow> selected = select_design_points(
            rows, cfg.sweep.energy_budget_j, cfg.sweep.error_tolerance_m);
        nlohmann::json ids = nlohmann::json::array();
        for (const SweepRow& row : selected) ids.push_back(row.mode_id);
        results["selected_mode_ids"] = ids;
    }
    nlohmann::json summary = {{"command", "sweep"},
                              {"config", scenario_to_json(cfg.scenario)},
                              {"results", results}};
    write_json(dir, "summary.json", summary);
    std::cout << "sweep: " << rows.size() << " design points over "
              << cfg.sweep.seeds.size() << " seeds\n";
    return 0;
}

int cmd_compare(const CliOptions& opts) {
    FileConfig cfg = load_config(opts.config_path);
    if (opts.seed.has_value()) cfg.scenario.seed = *opts.seed;

    const std::filesystem::path dir(opts.out_dir);
    std::ofstream out = open_output(dir, "compare.csv");
    out << "algorithm,regime,rms_x_m,rms_y_m,worst_x_m,worst_y_m,"
           "mean_energy_j,mean_executions,savings\n";
    nlohmann::json entries = nlohmann::json::array();
    for (AoaAlgorithm alg : cfg.compare.algorithms) {
        ScenarioConfig baseline = cfg.scenario;
        baseline.algorithm = alg;
        baseline.regime = Regime::fixed_baseline;
        ScenarioConfig adaptive = baseline;
        adaptive.regime = Regime::adaptive;

        const Aggregate base_agg = aggregate_runs(baseline, cfg.compare.seeds);
        const Aggregate adap_agg = aggregate_runs(adaptive, cfg.compare.seeds);
        const double savings =
            (base_agg.mean_energy - adap_agg.mean_energy) / base_agg.mean_energy;

        out << to_string(alg) << ",fixed_baseline," << fmt(base_agg.mean_rms_x)
            << ',' << fmt(base_agg.mean_rms_y) << ',' << fmt(base_agg.worst_x)
            << ',' << fmt(base_agg.worst_y) << ',' << fmt(base_agg.mean_energy)
            << ',' << fmt(base_agg.mean_executions) << ",\n";
        out << to_string(alg) << ",adaptive," << fmt(adap_agg.mean_rms_x)
            << ',' << fmt(adap_agg.mean_rms_y) << ',' << fmt(adap_agg.worst_x)
            << ',' << fmt(adap_agg.worst_y) << ',' << fmt(adap_agg.mean_energy)
            << ',' << fmt(adap_agg.mean_executions) << ','
            << fmt(savings) << '\n';

        entries.push_back({{"algorithm", to_string(alg)},
                           {"baseline", aggregate_json(base_agg)},
                           {"adaptive", aggregate_json(adap_agg)},
                           {"energy_savings_pct", 100.0 * savings}});
        std::cout << "compare " << to_string(alg) << ": savings "
                  << fmt(100.0 * savings) << "%\n";
    }
    nlohmann::json summary = {{"command", "compare"},
                              {"config", scenario_to_json(cfg.scenario)},
                              {"results", {{"entries", entries}}}};
    write_json(dir, "summary.json", summary);
    return 0;
}

int cmd_calibrate(const CliOptions& opts) {
    FileConfig cfg = load_config(opts.config_path);
    if (cfg.calibrate.empty()) {
        throw ConfigError(
            "config: calibrate: at least one algorithm entry is required");
    }
    const double duration =
        cfg.scenario.profile.total_duration_s(cfg.scenario.track);
    nlohmann::json results;
    for (const auto& [name, entry] : cfg.calibrate) {
        double e_exec = 0.0;
        try {
            e_exec = calibrate_e_exec(entry.total_j, duration, entry.period_s);
        } catch (const std::exception& e) {
            throw ConfigError("config: calibrate." + name + ": " + e.what());
        }
        const auto executions =
            static_cast<std::uint64_t>(std::floor(duration / entry.period_s));
        results[name] = {{"total_j", entry.total_j},
                         {"period_s", entry.period_s},
                         {"duration_s", duration},
                         {"executions", executions},
                         {"e_exec_j", e_exec}};
        std::cout << "calibrate " << name << ": " << fmt(e_exec)
                  << " J per execution\n";
    }
    nlohmann::json summary = {{"command", "calibrate"}, {"results", results}};
    write_json(std::filesystem::path(opts.out_dir), "calibration.json",
               summary);
    return 0;
}

int dispatch(const std::string& command, const CliOptions& opts) {
    try {
        if (command == "run") return cmd_run(opts);
        if (command == "sweep") return cmd_sweep(opts);
        if (command == "compare") return cmd_compare(opts);
        if (command == "calibrate") return cmd_calibrate(opts);
        std::cerr << "error: unknown command '" << command << "'\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace ssbloc
