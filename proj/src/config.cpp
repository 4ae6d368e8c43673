#include "ssbloc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace ssbloc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError("config: " + message);
}

const json& require_object(const json& node, const std::string& path) {
    if (!node.is_object()) fail(path + ": expected an object");
    return node;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path) {
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            fail("unknown key '" + item.key() + "' in " + path);
        }
    }
}

void get_double(const json& obj, const char* key, const std::string& path,
                double& target) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) fail(path + "." + key + ": expected a number");
    target = it->get<double>();
}

void get_bool(const json& obj, const char* key, const std::string& path,
              bool& target) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_boolean()) fail(path + "." + key + ": expected a boolean");
    target = it->get<bool>();
}

void get_size(const json& obj, const char* key, const std::string& path,
              std::size_t& target) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_integer() || (it->is_number_integer() && it->get<long long>() < 0)) {
        fail(path + "." + key + ": expected a non-negative integer");
    }
    target = static_cast<std::size_t>(it->get<long long>());
}

void get_int(const json& obj, const char* key, const std::string& path,
             int& target) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_integer()) fail(path + "." + key + ": expected an integer");
    target = it->get<int>();
}

void get_u64(const json& obj, const char* key, const std::string& path,
             std::uint64_t& target) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_integer() || it->get<long long>() < 0) {
        fail(path + "." + key + ": expected a non-negative integer");
    }
    target = it->get<std::uint64_t>();
}

std::string get_string(const json& node, const std::string& path) {
    if (!node.is_string()) fail(path + ": expected a string");
    return node.get<std::string>();
}

void parse_scenario(const json& node, ScenarioConfig& out) {
    const std::string path = "scenario";
    const json& obj = require_object(node, path);
    check_keys(obj,
               {"regime", "algorithm", "mode_id", "t_max_s", "seed",
                "odometer_sigma_mps", "frame_symbols", "genie_aoa", "genie_snr",
                "pin_errors"},
               path);
    if (auto it = obj.find("regime"); it != obj.end()) {
        out.regime = parse_regime(get_string(*it, path + ".regime"));
    }
    if (auto it = obj.find("algorithm"); it != obj.end()) {
        out.algorithm = parse_algorithm(get_string(*it, path + ".algorithm"));
    }
    get_int(obj, "mode_id", path, out.mode_id);
    get_double(obj, "t_max_s", path, out.t_max_s);
    get_u64(obj, "seed", path, out.seed);
    get_double(obj, "odometer_sigma_mps", path, out.odometer_sigma_mps);
    get_size(obj, "frame_symbols", path, out.frame_symbols);
    get_bool(obj, "genie_aoa", path, out.genie_aoa);
    get_bool(obj, "genie_snr", path, out.genie_snr);
    if (auto it = obj.find("pin_errors"); it != obj.end()) {
        if (!it->is_number()) fail(path + ".pin_errors: expected a number");
        out.pin_errors = it->get<double>();
    }
}

void parse_track(const json& node, TrackModel& out) {
    const std::string path = "track";
    const json& obj = require_object(node, path);
    check_keys(obj, {"length_m", "bend_deg"}, path);
    get_double(obj, "length_m", path, out.length_m);
    if (auto it = obj.find("bend_deg"); it != obj.end()) {
        if (!it->is_number()) fail(path + ".bend_deg: expected a number");
        out.cumulative_bend_rad = it->get<double>() * M_PI / 180.0;
    }
}

void parse_profile(const json& node, SpeedProfile& out) {
    const std::string path = "profile";
    const json& obj = require_object(node, path);
    check_keys(obj, {"v_max_mps", "accel_mps2", "decel_mps2"}, path);
    get_double(obj, "v_max_mps", path, out.v_max_mps);
    get_double(obj, "accel_mps2", path, out.accel_mps2);
    get_double(obj, "decel_mps2", path, out.decel_mps2);
}

void parse_rrh(const json& node, RrhSite& out) {
    const std::string path = "rrh";
    const json& obj = require_object(node, path);
    check_keys(obj, {"x_m", "y_m"}, path);
    get_double(obj, "x_m", path, out.x_m);
    get_double(obj, "y_m", path, out.y_m);
}

void parse_ofdm(const json& node, OfdmConfig& out) {
    const std::string path = "ofdm";
    const json& obj = require_object(node, path);
    check_keys(obj,
               {"fft_size", "active_subcarriers", "scs_hz", "cp_duration_s",
                "prb_count"},
               path);
    get_size(obj, "fft_size", path, out.fft_size);
    get_size(obj, "active_subcarriers", path, out.active_subcarriers);
    get_double(obj, "scs_hz", path, out.scs_hz);
    get_double(obj, "cp_duration_s", path, out.cp_duration_s);
    get_size(obj, "prb_count", path, out.prb_count);
}

void parse_channel(const json& node, ChannelConfig& out) {
    const std::string path = "channel";
    const json& obj = require_object(node, path);
    check_keys(obj,
               {"carrier_hz", "tx_power_dbm", "tx_gain_dbi", "rx_gain_dbi",
                "noise_figure_db", "noise_temp_k", "bandwidth_hz",
                "shadowing_sigma_db", "rician_k_db", "antennas", "snapshots",
                "enable_shadowing", "enable_fading", "enable_noise"},
               path);
    get_double(obj, "carrier_hz", path, out.carrier_hz);
    get_double(obj, "tx_power_dbm", path, out.tx_power_dbm);
    get_double(obj, "tx_gain_dbi", path, out.tx_gain_dbi);
    get_double(obj, "rx_gain_dbi", path, out.rx_gain_dbi);
    get_double(obj, "noise_figure_db", path, out.noise_figure_db);
    get_double(obj, "noise_temp_k", path, out.noise_temp_k);
    get_double(obj, "bandwidth_hz", path, out.bandwidth_hz);
    get_double(obj, "shadowing_sigma_db", path, out.shadowing_sigma_db);
    get_double(obj, "rician_k_db", path, out.rician_k_db);
    get_size(obj, "antennas", path, out.antennas);
    get_size(obj, "snapshots", path, out.snapshots);
    get_bool(obj, "enable_shadowing", path, out.enable_shadowing);
    get_bool(obj, "enable_fading", path, out.enable_fading);
    get_bool(obj, "enable_noise", path, out.enable_noise);
}

void parse_pid(const json& node, PidGains& out) {
    const std::string path = "pid";
    const json& obj = require_object(node, path);
    check_keys(obj, {"kp", "ki", "kd", "w_snr", "w_vel"}, path);
    get_double(obj, "kp", path, out.kp);
    get_double(obj, "ki", path, out.ki);
    get_double(obj, "kd", path, out.kd);
    get_double(obj, "w_snr", path, out.w_snr);
    get_double(obj, "w_vel", path, out.w_vel);
}

void parse_snr_bounds(const json& node, SnrBounds& out) {
    const std::string path = "snr_bounds";
    const json& obj = require_object(node, path);
    check_keys(obj, {"lo_db", "hi_db"}, path);
    get_double(obj, "lo_db", path, out.lo_db);
    get_double(obj, "hi_db", path, out.hi_db);
}

void parse_per_algorithm(const json& node, const std::string& path,
                         std::array<double, 3>& out) {
    const json& obj = require_object(node, path);
    check_keys(obj, {"music", "esprit", "root_music"}, path);
    get_double(obj, "music", path, out[0]);
    get_double(obj, "esprit", path, out[1]);
    get_double(obj, "root_music", path, out[2]);
}

void parse_energy(const json& node, std::vector<PowerMode>& out) {
    const std::string path = "energy";
    const json& obj = require_object(node, path);
    check_keys(obj, {"modes"}, path);
    auto it = obj.find("modes");
    if (it == obj.end()) return;
    if (!it->is_array()) fail(path + ".modes: expected an array");
    out = default_modes();
    std::size_t index = 0;
    for (const json& entry : *it) {
        const std::string entry_path =
            path + ".modes[" + std::to_string(index++) + "]";
        const json& mode_obj = require_object(entry, entry_path);
        check_keys(mode_obj, {"id", "cpu_mhz", "t_base_s", "e_exec_j"},
                   entry_path);
        auto id_it = mode_obj.find("id");
        if (id_it == mode_obj.end()) fail(entry_path + ": missing 'id'");
        if (!id_it->is_number_integer()) {
            fail(entry_path + ".id: expected an integer");
        }
        const int id = id_it->get<int>();
        PowerMode* target = nullptr;
        for (PowerMode& mode : out) {
            if (mode.id == id) target = &mode;
        }
        if (target == nullptr) {
            fail(entry_path + ": no power mode with id " + std::to_string(id));
        }
        get_double(mode_obj, "cpu_mhz", entry_path, target->cpu_mhz);
        if (auto tb = mode_obj.find("t_base_s"); tb != mode_obj.end()) {
            parse_per_algorithm(*tb, entry_path + ".t_base_s", target->t_base_s);
        }
        if (auto ee = mode_obj.find("e_exec_j"); ee != mode_obj.end()) {
            parse_per_algorithm(*ee, entry_path + ".e_exec_j", target->e_exec_j);
        }
    }
}

void parse_sweep(const json& node, SweepSpec& out) {
    const std::string path = "sweep";
    const json& obj = require_object(node, path);
    check_keys(obj,
               {"mode_ids", "seeds", "energy_budget_j", "error_tolerance_m"},
               path);
    if (auto it = obj.find("mode_ids"); it != obj.end()) {
        if (!it->is_array() || it->empty()) {
            fail(path + ".mode_ids: expected a non-empty array");
        }
        out.mode_ids.clear();
        for (const json& v : *it) {
            if (!v.is_number_integer()) {
                fail(path + ".mode_ids: expected integers");
            }
            out.mode_ids.push_back(v.get<int>());
        }
    }
    if (auto it = obj.find("seeds"); it != obj.end()) {
        if (!it->is_array() || it->empty()) {
            fail(path + ".seeds: expected a non-empty array");
        }
        out.seeds.clear();
        for (const json& v : *it) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                fail(path + ".seeds: expected non-negative integers");
            }
            out.seeds.push_back(v.get<std::uint64_t>());
        }
    }
    if (auto it = obj.find("energy_budget_j"); it != obj.end()) {
        if (!it->is_number()) fail(path + ".energy_budget_j: expected a number");
        out.energy_budget_j = it->get<double>();
    }
    if (auto it = obj.find("error_tolerance_m"); it != obj.end()) {
        if (!it->is_number()) {
            fail(path + ".error_tolerance_m: expected a number");
        }
        out.error_tolerance_m = it->get<double>();
    }
}

void parse_compare(const json& node, CompareSpec& out) {
    const std::string path = "compare";
    const json& obj = require_object(node, path);
    check_keys(obj, {"algorithms", "seeds"}, path);
    if (auto it = obj.find("algorithms"); it != obj.end()) {
        if (!it->is_array() || it->empty()) {
            fail(path + ".algorithms: expected a non-empty array");
        }
        out.algorithms.clear();
        for (const json& v : *it) {
            out.algorithms.push_back(
                parse_algorithm(get_string(v, path + ".algorithms")));
        }
    }
    if (auto it = obj.find("seeds"); it != obj.end()) {
        if (!it->is_array() || it->empty()) {
            fail(path + ".seeds: expected a non-empty array");
        }
        out.seeds.clear();
        for (const json& v : *it) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                fail(path + ".seeds: expected non-negative integers");
            }
            out.seeds.push_back(v.get<std::uint64_t>());
        }
    }
}

void parse_calibrate(const json& node,
                     std::map<std::string, CalibrateEntry>& out) {
    const std::string path = "calibrate";
    const json& obj = require_object(node, path);
    for (const auto& item : obj.items()) {
        parse_algorithm(item.key());  // validates the name
        const std::string entry_path = path + "." + item.key();
        const json& entry = require_object(item.value(), entry_path);
        check_keys(entry, {"total_j", "period_s"}, entry_path);
        CalibrateEntry cal;
        get_double(entry, "total_j", entry_path, cal.total_j);
        get_double(entry, "period_s", entry_path, cal.period_s);
        out[item.key()] = cal;
    }
}

}  // namespace

std::string to_string(AoaAlgorithm alg) {
    switch (alg) {
        case AoaAlgorithm::music: return "music";
        case AoaAlgorithm::esprit: return "esprit";
        case AoaAlgorithm::root_music: return "root_music";
    }
    throw std::invalid_argument("unknown algorithm enum value");
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::theoretical_20ms: return "theoretical_20ms";
        case Regime::fixed_baseline: return "fixed_baseline";
        case Regime::adaptive: return "adaptive";
    }
    throw std::invalid_argument("unknown regime enum value");
}

AoaAlgorithm parse_algorithm(const std::string& name) {
    if (name == "music") return AoaAlgorithm::music;
    if (name == "esprit") return AoaAlgorithm::esprit;
    if (name == "root_music") return AoaAlgorithm::root_music;
    fail("unknown algorithm '" + name +
         "' (expected music, esprit, or root_music)");
}

Regime parse_regime(const std::string& name) {
    if (name == "theoretical_20ms") return Regime::theoretical_20ms;
    if (name == "fixed_baseline") return Regime::fixed_baseline;
    if (name == "adaptive") return Regime::adaptive;
    fail("unknown regime '" + name +
         "' (expected theoretical_20ms, fixed_baseline, or adaptive)");
}

FileConfig config_from_json(const nlohmann::json& j) {
    FileConfig cfg;
    const json& root = require_object(j, "(root)");
    check_keys(root,
               {"scenario", "track", "profile", "rrh", "ofdm", "channel", "pid",
                "snr_bounds", "energy", "sweep", "compare", "calibrate"},
               "(root)");
    if (auto it = root.find("scenario"); it != root.end()) {
        parse_scenario(*it, cfg.scenario);
    }
    if (auto it = root.find("track"); it != root.end()) {
        parse_track(*it, cfg.scenario.track);
    }
    if (auto it = root.find("profile"); it != root.end()) {
        parse_profile(*it, cfg.scenario.profile);
    }
    if (auto it = root.find("rrh"); it != root.end()) {
        parse_rrh(*it, cfg.scenario.rrh);
    }
    if (auto it = root.find("ofdm"); it != root.end()) {
        parse_ofdm(*it, cfg.scenario.ofdm);
    }
    if (auto it = root.find("channel"); it != root.end()) {
        parse_channel(*it, cfg.scenario.channel);
    }
    if (auto it = root.find("pid"); it != root.end()) {
        parse_pid(*it, cfg.scenario.pid);
    }
    if (auto it = root.find("snr_bounds"); it != root.end()) {
        parse_snr_bounds(*it, cfg.scenario.snr_bounds);
    }
    if (auto it = root.find("energy"); it != root.end()) {
        parse_energy(*it, cfg.scenario.modes);
    }
    if (auto it = root.find("sweep"); it != root.end()) {
        parse_sweep(*it, cfg.sweep);
    }
    if (auto it = root.find("compare"); it != root.end()) {
        parse_compare(*it, cfg.compare);
    }
    if (auto it = root.find("calibrate"); it != root.end()) {
        parse_calibrate(*it, cfg.calibrate);
    }
    if (cfg.scenario.modes.empty()) cfg.scenario.modes = default_modes();
    try {
        cfg.scenario.validate();
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return cfg;
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error in '") + path + "': " + e.what());
    }
    return config_from_json(j);
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["scenario"] = {
        {"regime", to_string(cfg.regime)},
        {"algorithm", to_string(cfg.algorithm)},
        {"mode_id", cfg.mode_id},
        {"t_max_s", cfg.t_max_s},
        {"seed", cfg.seed},
        {"odometer_sigma_mps", cfg.odometer_sigma_mps},
        {"frame_symbols", cfg.frame_symbols},
        {"genie_aoa", cfg.genie_aoa},
        {"genie_snr", cfg.genie_snr},
    };
    if (cfg.pin_errors.has_value()) {
        j["scenario"]["pin_errors"] = *cfg.pin_errors;
    } else {
        j["scenario"]["pin_errors"] = nullptr;
    }
    j["track"] = {{"length_m", cfg.track.length_m},
                  {"bend_deg", cfg.track.cumulative_bend_rad * 180.0 / M_PI}};
    j["profile"] = {{"v_max_mps", cfg.profile.v_max_mps},
                    {"accel_mps2", cfg.profile.accel_mps2},
                    {"decel_mps2", cfg.profile.decel_mps2}};
    j["rrh"] = {{"x_m", cfg.rrh.x_m}, {"y_m", cfg.rrh.y_m}};
    j["ofdm"] = {{"fft_size", cfg.ofdm.fft_size},
                 {"active_subcarriers", cfg.ofdm.active_subcarriers},
                 {"scs_hz", cfg.ofdm.scs_hz},
                 {"cp_duration_s", cfg.ofdm.cp_duration_s},
                 {"prb_count", cfg.ofdm.prb_count}};
    j["channel"] = {{"carrier_hz", cfg.channel.carrier_hz},
                    {"tx_power_dbm", cfg.channel.tx_power_dbm},
                    {"tx_gain_dbi", cfg.channel.tx_gain_dbi},
                    {"rx_gain_dbi", cfg.channel.rx_gain_dbi},
                    {"noise_figure_db", cfg.channel.noise_figure_db},
                    {"noise_temp_k", cfg.channel.noise_temp_k},
                    {"bandwidth_hz", cfg.channel.bandwidth_hz},
                    {"shadowing_sigma_db", cfg.channel.shadowing_sigma_db},
                    {"rician_k_db", cfg.channel.rician_k_db},
                    {"antennas", cfg.channel.antennas},
                    {"snapshots", cfg.channel.snapshots},
                    {"enable_shadowing", cfg.channel.enable_shadowing},
                    {"enable_fading", cfg.channel.enable_fading},
                    {"enable_noise", cfg.channel.enable_noise}};
    j["pid"] = {{"kp", cfg.pid.kp},
                {"ki", cfg.pid.ki},
                {"kd", cfg.pid.kd},
                {"w_snr", cfg.pid.w_snr},
                {"w_vel", cfg.pid.w_vel}};
    j["snr_bounds"] = {{"lo_db", cfg.snr_bounds.lo_db},
                       {"hi_db", cfg.snr_bounds.hi_db}};
    json modes = json::array();
    for (const PowerMode& mode :
         cfg.modes.empty() ? default_modes() : cfg.modes) {
        modes.push_back({{"id", mode.id},
                         {"cpu_mhz", mode.cpu_mhz},
                         {"t_base_s",
                          {{"music", mode.t_base_s[0]},
                           {"esprit", mode.t_base_s[1]},
                           {"root_music", mode.t_base_s[2]}}},
                         {"e_exec_j",
                          {{"music", mode.e_exec_j[0]},
                           {"esprit", mode.e_exec_j[1]},
                           {"root_music", mode.e_exec_j[2]}}}});
    }
    j["energy"] = {{"modes", modes}};
    return j;
}

}  // namespace ssbloc
