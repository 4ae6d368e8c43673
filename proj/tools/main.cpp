#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssbloc/commands.hpp"

namespace {

void add_common_options(CLI::App* sub, ssbloc::CliOptions& opts,
                        std::uint64_t& seed_slot, bool& seed_set) {
    sub->add_option("--config", opts.config_path, "Scenario config file (JSON)")
        ->required();
    sub->add_option("--out", opts.out_dir, "Output directory")
        ->default_val(".");
    sub->add_option("--jobs", opts.jobs, "Worker threads for sweeps")
        ->default_val(1u)
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_slot, "Override the scenario seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smart-factory V2I localization simulator"};
    app.require_subcommand(1);

    ssbloc::CliOptions opts;
    std::uint64_t seed_slot = 0;
    bool seed_set = false;

    CLI::App* run = app.add_subcommand(
        "run", "Simulate one trajectory and write trajectory.csv");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Evaluate power modes across seeds and write dse.csv");
    CLI::App* compare = app.add_subcommand(
        "compare", "Adaptive versus fixed baseline per algorithm");
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "Derive per-execution energy from run totals");
    for (CLI::App* sub : {run, sweep, compare, calibrate}) {
        add_common_options(sub, opts, seed_slot, seed_set);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (seed_set) opts.seed = seed_slot;

    const std::string command = app.get_subcommands().front()->get_name();
    return ssbloc::dispatch(command, opts);
}
