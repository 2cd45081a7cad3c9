// Command-line front end for the kicked-top simulator: stroboscopic
// evolutions, (k, t) sweeps, classical phase portraits, and the
// verification suite. Exit codes: 0 pass, 1 verification failure,
// 2 usage/config error, 3 numerical error.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ktop/cli_support.hpp"
#include "ktop/errors.hpp"

namespace {

// Every value flag is recorded as a (key, value) override and applied on top
// of the config file, so explicit flags always win over file entries.
struct FlagRecorder {
    std::vector<std::pair<std::string, std::string>> overrides;

    void add(CLI::App* cmd, const std::string& flag, const std::string& key,
             const std::string& help) {
        cmd->add_option_function<std::string>(
            flag,
            [this, key](const std::string& value) { overrides.emplace_back(key, value); },
            help);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ktop: quantum kicked-top correlation simulator and verifier"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> set_overrides;
    FlagRecorder flags;

    auto* evolve = app.add_subcommand("evolve", "time series of correlation measures");
    auto* sweep = app.add_subcommand("sweep", "(k, t) heatmap of correlation measures");
    auto* classical = app.add_subcommand("classical", "classical phase portrait");
    auto* verify = app.add_subcommand("verify", "periodicity/symmetry verification suite");

    for (auto* cmd : {evolve, sweep, classical, verify}) {
        cmd->add_option("--config", config_path, "key=value config file");
        cmd->add_option("--set", set_overrides, "additional key=value override");
        flags.add(cmd, "--out", "out", "output file (default stdout)");
        flags.add(cmd, "--seed", "seed", "RNG seed for seeded commands");
        flags.add(cmd, "--two-j", "two_j", "twice the spin quantum number j");
        flags.add(cmd, "--p", "p", "precession: 0, pi/2, pi, 3pi/2, 2pi or a float");
        flags.add(cmd, "--k", "k", "kick strength");
        flags.add(cmd, "--r", "r", "rational kick numerator (k = r*pi/s)");
        flags.add(cmd, "--s", "s", "rational kick denominator");
        flags.add(cmd, "--t-max", "t_max", "number of kicks");
        flags.add(cmd, "--theta0", "theta0", "initial coherent-state polar angle");
        flags.add(cmd, "--phi0", "phi0", "initial coherent-state azimuth");
        flags.add(cmd, "--measures", "measures",
                  "all or comma list: entropy,discord,concurrence,tangle,q");
        flags.add(cmd, "--discord-grid", "discord_grid", "coarse or fine");
    }
    flags.add(sweep, "--r-max", "r_max", "sweep grid r = 0..r_max with k = r*pi/s");
    flags.add(classical, "--n-initial", "n_initial", "number of initial conditions");
    flags.add(classical, "--steps", "steps", "map iterations per initial condition");
    flags.add(verify, "--suite", "suite",
              "k-period | time-period | mirrors | reflection | lu | classical | all | scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ktop::RunConfig cfg;
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) ktop::load_config_file(cfg, config_path);
        for (const auto& [key, value] : flags.overrides)
            ktop::apply_override(cfg, key, value);
        for (const auto& kv : set_overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ktop::input_error("--set expects key=value, got '" + kv + "'");
            ktop::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        return ktop::run_command(cfg);
    } catch (const ktop::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ktop::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
