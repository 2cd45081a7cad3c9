#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ktop/harness.hpp"
#include "ktop/measures.hpp"

namespace ktop {

inline constexpr const char* kToolVersion = "1.0.0";

/// Resolved run configuration, combining a key=value config file with flag
/// overrides. The full resolved set is echoed into every output file.
struct RunConfig {
    std::string command;  // evolve | sweep | classical | verify

    int two_j = 2;
    std::string p_text = "pi/2";
    std::optional<double> k;       // single kick value (evolve/classical)
    std::optional<long> r;         // rational kick k = r*pi/s
    std::optional<long> s;
    std::optional<long> r_max;     // sweep grid r = 0..r_max, k = r*pi/s
    std::vector<double> k_list;    // explicit sweep grid
    int t_max = 100;
    double theta0 = 2.5;
    double phi0 = 1.1;
    std::string measures = "all";  // all | comma list of
                                   // entropy,discord,concurrence,tangle,q
    std::string discord_grid = "coarse";  // coarse | fine
    std::string out;               // empty = stdout
    std::uint64_t seed = 1;
    int n_initial = 36;            // classical portrait initial conditions
    int steps = 200;               // classical steps per trajectory
    std::string suite = "all";     // verify suite selector
};

void load_config_file(RunConfig& cfg, const std::string& path);
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

Precession parse_precession(const std::string& text);
MeasureSelection parse_measures(const std::string& text);
DiscordOptions parse_discord_grid(const std::string& text);

/// Runs the configured subcommand. Returns the process exit code for
/// successful runs (0, or 1 for verification failures); input and numerical
/// problems are reported by throwing input_error / numerical_error.
int run_command(const RunConfig& cfg);

}  // namespace ktop
