#include "ktop/cli_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ktop/errors.hpp"
#include "ktop/parallel.hpp"

namespace ktop {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw input_error("config: '" + key + "' expects a number, got '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw input_error("config: '" + key + "' expects an integer, got '" + value + "'");
    }
}

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

struct Output {
    std::ofstream file;
    bool to_stdout = false;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") {
            to_stdout = true;
            return;
        }
        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty() && !std::filesystem::is_directory(parent))
            throw input_error("output directory does not exist: " + parent.string());
        file.open(path, std::ios::binary | std::ios::trunc);
        if (!file) throw input_error("cannot open output file: " + path);
    }

    std::ostream& stream() { return to_stdout ? std::cout : file; }
};

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", cfg.command);
    kv.emplace_back("two_j", std::to_string(cfg.two_j));
    kv.emplace_back("p", cfg.p_text);
    if (cfg.k) kv.emplace_back("k", fmt_sci(*cfg.k));
    if (cfg.r) kv.emplace_back("r", std::to_string(*cfg.r));
    if (cfg.s) kv.emplace_back("s", std::to_string(*cfg.s));
    if (cfg.r_max) kv.emplace_back("r_max", std::to_string(*cfg.r_max));
    if (!cfg.k_list.empty()) {
        std::string list;
        for (double k : cfg.k_list) list += (list.empty() ? "" : ",") + fmt_sci(k);
        kv.emplace_back("k_list", list);
    }
    kv.emplace_back("t_max", std::to_string(cfg.t_max));
    kv.emplace_back("theta0", fmt_sci(cfg.theta0));
    kv.emplace_back("phi0", fmt_sci(cfg.phi0));
    kv.emplace_back("measures", cfg.measures);
    kv.emplace_back("discord_grid", cfg.discord_grid);
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("n_initial", std::to_string(cfg.n_initial));
    kv.emplace_back("steps", std::to_string(cfg.steps));
    kv.emplace_back("suite", cfg.suite);
    return kv;
}

void write_csv_header(std::ostream& os, const RunConfig& cfg) {
    os << "# ktop " << kToolVersion << "\n";
    for (const auto& [k, v] : config_echo(cfg)) os << "# " << k << " = " << v << "\n";
    os << "# conventions: entropies in nats; Dicke basis |j,j-n>, n = 0..2j "
          "(m descending)\n";
}

/// Measure columns in spec order, restricted to the selection and to what
/// applies at this j.
std::vector<std::string> measure_columns(int two_j, const MeasureSelection& sel) {
    std::vector<std::string> cols;
    if (sel.entropy) {
        cols.push_back("s_vn_1");
        if (two_j >= 3) cols.push_back("s_vn_2");
    }
    if (sel.discord) cols.push_back("discord");
    if (sel.concurrence) cols.push_back("concurrence");
    if (sel.tangle && two_j == 3) cols.push_back("tangle");
    if (sel.q) cols.push_back("q_measure");
    return cols;
}

std::vector<double> measure_values(const CorrelationReport& rep, int two_j,
                                   const MeasureSelection& sel) {
    std::vector<double> vals;
    const auto push = [&vals](const std::optional<double>& v) {
        vals.push_back(v.value_or(0.0));
    };
    if (sel.entropy) {
        push(rep.s_vn_1);
        if (two_j >= 3) push(rep.s_vn_2);
    }
    if (sel.discord) push(rep.discord);
    if (sel.concurrence) push(rep.concurrence);
    if (sel.tangle && two_j == 3) push(rep.three_tangle);
    if (sel.q) push(rep.q_measure);
    return vals;
}

double resolve_single_k(const RunConfig& cfg) {
    if (cfg.k) return *cfg.k;
    if (cfg.r && cfg.s) return RationalKick::reduced(*cfg.r, *cfg.s).value();
    throw input_error("no kick strength given: set k, or r and s");
}

/// The discord measured side is qubit A by definition; for the symmetric
/// states handled here the choice is immaterial. Checked once per run.
void discord_side_self_test(const DiscordOptions& opts) {
    const SpinQuantum j(2);
    const auto ev = evolve({j, 2.1, Precession::quarters(1)},
                           coherent_state(j, 2.5, 1.1), 3);
    const auto rho4 = symmetric_to_qubit_basis(dicke_rdm(ev.states.back(), 2));
    CMatrix swapped = rho4.rho;
    swapped.row(1).swap(swapped.row(2));
    swapped.col(1).swap(swapped.col(2));
    const double da = quantum_discord(rho4, opts);
    const double db = quantum_discord({2, RdmBasis::standard_qubit, swapped}, opts);
    if (std::abs(da - db) > 1e-6)
        throw numerical_error("discord measured-side self-test failed", da - db);
}

int run_evolve(const RunConfig& cfg) {
    const SpinQuantum j(cfg.two_j);
    const Precession p = parse_precession(cfg.p_text);
    const MeasureSelection sel = parse_measures(cfg.measures);
    const DiscordOptions opts = parse_discord_grid(cfg.discord_grid);
    const double k = resolve_single_k(cfg);
    if (cfg.t_max < 0) throw input_error("t_max must be >= 0");
    if (sel.discord) discord_side_self_test(opts);

    const auto ev = evolve({j, k, p}, coherent_state(j, cfg.theta0, wrap_phi(cfg.phi0)),
                           cfg.t_max);
    const auto cols = measure_columns(cfg.two_j, sel);

    Output out(cfg.out);
    auto& os = out.stream();
    write_csv_header(os, cfg);
    os << "t";
    for (const auto& c : cols) os << "," << c;
    os << "\n";
    for (std::size_t t = 0; t < ev.states.size(); ++t) {
        const auto rep = report(ev.states[t], opts, sel);
        os << t;
        for (double v : measure_values(rep, cfg.two_j, sel)) os << "," << fmt_sci(v);
        os << "\n";
    }
    return 0;
}

int run_sweep(const RunConfig& cfg) {
    const SpinQuantum j(cfg.two_j);
    const Precession p = parse_precession(cfg.p_text);
    const MeasureSelection sel = parse_measures(cfg.measures);
    const DiscordOptions opts = parse_discord_grid(cfg.discord_grid);
    if (cfg.t_max < 1) throw input_error("sweep: t_max must be >= 1");
    if (sel.discord) discord_side_self_test(opts);

    std::vector<std::pair<long, double>> grid;  // (r, k)
    if (cfg.r_max) {
        if (!cfg.s) throw input_error("sweep: r_max requires s (grid k = r*pi/s)");
        if (*cfg.r_max < 0) throw input_error("sweep: r_max must be >= 0");
        for (long r = 0; r <= *cfg.r_max; ++r)
            grid.emplace_back(r, static_cast<double>(r) * kPi / static_cast<double>(*cfg.s));
    } else {
        for (std::size_t i = 0; i < cfg.k_list.size(); ++i)
            grid.emplace_back(static_cast<long>(i), cfg.k_list[i]);
    }
    if (grid.empty()) throw input_error("sweep: empty k grid");

    const DickeVector psi0 = coherent_state(j, cfg.theta0, wrap_phi(cfg.phi0));
    const auto rows_for = [&](std::size_t idx) {
        const auto ev = evolve({j, grid[idx].second, p}, psi0, cfg.t_max);
        std::vector<std::vector<double>> rows;
        rows.reserve(ev.states.size());
        for (const auto& state : ev.states)
            rows.push_back(measure_values(report(state, opts, sel), cfg.two_j, sel));
        return rows;
    };
    const auto all_rows = parallel_map<std::vector<std::vector<double>>>(
        grid.size(), rows_for);

    Output out(cfg.out);
    auto& os = out.stream();
    write_csv_header(os, cfg);
    os << "r,k,t";
    for (const auto& c : measure_columns(cfg.two_j, sel)) os << "," << c;
    os << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t t = 0; t < all_rows[i].size(); ++t) {
            os << grid[i].first << "," << fmt_sci(grid[i].second) << "," << t;
            for (double v : all_rows[i][t]) os << "," << fmt_sci(v);
            os << "\n";
        }
    return 0;
}

int run_classical(const RunConfig& cfg) {
    const Precession p = parse_precession(cfg.p_text);
    const double k = resolve_single_k(cfg);
    const auto cloud = phase_portrait(k, p.value, cfg.n_initial, cfg.steps, cfg.seed);

    Output out(cfg.out);
    auto& os = out.stream();
    write_csv_header(os, cfg);
    os << "traj_id,step,theta,phi\n";
    for (const auto& pt : cloud)
        os << pt.traj_id << "," << pt.step << "," << fmt_sci(pt.theta) << ","
           << fmt_sci(pt.phi) << "\n";
    return 0;
}

int run_verify(const RunConfig& cfg) {
    const DiscordOptions opts = parse_discord_grid(cfg.discord_grid);
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw input_error("verify: unknown suite '" + cfg.suite + "'");
    discord_side_self_test(opts);

    const auto checks = run_suite(cfg.suite, opts);

    nlohmann::json meta;
    meta["tool"] = "ktop";
    meta["version"] = kToolVersion;
    for (const auto& [k, v] : config_echo(cfg)) meta[k] = v;
    meta["conventions"] =
        "entropies in nats; Dicke basis |j,j-n>, n = 0..2j (m descending)";

    nlohmann::json out_checks = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["kind"] = c.kind;
        jc["label"] = c.label;
        jc["pass"] = c.pass;
        if (c.partial) jc["partial_pass"] = true;
        jc["max_deviation"] = c.max_deviation;
        jc["tolerance"] = c.tolerance;
        jc["worst_t"] = c.worst_t;
        jc["worst_measure"] = c.worst_measure;
        nlohmann::json detail;
        for (const auto& [k, v] : c.detail) {
            if (detail.contains(k)) {  // repeated keys (e.g. "passing") become lists
                if (!detail[k].is_array()) detail[k] = nlohmann::json::array({detail[k]});
                detail[k].push_back(v);
            } else {
                detail[k] = v;
            }
        }
        jc["detail"] = detail;
        out_checks.push_back(jc);
        all_pass = all_pass && c.pass;
    }

    nlohmann::json report;
    report["meta"] = meta;
    report["checks"] = out_checks;
    report["all_pass"] = all_pass;

    Output out(cfg.out);
    out.stream() << report.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw input_error("config " + path + ":" + std::to_string(lineno) +
                              ": expected key=value");
        apply_override(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "two_j") {
        cfg.two_j = static_cast<int>(parse_long(key, value));
    } else if (key == "p") {
        parse_precession(value);  // validate now
        cfg.p_text = value;
    } else if (key == "k") {
        cfg.k = parse_double(key, value);
    } else if (key == "r") {
        cfg.r = parse_long(key, value);
    } else if (key == "s") {
        cfg.s = parse_long(key, value);
    } else if (key == "r_max") {
        cfg.r_max = parse_long(key, value);
    } else if (key == "k_list") {
        cfg.k_list.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            cfg.k_list.push_back(parse_double(key, trim(item)));
    } else if (key == "t_max") {
        cfg.t_max = static_cast<int>(parse_long(key, value));
    } else if (key == "theta0") {
        cfg.theta0 = parse_double(key, value);
    } else if (key == "phi0") {
        cfg.phi0 = parse_double(key, value);
    } else if (key == "measures") {
        parse_measures(value);
        cfg.measures = value;
    } else if (key == "discord_grid") {
        parse_discord_grid(value);
        cfg.discord_grid = value;
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "n_initial") {
        cfg.n_initial = static_cast<int>(parse_long(key, value));
    } else if (key == "steps") {
        cfg.steps = static_cast<int>(parse_long(key, value));
    } else if (key == "suite") {
        cfg.suite = value;
    } else {
        throw input_error("config: unknown key '" + key + "'");
    }
}

Precession parse_precession(const std::string& text) {
    if (text == "0") return Precession::quarters(0);
    if (text == "pi/2") return Precession::quarters(1);
    if (text == "pi") return Precession::quarters(2);
    if (text == "3pi/2") return Precession::quarters(3);
    if (text == "2pi") return Precession::quarters(4);
    return Precession::free_angle(parse_double("p", text));
}

MeasureSelection parse_measures(const std::string& text) {
    if (text == "all") return MeasureSelection::all();
    MeasureSelection sel{false, false, false, false, false};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string name = trim(item);
        if (name == "entropy") {
            sel.entropy = true;
        } else if (name == "discord") {
            sel.discord = true;
        } else if (name == "concurrence") {
            sel.concurrence = true;
        } else if (name == "tangle") {
            sel.tangle = true;
        } else if (name == "q") {
            sel.q = true;
        } else {
            throw input_error("unknown measure '" + name + "'");
        }
    }
    if (!sel.entropy && !sel.discord && !sel.concurrence && !sel.tangle && !sel.q)
        throw input_error("empty measure selection");
    return sel;
}

DiscordOptions parse_discord_grid(const std::string& text) {
    if (text == "coarse") return DiscordOptions::coarse();
    if (text == "fine") return DiscordOptions::fine();
    throw input_error("discord_grid must be 'coarse' or 'fine'");
}

int run_command(const RunConfig& cfg) {
    if (cfg.command == "evolve") return run_evolve(cfg);
    if (cfg.command == "sweep") return run_sweep(cfg);
    if (cfg.command == "classical") return run_classical(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    throw input_error("unknown command '" + cfg.command + "'");
}

}  // namespace ktop
