#include "ktop/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "ktop/errors.hpp"
#include "ktop/parallel.hpp"

namespace ktop {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_label(const char* fmt, ...) {
    char buf[160];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

std::vector<CorrelationReport> reports_along(const EvolutionRecord& ev,
                                             const DiscordOptions& opts) {
    std::vector<CorrelationReport> out;
    out.reserve(ev.states.size());
    for (const auto& state : ev.states) out.push_back(report(state, opts));
    return out;
}

struct SeriesDeviation {
    double max_dev = 0.0;
    int worst_t = -1;
    std::string worst_field;
};

SeriesDeviation compare_series(const std::vector<CorrelationReport>& a,
                               const std::vector<CorrelationReport>& b) {
    SeriesDeviation dev;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t t = 0; t < n; ++t) {
        const auto [d, field] = report_max_difference(a[t], b[t]);
        if (d > dev.max_dev) {
            dev.max_dev = d;
            dev.worst_t = static_cast<int>(t);
            dev.worst_field = field;
        }
    }
    return dev;
}

}  // namespace

PeriodicityCheck verify_k_periodicity(SpinQuantum j, const Precession& p, double k,
                                      double theta0, double phi0, int t_max, double tol,
                                      const DiscordOptions& opts) {
    if (t_max < 1) throw input_error("verify_k_periodicity: t_max must be >= 1");
    const double kappa = j.two_j * kPi;
    const DickeVector psi0 = coherent_state(j, theta0, wrap_phi(phi0));
    const auto ev1 = evolve({j, k, p}, psi0, t_max);
    const auto ev2 = evolve({j, k + kappa, p}, psi0, t_max);

    PeriodicityCheck check;
    check.kind = "k-period";
    check.label = fmt_label("2j=%d p=%.6g k=%.6g theta0=%.4g phi0=%.4g", j.two_j,
                            p.value, k, theta0, phi0);
    check.tolerance = tol;
    check.detail = {{"two_j", std::to_string(j.two_j)},
                    {"p", fmt_double(p.value)},
                    {"k", fmt_double(k)},
                    {"kappa", fmt_double(kappa)},
                    {"theta0", fmt_double(theta0)},
                    {"phi0", fmt_double(phi0)},
                    {"t_max", std::to_string(t_max)}};

    if (j.two_j == 1) {
        // single qubit: no correlations defined; trivially a global-phase check
        for (int t = 0; t <= t_max; ++t) {
            const double r = phase_aligned_residual(ev1.states[t].amplitudes,
                                                    ev2.states[t].amplitudes);
            if (r > check.max_deviation) {
                check.max_deviation = r;
                check.worst_t = t;
            }
        }
        check.worst_measure = "state-phase";
    } else {
        const auto dev = compare_series(reports_along(ev1, opts), reports_along(ev2, opts));
        check.max_deviation = dev.max_dev;
        check.worst_t = dev.worst_t;
        check.worst_measure = dev.worst_field;
    }
    check.pass = check.max_deviation <= tol;
    return check;
}

long predicted_time_period(const Precession& p, const RationalKick& kick) {
    if (!p.quarter_turns || *p.quarter_turns < 0 || *p.quarter_turns > 4)
        throw input_error("predicted_time_period: p must be a symbolic multiple of "
                          "pi/2 in {0, pi/2, pi, 3pi/2, 2pi}");
    const bool odd_r = kick.r % 2 != 0;
    switch (*p.quarter_turns) {
        case 1:
        case 3:
            return odd_r ? 4 * kick.s : 2 * kick.s;
        case 0:
        case 2:
        case 4:
            return odd_r ? 2 * kick.s : kick.s;
    }
    throw input_error("predicted_time_period: unsupported p");
}

CMatrix expected_period_power(const Precession& p, const RationalKick& kick) {
    if (!p.quarter_turns || *p.quarter_turns < 0 || *p.quarter_turns > 4)
        throw input_error("expected_period_power: p must be symbolic");

    CMatrix m = CMatrix::Zero(3, 3);
    const auto antidiag = [&](double corner) {
        m(0, 2) = corner;
        m(2, 0) = corner;
        m(1, 1) = -1.0;
    };
    const bool odd_r = kick.r % 2 != 0;
    switch (*p.quarter_turns) {
        case 1:
        case 3:
            if (odd_r || kick.r % 4 == 0) {
                antidiag(1.0);  // U^{4s} for odd r, U^{2s} for r = 0 mod 4
            } else {
                m = CMatrix::Identity(3, 3);  // r = 2 mod 4
            }
            return m;
        case 2:
            if (odd_r) {
                m.diagonal() << -1.0, 1.0, -1.0;  // U^{2s} = parity
            } else {
                antidiag(kick.r % 4 == 0 ? 1.0 : -1.0);  // U^s, corner i^r
            }
            return m;
        case 0:
        case 4:
            if (odd_r) {
                m.diagonal() << -1.0, 1.0, -1.0;
            } else if (kick.r % 4 == 0) {
                m = CMatrix::Identity(3, 3);
            } else {
                m.diagonal() << -1.0, 1.0, -1.0;
            }
            return m;
    }
    throw input_error("expected_period_power: unsupported p");
}

PeriodicityCheck verify_time_periodicity(const Precession& p, const RationalKick& kick,
                                         const Angles& initial, int cycles, double tol,
                                         const DiscordOptions& opts, double matrix_tol) {
    if (cycles < 1) throw input_error("verify_time_periodicity: cycles must be >= 1");
    const long period = predicted_time_period(p, kick);
    const SpinQuantum j(2);
    const FloquetParams params{j, kick.value(), p};
    const int t_total = static_cast<int>(period) * (cycles + 1);

    const auto ev = evolve(params, coherent_state(j, initial.theta, wrap_phi(initial.phi)),
                           t_total);
    const auto reports = reports_along(ev, opts);

    PeriodicityCheck check;
    check.kind = "time-period";
    check.label = fmt_label("p=%.6g k=%ldpi/%ld T=%ld", p.value, kick.r, kick.s, period);
    check.tolerance = tol;

    for (int t = 0; t + period < static_cast<int>(reports.size()); ++t) {
        const auto [d, field] = report_max_difference(reports[t], reports[t + period]);
        if (d > check.max_deviation) {
            check.max_deviation = d;
            check.worst_t = t;
            check.worst_measure = field;
        }
    }

    const CMatrix u = build_floquet(params);
    CMatrix u_pow = CMatrix::Identity(3, 3);
    for (long i = 0; i < period; ++i) u_pow = u * u_pow;
    const double matrix_dev = max_abs_diff(u_pow, expected_period_power(p, kick));

    check.detail = {{"p", fmt_double(p.value)},
                    {"r", std::to_string(kick.r)},
                    {"s", std::to_string(kick.s)},
                    {"T", std::to_string(period)},
                    {"cycles", std::to_string(cycles)},
                    {"matrix_deviation", fmt_double(matrix_dev)},
                    {"matrix_tol", fmt_double(matrix_tol)}};
    check.pass = check.max_deviation <= tol && matrix_dev <= matrix_tol;
    return check;
}

PeriodicityCheck verify_mirror_identities(const RationalKick& kick,
                                          const DickeVector& initial, double tol,
                                          const DiscordOptions& opts) {
    if (initial.j.two_j != 2)
        throw input_error("verify_mirror_identities: requires j = 1 (two qubits)");
    const Complex a = initial.amplitudes[0];
    const Complex b = initial.amplitudes[1];
    const Complex c = initial.amplitudes[2];
    if (std::abs(a * c - 0.5 * b * b) > 1e-8)
        throw input_error("verify_mirror_identities: initial state is not separable "
                          "(requires a c = b^2/2)");

    const bool odd_r = kick.r % 2 != 0;
    std::vector<std::pair<int, int>> pairs;
    int t_max = 0;
    if (odd_r) {
        for (long l = 1; l <= kick.s - 1; ++l)
            pairs.emplace_back(static_cast<int>(kick.s + l), static_cast<int>(kick.s - l));
        t_max = static_cast<int>(2 * kick.s);
    } else {
        for (long l = 1; 2 * l + 3 <= kick.s; ++l)
            pairs.emplace_back(static_cast<int>((kick.s - 2 * l - 1) / 2),
                               static_cast<int>((kick.s + 2 * l + 1) / 2));
        t_max = static_cast<int>(kick.s);
    }

    PeriodicityCheck check;
    check.kind = odd_r ? "mirror-A" : "mirror-B";
    check.label = fmt_label("p=pi k=%ldpi/%ld pairs=%zu", kick.r, kick.s, pairs.size());
    check.tolerance = tol;
    check.detail = {{"r", std::to_string(kick.r)},
                    {"s", std::to_string(kick.s)},
                    {"pairs", std::to_string(pairs.size())}};

    if (pairs.empty()) {
        check.pass = true;
        check.detail.emplace_back("note", "vacuous l-range");
        return check;
    }

    const auto ev = evolve({initial.j, kick.value(), Precession::quarters(2)}, initial,
                           t_max);
    const auto reports = reports_along(ev, opts);

    double worst_concurrence = 0.0;
    for (const auto& [t1, t2] : pairs) {
        for (const auto& [field, d] : report_differences(reports[t1], reports[t2])) {
            if (field == "concurrence") worst_concurrence = std::max(worst_concurrence, d);
            if (d > check.max_deviation) {
                check.max_deviation = d;
                check.worst_t = t1;
                check.worst_measure = field;
            }
        }
    }
    check.pass = check.max_deviation <= tol;
    check.partial = !check.pass && worst_concurrence <= tol;
    check.detail.emplace_back("worst_concurrence_deviation", fmt_double(worst_concurrence));
    return check;
}

PeriodicityCheck verify_mirror_identities(const RationalKick& kick, const Angles& initial,
                                          double tol, const DiscordOptions& opts) {
    const SpinQuantum j(2);
    return verify_mirror_identities(
        kick, coherent_state(j, initial.theta, wrap_phi(initial.phi)), tol, opts);
}

ReflectionCheck verify_reflection(SpinQuantum j, const Precession& p, double k1,
                                  const Angles& initial, int t_max, double tol,
                                  const DiscordOptions& opts) {
    if (j.two_j < 2)
        throw input_error("verify_reflection: correlation measures require 2j >= 2");
    if (k1 < -1e-12 || k1 > j.j() * kPi + 1e-12)
        throw input_error("verify_reflection: k1 must lie in [0, j*pi]");
    const double k2 = j.two_j * kPi - k1;

    const double th = initial.theta;
    const double ph = wrap_phi(initial.phi);
    const std::vector<std::pair<std::string, Angles>> candidates = {
        {"theta->pi-theta", {kPi - th, ph}},
        {"theta->pi-theta, phi->pi-phi", {kPi - th, wrap_phi(kPi - ph)}},
        {"theta->pi-theta, phi->phi+pi", {kPi - th, wrap_phi(ph + kPi)}},
        {"phi->-phi", {th, wrap_phi(-ph)}},
    };

    const auto base = reports_along(evolve({j, k1, p}, coherent_state(j, th, ph), t_max),
                                    opts);

    ReflectionCheck result;
    result.check.kind = "reflection";
    result.check.label = fmt_label("2j=%d p=%.6g k1=%.6g k2=%.6g", j.two_j, p.value, k1, k2);
    result.check.tolerance = tol;
    result.check.detail = {{"two_j", std::to_string(j.two_j)},
                           {"p", fmt_double(p.value)},
                           {"k1", fmt_double(k1)},
                           {"k2", fmt_double(k2)},
                           {"theta0", fmt_double(th)},
                           {"phi0", fmt_double(ph)},
                           {"t_max", std::to_string(t_max)}};

    double best = std::numeric_limits<double>::infinity();
    for (const auto& [name, angles] : candidates) {
        const auto cand = reports_along(
            evolve({j, k2, p}, coherent_state(j, angles.theta, angles.phi), t_max), opts);
        const auto dev = compare_series(base, cand);
        result.check.detail.emplace_back("candidate[" + name + "]",
                                         fmt_double(dev.max_dev));
        if (dev.max_dev <= tol) result.passing_transforms.push_back(name);
        if (dev.max_dev < best) {
            best = dev.max_dev;
            result.check.worst_t = dev.worst_t;
            result.check.worst_measure = dev.worst_field;
        }
    }
    result.check.max_deviation = best;
    result.check.pass = !result.passing_transforms.empty();
    for (const auto& name : result.passing_transforms)
        result.check.detail.emplace_back("passing", name);
    return result;
}

double k_max(SpinQuantum j) {
    return j.j() * kPi;
}

double experiment_window(double tau_coh, long period) {
    if (!(tau_coh > 0.0)) throw input_error("experiment_window: tau_coh must be > 0");
    return std::min(tau_coh, static_cast<double>(period));
}

std::optional<long> scan_time_period(SpinQuantum j, const Precession& p, double k,
                                     const Angles& initial, int max_period, double tol,
                                     const DiscordOptions& opts) {
    if (max_period < 1) throw input_error("scan_time_period: max_period must be >= 1");
    const auto ev = evolve({j, k, p},
                           coherent_state(j, initial.theta, wrap_phi(initial.phi)),
                           2 * max_period);
    const auto reports = reports_along(ev, opts);
    for (long period = 1; period <= max_period; ++period) {
        bool match = true;
        for (int t = 0; t <= max_period; ++t) {
            if (report_max_difference(reports[t], reports[t + period]).first > tol) {
                match = false;
                break;
            }
        }
        if (match) return period;
    }
    return std::nullopt;
}

namespace {

using CheckFn = std::function<PeriodicityCheck()>;

std::vector<PeriodicityCheck> run_checks(const std::vector<CheckFn>& fns) {
    return parallel_map<PeriodicityCheck>(
        fns.size(), [&fns](std::size_t i) { return fns[i](); });
}

void append_k_period_checks(std::vector<CheckFn>& fns, const DiscordOptions& opts) {
    for (int two_j : {1, 2, 3, 4, 5, 6}) {
        std::mt19937_64 rng(20240100u + static_cast<unsigned>(two_j));
        std::uniform_real_distribution<double> uk(0.0, two_j * kPi);
        std::uniform_real_distribution<double> uth(0.2, kPi - 0.2);
        std::uniform_real_distribution<double> uph(-kPi + 1e-6, kPi);
        for (int rep = 0; rep < 3; ++rep) {
            const double k = uk(rng), th = uth(rng), ph = uph(rng);
            fns.push_back([=] {
                return verify_k_periodicity(SpinQuantum(two_j), Precession::quarters(1),
                                            k, th, ph, 30, 1e-8, opts);
            });
        }
    }
}

void append_time_period_checks(std::vector<CheckFn>& fns, const DiscordOptions& opts) {
    for (int q = 0; q <= 4; ++q)
        for (long s = 1; s <= 8; ++s)
            for (long r = 1; r <= 2 * s; ++r) {
                if (std::gcd(r, s) != 1) continue;
                fns.push_back([=] {
                    return verify_time_periodicity(Precession::quarters(q),
                                                   RationalKick::reduced(r, s),
                                                   Angles{2.5, 1.1}, 1, 1e-8, opts);
                });
            }
}

void append_mirror_checks(std::vector<CheckFn>& fns, const DiscordOptions& opts) {
    for (long s = 1; s <= 9; ++s)
        for (long r = 1; r <= 2 * s; ++r) {
            if (std::gcd(r, s) != 1) continue;
            fns.push_back([=] {
                return verify_mirror_identities(RationalKick::reduced(r, s),
                                                Angles{2.5, 1.1}, 1e-8, opts);
            });
        }
}

void append_reflection_checks(std::vector<CheckFn>& fns, const DiscordOptions& opts) {
    for (int two_j : {2, 3})
        for (double k1 : {0.5, 1.0, 2.0})
            fns.push_back([=] {
                return verify_reflection(SpinQuantum(two_j), Precession::quarters(1), k1,
                                         Angles{2.5, 1.1}, 30, 1e-8, opts)
                    .check;
            });
}

void append_lu_checks(std::vector<CheckFn>& fns) {
    for (int two_j : {2, 3, 4, 5, 6}) {
        fns.push_back([two_j] {
            std::mt19937_64 rng(777000u + static_cast<unsigned>(two_j));
            std::normal_distribution<double> gauss(0.0, 1.0);
            const SpinQuantum j(two_j);
            PeriodicityCheck check;
            check.kind = "lu-equivalence";
            check.label = fmt_label("2j=%d random-states=50", two_j);
            check.tolerance = 1e-12;
            for (int i = 0; i < 50; ++i) {
                CVector a(j.dim());
                for (int n = 0; n < j.dim(); ++n) a[n] = Complex(gauss(rng), gauss(rng));
                a.normalize();
                const auto res = verify_parity_lu_identity(j, DickeVector(j, a));
                if (res.residual > check.max_deviation) {
                    check.max_deviation = res.residual;
                    check.worst_t = i;
                }
            }
            check.worst_measure = "parity-vs-local-unitary";
            check.detail = {{"two_j", std::to_string(two_j)},
                            {"local_unitary",
                             two_j % 2 == 0 ? "tensor-sigma_z" : "global-phase"}};
            check.pass = check.max_deviation <= check.tolerance;
            return check;
        });
    }
}

void append_classical_checks(std::vector<CheckFn>& fns) {
    fns.push_back([] {
        std::mt19937_64 rng(424242u);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_real_distribution<double> uk(-8.0, 8.0);
        const double ps[] = {kPi / 2.0, kPi, 2.0 * kPi, 0.73};
        PeriodicityCheck check;
        check.kind = "classical";
        check.label = "inversion conjugacy, 10^4 random (point, k, p)";
        check.tolerance = 1e-14;
        for (int i = 0; i < 10000; ++i) {
            const double z = u(rng);
            const double phi = kPi * u(rng);
            const double sz = std::sqrt(std::max(0.0, 1.0 - z * z));
            const SpherePoint v{sz * std::cos(phi), sz * std::sin(phi), z};
            const double r = inversion_conjugacy_residual(v, uk(rng), ps[i % 4]);
            if (r > check.max_deviation) {
                check.max_deviation = r;
                check.worst_t = i;
            }
        }
        check.worst_measure = "map-component";
        check.pass = check.max_deviation <= check.tolerance;
        return check;
    });
    fns.push_back([] {
        std::mt19937_64 rng(515151u);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        PeriodicityCheck check;
        check.kind = "classical";
        check.label = "specialized maps vs general map";
        check.tolerance = 1e-12;
        const std::pair<double, SpecialRotation> cases[] = {
            {kPi / 2.0, SpecialRotation::half_pi},
            {kPi, SpecialRotation::pi},
            {2.0 * kPi, SpecialRotation::two_pi}};
        for (int i = 0; i < 1000; ++i) {
            const double z = u(rng);
            const double phi = kPi * u(rng);
            const double sz = std::sqrt(std::max(0.0, 1.0 - z * z));
            const SpherePoint v{sz * std::cos(phi), sz * std::sin(phi), z};
            for (double k : {1.0, 2.0, 3.0, 6.0})
                for (const auto& [p, which] : cases) {
                    const SpherePoint a = map_step(v, k, p);
                    const SpherePoint b = map_step_special(v, k, which);
                    const double r = std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                                               std::abs(a.z - b.z)});
                    if (r > check.max_deviation) {
                        check.max_deviation = r;
                        check.worst_t = i;
                    }
                }
        }
        check.worst_measure = "map-component";
        check.pass = check.max_deviation <= check.tolerance;
        return check;
    });
}

void append_scan_checks(std::vector<CheckFn>& fns, const DiscordOptions& opts) {
    for (int two_j : {3, 4}) {
        fns.push_back([=] {
            PeriodicityCheck check;
            check.kind = "time-period";
            check.label = fmt_label("scan 2j=%d p=pi/2 k=pi/3, periods up to 200", two_j);
            check.tolerance = 1e-8;
            const auto found = scan_time_period(SpinQuantum(two_j), Precession::quarters(1),
                                                kPi / 3.0, Angles{2.5, 1.1}, 200, 1e-8,
                                                opts);
            check.detail = {{"two_j", std::to_string(two_j)},
                            {"found_period", found ? std::to_string(*found) : "none"}};
            check.pass = true;  // informational: reported, not asserted
            check.worst_measure = "scan";
            return check;
        });
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"k-period", "time-period", "mirrors", "reflection", "lu", "classical",
            "all", "scan"};
}

std::vector<PeriodicityCheck> run_suite(const std::string& name,
                                        const DiscordOptions& opts) {
    std::vector<CheckFn> fns;
    if (name == "k-period") {
        append_k_period_checks(fns, opts);
    } else if (name == "time-period") {
        append_time_period_checks(fns, opts);
    } else if (name == "mirrors") {
        append_mirror_checks(fns, opts);
    } else if (name == "reflection") {
        append_reflection_checks(fns, opts);
    } else if (name == "lu") {
        append_lu_checks(fns);
    } else if (name == "classical") {
        append_classical_checks(fns);
    } else if (name == "scan") {
        append_scan_checks(fns, opts);
    } else if (name == "all") {
        append_k_period_checks(fns, opts);
        append_time_period_checks(fns, opts);
        append_mirror_checks(fns, opts);
        append_reflection_checks(fns, opts);
        append_lu_checks(fns);
        append_classical_checks(fns);
    } else {
        throw input_error("run_suite: unknown suite '" + name + "'");
    }
    return run_checks(fns);
}

}  // namespace ktop
