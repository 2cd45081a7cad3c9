#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktop/classical_map.hpp"
#include "ktop/dynamics.hpp"
#include "ktop/measures.hpp"

namespace ktop {

/// Outcome of one mechanical verification. `detail` carries the parameter
/// echo and per-candidate/per-field extras as key-value pairs.
struct PeriodicityCheck {
    std::string kind;     // k-period | time-period | mirror-A | mirror-B |
                          // reflection | lu-equivalence | classical
    std::string label;    // short parameter summary
    bool pass = false;
    bool partial = false; // mirrors: concurrence matched, another field did not
    double max_deviation = 0.0;
    int worst_t = -1;
    std::string worst_measure;
    double tolerance = 0.0;
    std::vector<std::pair<std::string, std::string>> detail;
};

/// Correlations at k and k + 2j*pi must agree at every t. For 2j = 1 there
/// are no correlations; the states are compared up to a global phase instead.
PeriodicityCheck verify_k_periodicity(SpinQuantum j, const Precession& p, double k,
                                      double theta0, double phi0, int t_max,
                                      double tol,
                                      const DiscordOptions& opts = DiscordOptions::coarse());

/// j = 1 time period of the correlation measures for k = r*pi/s:
/// p in {pi/2, 3pi/2}: T = 4s for odd r, else 2s;
/// p in {0, pi, 2pi}:  T = 2s for odd r, else s.
/// Requires a symbolic p; anything else is an input error.
long predicted_time_period(const Precession& p, const RationalKick& kick);

/// The closed-form value of U^T for j = 1 at the predicted period
/// (identity, diag(-1,1,-1), or the antidiagonal local-unitary form).
CMatrix expected_period_power(const Precession& p, const RationalKick& kick);

/// Checks report(t) == report(t+T) for t = 0..cycles*T and that U^T matches
/// expected_period_power at matrix_tol. j = 1 by construction.
PeriodicityCheck verify_time_periodicity(const Precession& p, const RationalKick& kick,
                                         const Angles& initial, int cycles, double tol,
                                         const DiscordOptions& opts = DiscordOptions::coarse(),
                                         double matrix_tol = 1e-10);

/// Appendix mirror identities at p = pi, j = 1, separable initial state:
/// odd r: report(s+l) == report(s-l), 1 <= l <= s-1;
/// even r: report((s-2l-1)/2) == report((s+2l+1)/2), 1 <= l <= (s-3)/2.
PeriodicityCheck verify_mirror_identities(const RationalKick& kick, const Angles& initial,
                                          double tol,
                                          const DiscordOptions& opts = DiscordOptions::coarse());
/// Same, for an explicit initial state; non-separable input (|a c - b^2/2|
/// beyond 1e-8) is an input error.
PeriodicityCheck verify_mirror_identities(const RationalKick& kick,
                                          const DickeVector& initial, double tol,
                                          const DiscordOptions& opts = DiscordOptions::coarse());

/// Evolves coherent(theta0, phi0) at k1 and four candidate initial-state
/// transforms at k2 = 2j*pi - k1, and records which candidates reproduce the
/// full correlation time series.
struct ReflectionCheck {
    PeriodicityCheck check;
    std::vector<std::string> passing_transforms;
};
ReflectionCheck verify_reflection(SpinQuantum j, const Precession& p, double k1,
                                  const Angles& initial, int t_max, double tol,
                                  const DiscordOptions& opts = DiscordOptions::coarse());

/// Largest kick strength with unique phase-space signatures: j*pi.
double k_max(SpinQuantum j);

/// Relevant experimental timescale min(tau_coh, T).
double experiment_window(double tau_coh, long period);

/// Optional scan (off by default in the suites): smallest T <= max_period
/// with report(t) == report(t+T) for t = 0..max_period, or nothing.
std::optional<long> scan_time_period(SpinQuantum j, const Precession& p, double k,
                                     const Angles& initial, int max_period, double tol,
                                     const DiscordOptions& opts = DiscordOptions::coarse());

/// Named suites: k-period, time-period, mirrors, reflection, lu, classical,
/// all (everything above), scan (the optional j > 1 period scan).
/// Checks within a suite run concurrently and merge in declaration order.
std::vector<PeriodicityCheck> run_suite(const std::string& name,
                                        const DiscordOptions& opts = DiscordOptions::coarse());
std::vector<std::string> suite_names();

}  // namespace ktop
