#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ktop/reduction.hpp"

namespace ktop {

/// Projective measurement on one qubit along the Bloch direction
/// (theta_m, phi_m): projectors (I +- n.sigma)/2.
struct MeasurementSetting {
    double theta = 0.0;
    double phi = 0.0;

    std::array<CMatrix, 2> projectors() const;
};

/// Minimizer settings for the discord conditional-entropy search: a
/// deterministic (theta, phi) grid over the Bloch hemisphere followed by
/// Nelder-Mead refinement from the best grid cells.
struct DiscordOptions {
    int grid_theta = 32;
    int grid_phi = 64;
    int refine_seeds = 3;
    double refine_tol = 1e-7;
    int max_refine_iters = 200;

    static DiscordOptions coarse() { return {}; }
    static DiscordOptions fine() { return {128, 256, 5, 1e-9, 400}; }
};

/// -sum lambda ln lambda in nats, eigenvalues clamped at zero.
double von_neumann_entropy(const ReducedDensityMatrix& rho);

/// Schmidt eigenvalues (descending) of a pure state across the bipartition
/// (side_a | rest).
RVector schmidt_decompose(const QubitExpansion& psi, const std::vector<int>& side_a);

/// Wootters concurrence of a two-qubit state in the standard basis, computed
/// through the Hermitian route R = sqrt(sqrt(rho) rho~ sqrt(rho)).
double concurrence(const ReducedDensityMatrix& rho4);

/// 2 |b^2/2 - a c| for the pure symmetric two-qubit state (a, b, c).
double pure_symmetric_concurrence(Complex a, Complex b, Complex c);

/// tau = C^2_{1(23)} - 2 C^2_{12} for a pure three-qubit symmetric state,
/// with C^2_{1(23)} = 4 det rho_1; clamped into [0, 1]. Requires 2j = 3.
double three_tangle(const DickeVector& psi);

/// Meyer-Wallach Q = 2 (1 - Tr rho_1^2), using the symmetric-state shortcut.
double q_measure(const DickeVector& psi);

struct DiscordResult {
    double value = 0.0;
    bool converged = false;
    MeasurementSetting minimizer;
};

/// Quantum discord D(B:A) with projective measurements on qubit A (the
/// first qubit). Throws numerical_error with the best value attached when
/// the refinement does not converge.
double quantum_discord(const ReducedDensityMatrix& rho4,
                       const DiscordOptions& opts = DiscordOptions::coarse());
DiscordResult quantum_discord_detail(const ReducedDensityMatrix& rho4,
                                     const DiscordOptions& opts);

/// Which measures to evaluate; inapplicable ones stay absent regardless.
struct MeasureSelection {
    bool entropy = true;
    bool discord = true;
    bool concurrence = true;
    bool tangle = true;
    bool q = true;

    static MeasureSelection all() { return {}; }
    static MeasureSelection entropy_only() { return {true, false, false, false, false}; }
};

/// The five correlation measures of one state. Fields that do not apply
/// (three_tangle unless 2j = 3, s_vn_2 unless 2j >= 3) are absent.
struct CorrelationReport {
    std::optional<double> s_vn_1;
    std::optional<double> s_vn_2;
    std::optional<double> discord;
    std::optional<double> concurrence;
    std::optional<double> three_tangle;
    std::optional<double> q_measure;
};

CorrelationReport report(const DickeVector& psi,
                         const DiscordOptions& opts = DiscordOptions::coarse(),
                         const MeasureSelection& select = MeasureSelection::all());

/// Per-field absolute differences between two reports. A presence mismatch
/// maps to +infinity for that field.
std::vector<std::pair<std::string, double>> report_differences(
    const CorrelationReport& a, const CorrelationReport& b);

/// Largest entry of report_differences with the field it occurs in.
std::pair<double, std::string> report_max_difference(const CorrelationReport& a,
                                                     const CorrelationReport& b);

}  // namespace ktop
