#include "ktop/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ktop/errors.hpp"

namespace ktop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEigClamp = 1e-10;

double xlnx(double x) {
    return x > 0.0 ? x * std::log(x) : 0.0;
}

// Entropy of a Hermitian 2x2 with unit trace, via the closed-form spectrum.
double entropy_2x2(const Eigen::Matrix2cd& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = 0.5 * std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m(0, 1)));
    const double mid = 0.5 * (a + d);
    const double lp = std::clamp(mid + half_gap, 0.0, 1.0);
    const double lm = std::clamp(mid - half_gap, 0.0, 1.0);
    return -xlnx(lp) - xlnx(lm);
}

double entropy_from_eigenvalues(const RVector& lam, double clamp_tol) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double v = lam[i];
        if (v < -clamp_tol)
            throw input_error("entropy: eigenvalue below PSD tolerance: " +
                              std::to_string(v));
        h -= xlnx(std::max(0.0, v));
    }
    return std::max(0.0, h);
}

Eigen::Matrix4cd to_fixed4(const CMatrix& rho) {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) m(i, l) = rho(i, l);
    return m;
}

// Conditional entropy sum_i p_i H(rho_{B|i}) for a projective measurement on
// qubit A along (theta, phi). Basis index is 2a + b, a/b = 0 up, 1 down.
double conditional_entropy(const Eigen::Matrix4cd& rho, double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex eip = std::polar(1.0, phi);
    const Eigen::Vector2cd dirs[2] = {{Complex(c, 0.0), s * eip},
                                      {Complex(s, 0.0), -c * eip}};

    double total = 0.0;
    for (const auto& v : dirs) {
        Eigen::Matrix2cd m;
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) {
                Complex acc{0.0, 0.0};
                for (int a = 0; a < 2; ++a)
                    for (int ap = 0; ap < 2; ++ap)
                        acc += std::conj(v[a]) * v[ap] * rho(2 * a + b, 2 * ap + bp);
                m(b, bp) = acc;
            }
        const double p = m(0, 0).real() + m(1, 1).real();
        if (p > 1e-14) total += p * entropy_2x2(m / p);
    }
    return total;
}

struct NelderMeadResult {
    double value = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    bool converged = false;
};

template <typename F>
NelderMeadResult nelder_mead_2d(const F& f, double t0, double p0, double dt, double dp,
                                double tol, int max_iters) {
    struct Vertex {
        double t, p, f;
    };
    std::array<Vertex, 3> simplex{{{t0, p0, f(t0, p0)},
                                   {t0 + dt, p0, f(t0 + dt, p0)},
                                   {t0, p0 + dp, f(t0, p0 + dp)}}};
    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    bool converged = false;
    for (int it = 0; it < max_iters; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        if (simplex[2].f - simplex[0].f < tol) {
            converged = true;
            break;
        }
        const double ct = 0.5 * (simplex[0].t + simplex[1].t);
        const double cp = 0.5 * (simplex[0].p + simplex[1].p);
        const double rt = ct + (ct - simplex[2].t);
        const double rp = cp + (cp - simplex[2].p);
        const double fr = f(rt, rp);
        if (fr < simplex[0].f) {
            const double et = ct + 2.0 * (ct - simplex[2].t);
            const double ep = cp + 2.0 * (cp - simplex[2].p);
            const double fe = f(et, ep);
            simplex[2] = fe < fr ? Vertex{et, ep, fe} : Vertex{rt, rp, fr};
        } else if (fr < simplex[1].f) {
            simplex[2] = {rt, rp, fr};
        } else {
            const double xt = ct + 0.5 * (simplex[2].t - ct);
            const double xp = cp + 0.5 * (simplex[2].p - cp);
            const double fx = f(xt, xp);
            if (fx < simplex[2].f) {
                simplex[2] = {xt, xp, fx};
            } else {
                for (int i = 1; i < 3; ++i) {
                    simplex[i].t = simplex[0].t + 0.5 * (simplex[i].t - simplex[0].t);
                    simplex[i].p = simplex[0].p + 0.5 * (simplex[i].p - simplex[0].p);
                    simplex[i].f = f(simplex[i].t, simplex[i].p);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return {simplex[0].f, simplex[0].t, simplex[0].p, converged};
}

void require_two_qubit_density(const ReducedDensityMatrix& rho) {
    if (rho.basis != RdmBasis::standard_qubit || rho.q != 2 || rho.rho.rows() != 4)
        throw input_error("expected a 4x4 two-qubit density matrix in the standard basis");
    check_density_matrix(rho.rho);
}

}  // namespace

std::array<CMatrix, 2> MeasurementSetting::projectors() const {
    CMatrix n_sigma(2, 2);
    n_sigma << std::cos(theta), std::sin(theta) * std::polar(1.0, -phi),
        std::sin(theta) * std::polar(1.0, phi), -std::cos(theta);
    const CMatrix id = CMatrix::Identity(2, 2);
    return {0.5 * (id + n_sigma), 0.5 * (id - n_sigma)};
}

double von_neumann_entropy(const ReducedDensityMatrix& rho) {
    check_density_matrix(rho.rho);
    const auto eig = hermitian_eigensystem(rho.rho);
    const double h = entropy_from_eigenvalues(eig.eigenvalues, kEigClamp);
    return h;
}

RVector schmidt_decompose(const QubitExpansion& psi, const std::vector<int>& side_a) {
    if (side_a.empty() || static_cast<int>(side_a.size()) >= psi.n_qubits)
        throw input_error("schmidt_decompose: bipartition sides must be nonempty");
    const auto rdm = brute_force_rdm(psi, side_a);
    auto eig = hermitian_eigensystem(rdm.rho);
    RVector lam = eig.eigenvalues.reverse();
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::max(0.0, lam[i]);
    return lam;
}

double concurrence(const ReducedDensityMatrix& rho4) {
    require_two_qubit_density(rho4);

    CMatrix yy = CMatrix::Zero(4, 4);  // sigma_y x sigma_y in {11,10,01,00}
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const CMatrix rho_tilde = yy * rho4.rho.conjugate() * yy;
    const CMatrix root = sqrt_psd(rho4.rho);
    const auto eig = hermitian_eigensystem(root * rho_tilde * root);

    // eigenvalues ascending; sqrt and fold descending
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i)
        r[i] = std::sqrt(std::max(0.0, eig.eigenvalues[3 - i]));
    return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

double pure_symmetric_concurrence(Complex a, Complex b, Complex c) {
    const double norm = std::norm(a) + std::norm(b) + std::norm(c);
    if (std::abs(norm - 1.0) > 1e-8)
        throw input_error("pure_symmetric_concurrence: state is not normalized");
    return 2.0 * std::abs(0.5 * b * b - a * c);
}

double three_tangle(const DickeVector& psi) {
    if (psi.j.two_j != 3)
        throw input_error("three_tangle: requires exactly three qubits (2j = 3)");
    const auto rho1 = dicke_rdm(psi, 1);
    const double c2_1_23 = 4.0 * rho1.rho.determinant().real();
    const double c12 = concurrence(symmetric_to_qubit_basis(dicke_rdm(psi, 2)));
    return std::clamp(c2_1_23 - 2.0 * c12 * c12, 0.0, 1.0);
}

double q_measure(const DickeVector& psi) {
    if (psi.j.two_j < 2) throw input_error("q_measure: requires 2j >= 2");
    const auto rho1 = dicke_rdm(psi, 1);
    const double purity = (rho1.rho * rho1.rho).trace().real();
    return std::clamp(2.0 * (1.0 - purity), 0.0, 1.0);
}

DiscordResult quantum_discord_detail(const ReducedDensityMatrix& rho4,
                                     const DiscordOptions& opts) {
    require_two_qubit_density(rho4);
    const Eigen::Matrix4cd rho = to_fixed4(rho4.rho);

    Eigen::Matrix2cd rho_a;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            rho_a(a, ap) = rho(2 * a + 0, 2 * ap + 0) + rho(2 * a + 1, 2 * ap + 1);

    const double h_a = entropy_2x2(rho_a);
    const auto eig_ab = hermitian_eigensystem(rho4.rho);
    const double h_ab = entropy_from_eigenvalues(eig_ab.eigenvalues, kEigClamp);

    const auto objective = [&rho](double t, double p) {
        return conditional_entropy(rho, t, p);
    };

    // Deterministic hemisphere grid; antipodal settings are equivalent.
    struct Cell {
        double f, t, p;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(opts.grid_theta) * opts.grid_phi);
    for (int i = 0; i < opts.grid_theta; ++i) {
        const double t = 0.5 * kPi * i / (opts.grid_theta - 1);
        for (int l = 0; l < opts.grid_phi; ++l) {
            const double p = 2.0 * kPi * l / opts.grid_phi;
            cells.push_back({objective(t, p), t, p});
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.f < b.f; });

    const double dt = 0.5 * (0.5 * kPi) / (opts.grid_theta - 1);
    const double dp = 0.5 * (2.0 * kPi) / opts.grid_phi;

    DiscordResult result;
    result.value = cells.front().f;
    result.minimizer = {cells.front().t, cells.front().p};
    bool all_converged = true;
    const int seeds = std::min<int>(opts.refine_seeds, static_cast<int>(cells.size()));
    for (int i = 0; i < seeds; ++i) {
        const auto nm = nelder_mead_2d(objective, cells[i].t, cells[i].p, dt, dp,
                                       opts.refine_tol, opts.max_refine_iters);
        all_converged = all_converged && nm.converged;
        if (nm.value < result.value) {
            result.value = nm.value;
            result.minimizer = {nm.theta, nm.phi};
        }
    }

    double discord = h_a - h_ab + result.value;
    if (discord < 0.0) {
        if (discord < -1e-7)
            throw numerical_error("quantum_discord: negative beyond tolerance", discord);
        discord = 0.0;
    }
    result.value = discord;
    result.converged = all_converged;
    if (!all_converged)
        throw numerical_error("quantum_discord: refinement did not converge", discord);
    return result;
}

double quantum_discord(const ReducedDensityMatrix& rho4, const DiscordOptions& opts) {
    return quantum_discord_detail(rho4, opts).value;
}

CorrelationReport report(const DickeVector& psi, const DiscordOptions& opts,
                         const MeasureSelection& select) {
    if (psi.j.two_j < 2)
        throw input_error("report: correlation measures require 2j >= 2");

    CorrelationReport rep;
    if (select.entropy) {
        rep.s_vn_1 = von_neumann_entropy(dicke_rdm(psi, 1));
        if (psi.j.two_j >= 3) rep.s_vn_2 = von_neumann_entropy(dicke_rdm(psi, 2));
    }
    if (select.discord || select.concurrence) {
        const auto rho4 = symmetric_to_qubit_basis(dicke_rdm(psi, 2));
        if (select.discord) rep.discord = quantum_discord(rho4, opts);
        if (select.concurrence) rep.concurrence = concurrence(rho4);
    }
    if (select.tangle && psi.j.two_j == 3) rep.three_tangle = three_tangle(psi);
    if (select.q) rep.q_measure = q_measure(psi);

    for (const double* v : {rep.concurrence ? &*rep.concurrence : nullptr,
                            rep.three_tangle ? &*rep.three_tangle : nullptr,
                            rep.q_measure ? &*rep.q_measure : nullptr})
        if (v && *v > 1.0 + 1e-10)
            throw numerical_error("report: measure exceeds its upper bound", *v);
    return rep;
}

std::vector<std::pair<std::string, double>> report_differences(
    const CorrelationReport& a, const CorrelationReport& b) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto diff = [&](const std::optional<double>& x, const std::optional<double>& y) {
        if (x.has_value() != y.has_value()) return inf;
        if (!x) return 0.0;
        return std::abs(*x - *y);
    };
    return {{"s_vn_1", diff(a.s_vn_1, b.s_vn_1)},
            {"s_vn_2", diff(a.s_vn_2, b.s_vn_2)},
            {"discord", diff(a.discord, b.discord)},
            {"concurrence", diff(a.concurrence, b.concurrence)},
            {"three_tangle", diff(a.three_tangle, b.three_tangle)},
            {"q_measure", diff(a.q_measure, b.q_measure)}};
}

std::pair<double, std::string> report_max_difference(const CorrelationReport& a,
                                                     const CorrelationReport& b) {
    double worst = -1.0;
    std::string field;
    for (const auto& [name, d] : report_differences(a, b)) {
        if (d > worst) {
            worst = d;
            field = name;
        }
    }
    return {worst, field};
}

}  // namespace ktop
