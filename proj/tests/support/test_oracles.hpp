// Independent oracles used by the tests. These deliberately avoid the
// production code paths they cross-check.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "ktop/dynamics.hpp"
#include "ktop/measures.hpp"
#include "ktop/reduction.hpp"
#include "ktop/spin_algebra.hpp"

namespace ktop::testing {

/// Rotation-operator route to the spin-coherent state:
/// exp(+i phi Jz) exp(-i theta Jy) |j, j>, which carries the relative phases
/// e^{-i(j-m)phi} of the production convention (the e^{-i phi Jz} variant
/// gives the conjugate convention, reached here via phi -> -phi).
inline CVector rotation_oracle_coherent(SpinQuantum j, double theta, double phi) {
    CVector top = CVector::Zero(j.dim());
    top[0] = 1.0;
    CVector rotated = rotation_exp(j, theta) * top;
    for (int n = 0; n < j.dim(); ++n)
        rotated[n] *= std::polar(1.0, +phi * j.m_of(n));
    return rotated;
}

/// Concurrence through the non-Hermitian route: eigenvalues of rho * rho~.
inline double concurrence_nonhermitian_route(const CMatrix& rho4) {
    CMatrix yy = CMatrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const CMatrix m = rho4 * (yy * rho4.conjugate() * yy);
    Eigen::ComplexEigenSolver<CMatrix> solver(m);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::max(0.0, solver.eigenvalues()[i].real());
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, std::sqrt(lam[0]) - std::sqrt(lam[1]) - std::sqrt(lam[2]) -
                             std::sqrt(lam[3]));
}

/// Brute-force fine-grid minimum of the conditional entropy (no refinement).
inline double fine_grid_conditional_min(const CMatrix& rho4, int n_theta, int n_phi) {
    constexpr double pi = std::numbers::pi;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_theta; ++i) {
        const double theta = 0.5 * pi * i / (n_theta - 1);
        for (int l = 0; l < n_phi; ++l) {
            const double phi = 2.0 * pi * l / n_phi;
            const MeasurementSetting setting{theta, phi};
            const auto projs = setting.projectors();
            double total = 0.0;
            for (const auto& proj : projs) {
                CMatrix big = CMatrix::Zero(4, 4);
                // projector on qubit A (first qubit), identity on B
                for (int a = 0; a < 2; ++a)
                    for (int ap = 0; ap < 2; ++ap)
                        for (int b = 0; b < 2; ++b)
                            big(2 * a + b, 2 * ap + b) = proj(a, ap);
                const CMatrix conditioned = big * rho4 * big;
                const double p = conditioned.trace().real();
                if (p < 1e-14) continue;
                CMatrix rho_b = CMatrix::Zero(2, 2);
                for (int b = 0; b < 2; ++b)
                    for (int bp = 0; bp < 2; ++bp)
                        rho_b(b, bp) = conditioned(0 + b, 0 + bp) +
                                       conditioned(2 + b, 2 + bp);
                rho_b /= p;
                Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_b);
                double h = 0.0;
                for (int e = 0; e < 2; ++e) {
                    const double v = std::max(0.0, es.eigenvalues()[e]);
                    if (v > 0.0) h -= v * std::log(v);
                }
                total += p * h;
            }
            best = std::min(best, total);
        }
    }
    return best;
}

inline DickeVector random_dicke(SpinQuantum j, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector a(j.dim());
    for (int n = 0; n < j.dim(); ++n) a[n] = Complex(gauss(rng), gauss(rng));
    a.normalize();
    return {j, std::move(a)};
}

/// Random mixed two-qubit state (Wishart construction).
inline CMatrix random_density4(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) g(i, l) = Complex(gauss(rng), gauss(rng));
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

/// Random single-qubit unitary from two Gaussian columns (QR-style).
inline CMatrix random_unitary2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector u(2), v(2);
    for (int i = 0; i < 2; ++i) {
        u[i] = Complex(gauss(rng), gauss(rng));
        v[i] = Complex(gauss(rng), gauss(rng));
    }
    u.normalize();
    v -= u * (u.adjoint() * v)(0);
    v.normalize();
    CMatrix m(2, 2);
    m.col(0) = u;
    m.col(1) = v;
    return m;
}

inline CMatrix kron2(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index l = 0; l < a.cols(); ++l)
            out.block(i * b.rows(), l * b.cols(), b.rows(), b.cols()) = a(i, l) * b;
    return out;
}

}  // namespace ktop::testing
