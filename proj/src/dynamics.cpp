#include "ktop/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ktop/errors.hpp"

namespace ktop {

namespace {
constexpr double kPi = std::numbers::pi;
}

Precession Precession::quarters(int q) {
    Precession p;
    p.value = q * kPi / 2.0;
    p.quarter_turns = q;
    return p;
}

Precession Precession::free_angle(double v) {
    if (!std::isfinite(v)) throw input_error("Precession: p must be finite");
    Precession p;
    p.value = v;
    return p;
}

RationalKick RationalKick::reduced(long r, long s) {
    if (s <= 0) throw input_error("RationalKick: s must be positive");
    if (r < 0) throw input_error("RationalKick: r must be non-negative");
    const long g = std::gcd(r, s);
    return {r / (g == 0 ? 1 : g), s / (g == 0 ? 1 : g)};
}

double RationalKick::value() const {
    return static_cast<double>(r) * kPi / static_cast<double>(s);
}

CMatrix build_floquet(const FloquetParams& params) {
    if (!std::isfinite(params.k)) throw input_error("build_floquet: k must be finite");
    return torsion_exp(params.j, params.k) * rotation_exp(params.j, params.p.value);
}

EvolutionRecord evolve(const FloquetParams& params, const DickeVector& psi0, int t_max) {
    if (t_max < 0) throw input_error("evolve: t_max must be >= 0");
    if (psi0.dim() != params.j.dim())
        throw input_error("evolve: initial state dimension does not match j");

    const CMatrix u = build_floquet(params);
    EvolutionRecord record;
    record.params = params;
    record.states.reserve(static_cast<std::size_t>(t_max) + 1);
    record.states.push_back(psi0);

    CVector psi = psi0.amplitudes;
    for (int t = 1; t <= t_max; ++t) {
        psi = u * psi;
        const double drift = std::abs(psi.norm() - 1.0);
        record.max_norm_drift = std::max(record.max_norm_drift, drift);
        if (drift > 1e-12) {
            psi.normalize();
            ++record.renormalizations;
        }
        record.states.emplace_back(params.j, psi);
    }
    return record;
}

CMatrix closed_form_power(double k, SpecialPrecession p, long n) {
    if (n < 0) throw input_error("closed_form_power: n must be >= 0");

    const double r2 = std::numbers::sqrt2;
    CMatrix v(3, 3);       // eigenvector columns
    CVector lam_arg(3);    // eigenvalue phases, lambda_i = e^{i arg_i}

    if (p == SpecialPrecession::half_pi) {
        v.col(0) << 1.0 / r2, 0.0, 1.0 / r2;
        v.col(1) << -0.5, -kImag * std::polar(1.0, k / 4.0) / r2, 0.5;
        v.col(2) << -0.5, kImag * std::polar(1.0, k / 4.0) / r2, 0.5;
        lam_arg << -k / 2.0, -kPi / 2.0 - k / 4.0, kPi / 2.0 - k / 4.0;
    } else {
        v.col(0) << -1.0 / r2, 0.0, 1.0 / r2;
        v.col(1) << 1.0 / r2, 0.0, 1.0 / r2;
        v.col(2) << 0.0, 1.0, 0.0;
        lam_arg << kPi - k / 2.0, -k / 2.0, kPi;
    }

    CVector lam_n(3);
    for (int i = 0; i < 3; ++i)
        lam_n[i] = std::polar(1.0, std::fmod(lam_arg[i] * static_cast<double>(n),
                                             2.0 * kPi));
    return v * lam_n.asDiagonal() * v.adjoint();
}

CMatrix parity_operator(SpinQuantum j) {
    CMatrix m = CMatrix::Zero(j.dim(), j.dim());
    for (int n = 0; n < j.dim(); ++n) {
        const double mm = j.m_of(n);
        m(n, n) = std::polar(1.0, -kPi * mm * mm);
    }
    return m;
}

DickeVector local_sigmaz_product(const DickeVector& psi) {
    CVector a = psi.amplitudes;
    for (int n = 1; n < psi.dim(); n += 2) a[n] = -a[n];
    return {psi.j, std::move(a)};
}

LuIdentityResult verify_parity_lu_identity(SpinQuantum j, const DickeVector& psi,
                                           double tol) {
    if (psi.dim() != j.dim())
        throw input_error("verify_parity_lu_identity: state dimension mismatch");
    const CVector lhs = parity_operator(j) * psi.amplitudes;
    const CVector rhs = j.integer_j() ? local_sigmaz_product(psi).amplitudes
                                      : psi.amplitudes;
    const double residual = phase_aligned_residual(rhs, lhs);
    return {residual <= tol, residual};
}

}  // namespace ktop
