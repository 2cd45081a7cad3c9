#include "ktop/spin_algebra.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "ktop/errors.hpp"

namespace ktop {

namespace {

constexpr int kMaxQubits = 64;  // 2j <= 64; C(64,32) still fits in uint64

const std::array<std::array<std::uint64_t, kMaxQubits + 1>, kMaxQubits + 1>& pascal() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kMaxQubits + 1>, kMaxQubits + 1> t{};
        for (int n = 0; n <= kMaxQubits; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
        return t;
    }();
    return table;
}

}  // namespace

SpinQuantum::SpinQuantum(int twoJ) : two_j(twoJ) {
    if (twoJ < 1)
        throw input_error("SpinQuantum: 2j must be >= 1");
    if (twoJ > kMaxQubits)
        throw input_error("SpinQuantum: 2j > 64 is out of scope");
}

DickeVector::DickeVector(SpinQuantum j_in, CVector a) : j(j_in), amplitudes(std::move(a)) {
    if (amplitudes.size() != j.dim())
        throw input_error("DickeVector: amplitude count does not match 2j+1");
    const double n = amplitudes.norm();
    if (std::abs(n - 1.0) > 1e-8)
        throw input_error("DickeVector: state is not normalized, |norm-1| = " +
                          std::to_string(std::abs(n - 1.0)));
}

double binomial(int n, int k) {
    if (n < 0 || n > kMaxQubits)
        throw input_error("binomial: n out of supported range");
    if (k < 0 || k > n) return 0.0;
    return static_cast<double>(pascal()[n][k]);
}

CMatrix jz_matrix(SpinQuantum j) {
    CMatrix m = CMatrix::Zero(j.dim(), j.dim());
    for (int n = 0; n < j.dim(); ++n) m(n, n) = j.m_of(n);
    return m;
}

CMatrix jplus_matrix(SpinQuantum j) {
    // J+ |j,m> = sqrt((j-m)(j+m+1)) |j,m+1>; index n = j-m descends by one.
    CMatrix m = CMatrix::Zero(j.dim(), j.dim());
    for (int n = 1; n < j.dim(); ++n) {
        const double mm = j.m_of(n);
        m(n - 1, n) = std::sqrt((j.j() - mm) * (j.j() + mm + 1.0));
    }
    return m;
}

CMatrix jy_matrix(SpinQuantum j) {
    const CMatrix jp = jplus_matrix(j);
    return (jp - jp.adjoint()) / (2.0 * kImag);
}

CMatrix torsion_exp(SpinQuantum j, double k) {
    if (!std::isfinite(k)) throw input_error("torsion_exp: k must be finite");
    CMatrix m = CMatrix::Zero(j.dim(), j.dim());
    const double coeff = k / static_cast<double>(j.two_j);
    for (int n = 0; n < j.dim(); ++n) {
        const double mm = j.m_of(n);
        m(n, n) = std::polar(1.0, -coeff * mm * mm);
    }
    return m;
}

CMatrix rotation_exp(SpinQuantum j, double p) {
    if (!std::isfinite(p)) throw input_error("rotation_exp: p must be finite");
    const auto eig = hermitian_eigensystem(jy_matrix(j));
    CVector phases(j.dim());
    for (int i = 0; i < j.dim(); ++i)
        phases[i] = std::polar(1.0, -p * eig.eigenvalues[i]);
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

DickeVector coherent_state(SpinQuantum j, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw input_error("coherent_state: theta outside [0, pi]");
    if (!(phi > -std::numbers::pi - 1e-15 && phi <= std::numbers::pi + 1e-15))
        throw input_error("coherent_state: phi outside (-pi, pi]");

    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    CVector a(j.dim());
    for (int n = 0; n < j.dim(); ++n) {
        const double mag = std::sqrt(binomial(j.two_j, n)) *
                           std::pow(c, j.two_j - n) * std::pow(s, n);
        a[n] = mag * std::polar(1.0, -static_cast<double>(n) * phi);
    }
    a.normalize();
    return {j, std::move(a)};
}

}  // namespace ktop
