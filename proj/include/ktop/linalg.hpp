#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ktop {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

/// Spectral data of a Hermitian matrix: eigenvalues ascending, eigenvector
/// columns orthonormal, V diag(lambda) V^dagger reproduces the input.
struct HermitianEigensystem {
    RVector eigenvalues;
    CMatrix eigenvectors;

    CMatrix reconstruct() const;
};

/// Eigendecomposition with a Hermiticity guard. Throws input_error when the
/// input is not Hermitian within hermiticity_tol, numerical_error when the
/// solver does not converge. Deterministic for identical input.
HermitianEigensystem hermitian_eigensystem(const CMatrix& h,
                                           double hermiticity_tol = 1e-10);

double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

/// ||U^dagger U - I||_max
double unitarity_defect(const CMatrix& u);

/// max |v_i - e^{i alpha} u_i| with the phase fixed on the largest |u_i|.
/// Global phase only; relative phases are compared as-is.
double phase_aligned_residual(const CVector& u, const CVector& v);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [-clamp_tol, 0) are clamped to zero; anything more negative throws.
CMatrix sqrt_psd(const CMatrix& rho, double clamp_tol = 1e-10);

}  // namespace ktop
