#include "ktop/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ktop/errors.hpp"

namespace ktop {

CMatrix HermitianEigensystem::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

HermitianEigensystem hermitian_eigensystem(const CMatrix& h, double hermiticity_tol) {
    if (h.rows() != h.cols())
        throw input_error("hermitian_eigensystem: matrix is not square");
    const double defect = max_abs_diff(h, h.adjoint());
    if (defect > hermiticity_tol)
        throw input_error("hermitian_eigensystem: input is not Hermitian, defect " +
                          std::to_string(defect));

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw numerical_error("hermitian_eigensystem: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_abs(const CMatrix& a) {
    return a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const CVector& a, const CVector& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& u) {
    const CMatrix id = CMatrix::Identity(u.cols(), u.cols());
    return max_abs_diff(u.adjoint() * u, id);
}

double phase_aligned_residual(const CVector& u, const CVector& v) {
    if (u.size() != v.size())
        throw input_error("phase_aligned_residual: size mismatch");
    Eigen::Index pivot = 0;
    u.cwiseAbs().maxCoeff(&pivot);
    Complex phase{1.0, 0.0};
    if (std::abs(u[pivot]) > 0.0 && std::abs(v[pivot]) > 0.0)
        phase = (v[pivot] / u[pivot]) / std::abs(v[pivot] / u[pivot]);
    return (v - phase * u).cwiseAbs().maxCoeff();
}

CMatrix sqrt_psd(const CMatrix& rho, double clamp_tol) {
    const auto eig = hermitian_eigensystem(rho);
    RVector lam = eig.eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] < -clamp_tol)
            throw numerical_error("sqrt_psd: eigenvalue below PSD tolerance: " +
                                  std::to_string(lam[i]), lam[i]);
        lam[i] = std::sqrt(std::max(0.0, lam[i]));
    }
    return eig.eigenvectors * lam.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace ktop
