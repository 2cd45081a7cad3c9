#pragma once

#include "ktop/linalg.hpp"

namespace ktop {

/// Half-integer spin j stored exactly as 2j. Hilbert dimension is 2j+1.
struct SpinQuantum {
    int two_j;

    explicit SpinQuantum(int twoJ);

    int dim() const { return two_j + 1; }
    double j() const { return 0.5 * two_j; }
    bool integer_j() const { return two_j % 2 == 0; }

    // Fixed basis ordering used everywhere: index n = 0..2j labels |j, j-n>,
    // i.e. m runs from +j down to -j and n counts down-spins from all-up.
    double m_of(int n) const { return 0.5 * two_j - n; }
};

/// Normalized amplitude vector over the Dicke basis |j, j-n> (m descending).
struct DickeVector {
    SpinQuantum j;
    CVector amplitudes;

    DickeVector(SpinQuantum j_in, CVector a);

    int dim() const { return j.dim(); }
    double norm() const { return amplitudes.norm(); }
};

/// Exact binomial coefficient as a double; integer arithmetic internally,
/// valid up to n = 64.
double binomial(int n, int k);

CMatrix jz_matrix(SpinQuantum j);
CMatrix jplus_matrix(SpinQuantum j);
CMatrix jy_matrix(SpinQuantum j);

/// exp(-i (k/2j) Jz^2): the kick factor, diagonal in the Dicke basis.
CMatrix torsion_exp(SpinQuantum j, double k);

/// exp(-i p Jy) via Hermitian eigendecomposition of Jy.
CMatrix rotation_exp(SpinQuantum j, double p);

/// Spin-coherent state at (theta, phi). Amplitude on |j,m> is
/// sqrt(C(2j, j+m)) cos(theta/2)^{j+m} sin(theta/2)^{j-m} e^{-i (j-m) phi}.
/// Requires theta in [0, pi], phi in (-pi, pi].
DickeVector coherent_state(SpinQuantum j, double theta, double phi);

}  // namespace ktop
