#pragma once

#include <optional>
#include <vector>

#include "ktop/spin_algebra.hpp"

namespace ktop {

/// Precession angle p per period. When built from the symbolic set
/// {0, pi/2, pi, 3pi/2, 2pi} the quarter-turn count is kept so the
/// special-case dispatch is exact rather than tolerance-based.
struct Precession {
    double value = 0.0;
    std::optional<int> quarter_turns;  // p = quarter_turns * pi/2 when set

    static Precession quarters(int q);
    static Precession free_angle(double p);
};

struct FloquetParams {
    SpinQuantum j;
    double k = 0.0;  // kick strength (chaos parameter), dimensionless
    Precession p;    // precession angle per period, radians
};

/// Kick strength k = r pi / s, stored reduced with gcd(r, s) = 1.
struct RationalKick {
    long r = 0;
    long s = 1;

    static RationalKick reduced(long r, long s);
    double value() const;
};

/// Stroboscopic trajectory psi_t = U^t psi_0, t = 0..t_max. Norm drift beyond
/// 1e-12 triggers a renormalization, counted rather than silent.
struct EvolutionRecord {
    FloquetParams params;
    std::vector<DickeVector> states;
    int renormalizations = 0;
    double max_norm_drift = 0.0;
};

/// U = exp(-i (k/2j) Jz^2) exp(-i p Jy), the period-one propagator.
CMatrix build_floquet(const FloquetParams& params);

EvolutionRecord evolve(const FloquetParams& params, const DickeVector& psi0, int t_max);

/// Closed-form U^n for j=1 at the special precession angles, assembled from
/// the spectral data (eigenvalues/eigenvectors), not from matrix powers.
enum class SpecialPrecession { half_pi, pi };
CMatrix closed_form_power(double k, SpecialPrecession p, long n);

/// exp(-i pi Jz^2): the residue of the k -> k + 2j*pi shift.
CMatrix parity_operator(SpinQuantum j);

/// Amplitude at index n multiplied by (-1)^n, i.e. the collective
/// sigma_z x ... x sigma_z action restricted to the symmetric subspace.
DickeVector local_sigmaz_product(const DickeVector& psi);

/// Checks that the parity operator acts on psi as a local unitary: for
/// integer j the tensor-sigma_z product, for half-integer j a pure global
/// phase (parity is e^{-i pi j^2} times identity there). The residual is the
/// max-abs mismatch after aligning the global phase.
struct LuIdentityResult {
    bool pass = false;
    double residual = 0.0;
};
LuIdentityResult verify_parity_lu_identity(SpinQuantum j, const DickeVector& psi,
                                           double tol = 1e-12);

}  // namespace ktop
