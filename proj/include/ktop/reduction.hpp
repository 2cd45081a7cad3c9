#pragma once

#include <vector>

#include "ktop/spin_algebra.hpp"

namespace ktop {

enum class RdmBasis {
    symmetric_dicke,  // |q, a> with a down-spins among the q kept qubits, dim q+1
    standard_qubit,   // product basis ordered all-up first, dim 2^q
};

/// Hermitian, PSD, trace-one reduced state of a q-qubit subset.
struct ReducedDensityMatrix {
    int q = 0;
    RdmBasis basis = RdmBasis::symmetric_dicke;
    CMatrix rho;
};

/// Amplitudes over the full 2^N qubit product basis. Index bit convention:
/// qubit i contributes (down ? 1 : 0) << (N-1-i), so index 0 is all-up and
/// 2^N - 1 is all-down, matching the Dicke ordering n = number of down spins.
struct QubitExpansion {
    int n_qubits = 0;
    CVector amplitudes;
};

/// Expands a symmetric-subspace state over the full qubit space: amplitude
/// c_n is spread equally over the C(2j, n) bitstrings with n down spins.
/// Oracle-scale only: requires 2j <= 12.
QubitExpansion expand_to_qubits(const DickeVector& psi);

/// Partial trace over the complement of `keep` by direct enumeration.
/// Reduced basis ordering follows the same down-bit convention, restricted
/// to the kept qubits in the order given.
ReducedDensityMatrix brute_force_rdm(const QubitExpansion& full,
                                     const std::vector<int>& keep);

/// q-qubit reduced state of a symmetric state, computed combinatorially in
/// the symmetric-Dicke basis (dim q+1):
///   rho_ab = sum_r c_{a+r} conj(c_{b+r}) f(a,r) f(b,r),
///   f(x,r) = sqrt( C(q,x) C(2j-q,r) / C(2j, x+r) ).
ReducedDensityMatrix dicke_rdm(const DickeVector& psi, int q);

/// Embeds a q=2 symmetric-Dicke RDM into the standard two-qubit basis
/// {|11>, |10>, |01>, |00>}; the singlet row/column is identically zero.
ReducedDensityMatrix symmetric_to_qubit_basis(const ReducedDensityMatrix& rdm);

/// Validates Hermiticity, unit trace and positivity of a density matrix.
void check_density_matrix(const CMatrix& rho, double tol = 1e-8);

}  // namespace ktop
