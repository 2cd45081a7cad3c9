#include "ktop/reduction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "ktop/errors.hpp"

namespace ktop {

QubitExpansion expand_to_qubits(const DickeVector& psi) {
    const int n_qubits = psi.j.two_j;
    if (n_qubits > 12)
        throw input_error("expand_to_qubits: 2j > 12 exceeds the oracle scale");

    const std::size_t dim = std::size_t{1} << n_qubits;
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        const int n_down = std::popcount(b);
        amps[static_cast<Eigen::Index>(b)] =
            psi.amplitudes[n_down] / std::sqrt(binomial(n_qubits, n_down));
    }
    return {n_qubits, std::move(amps)};
}

ReducedDensityMatrix brute_force_rdm(const QubitExpansion& full,
                                     const std::vector<int>& keep) {
    const int n = full.n_qubits;
    for (int q : keep)
        if (q < 0 || q >= n) throw input_error("brute_force_rdm: bad qubit index");
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("brute_force_rdm: repeated qubit index");

    const int q = static_cast<int>(keep.size());
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) rest.push_back(i);

    const std::size_t dim_a = std::size_t{1} << q;
    const std::size_t dim_b = std::size_t{1} << rest.size();
    CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(dim_a),
                                static_cast<Eigen::Index>(dim_a));

    // full-space index for (kept bits = a, rest bits = e)
    const auto assemble = [&](std::size_t a, std::size_t e) {
        std::size_t b = 0;
        for (int i = 0; i < q; ++i)
            if ((a >> (q - 1 - i)) & 1u) b |= std::size_t{1} << (n - 1 - keep[i]);
        for (std::size_t i = 0; i < rest.size(); ++i)
            if ((e >> (rest.size() - 1 - i)) & 1u)
                b |= std::size_t{1} << (n - 1 - rest[i]);
        return b;
    };

    for (std::size_t a = 0; a < dim_a; ++a)
        for (std::size_t ap = 0; ap < dim_a; ++ap) {
            Complex acc{0.0, 0.0};
            for (std::size_t e = 0; e < dim_b; ++e)
                acc += full.amplitudes[static_cast<Eigen::Index>(assemble(a, e))] *
                       std::conj(full.amplitudes[static_cast<Eigen::Index>(assemble(ap, e))]);
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) = acc;
        }

    return {q, RdmBasis::standard_qubit, std::move(rho)};
}

ReducedDensityMatrix dicke_rdm(const DickeVector& psi, int q) {
    const int two_j = psi.j.two_j;
    if (q < 1 || q > two_j)
        throw input_error("dicke_rdm: q must satisfy 1 <= q <= 2j");

    const int rest = two_j - q;
    const auto weight = [&](int x, int r) {
        return std::sqrt(binomial(q, x) * binomial(rest, r) / binomial(two_j, x + r));
    };

    CMatrix rho = CMatrix::Zero(q + 1, q + 1);
    for (int a = 0; a <= q; ++a)
        for (int b = 0; b <= q; ++b) {
            Complex acc{0.0, 0.0};
            for (int r = 0; r <= rest; ++r)
                acc += psi.amplitudes[a + r] * std::conj(psi.amplitudes[b + r]) *
                       weight(a, r) * weight(b, r);
            rho(a, b) = acc;
        }
    return {q, RdmBasis::symmetric_dicke, std::move(rho)};
}

ReducedDensityMatrix symmetric_to_qubit_basis(const ReducedDensityMatrix& rdm) {
    if (rdm.basis != RdmBasis::symmetric_dicke)
        throw input_error("symmetric_to_qubit_basis: input must be in the Dicke basis");
    if (rdm.q != 2)
        throw input_error("symmetric_to_qubit_basis: only q = 2 is supported");

    // |a=0> = |11>, |a=1> = (|10>+|01>)/sqrt2, |a=2> = |00>
    CMatrix embed = CMatrix::Zero(4, 3);
    embed(0, 0) = 1.0;
    embed(1, 1) = 1.0 / std::numbers::sqrt2;
    embed(2, 1) = 1.0 / std::numbers::sqrt2;
    embed(3, 2) = 1.0;
    return {2, RdmBasis::standard_qubit, embed * rdm.rho * embed.adjoint()};
}

void check_density_matrix(const CMatrix& rho, double tol) {
    if (rho.rows() != rho.cols())
        throw input_error("density matrix must be square");
    if (max_abs_diff(rho, rho.adjoint()) > tol)
        throw input_error("density matrix is not Hermitian within tolerance");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw input_error("density matrix trace differs from one");
}

}  // namespace ktop
