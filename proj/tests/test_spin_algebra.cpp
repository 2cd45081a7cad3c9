#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "ktop/errors.hpp"
#include "ktop/spin_algebra.hpp"
#include "support/test_oracles.hpp"

using namespace ktop;

namespace {
constexpr double pi = std::numbers::pi;

CMatrix diag3(Complex a, Complex b, Complex c) {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}
}  // namespace

TEST_CASE("jz is diagonal with m descending") {
    CHECK(max_abs_diff(jz_matrix(SpinQuantum(2)), diag3(1.0, 0.0, -1.0)) == 0.0);

    const CMatrix half = jz_matrix(SpinQuantum(1));
    CHECK(half(0, 0) == Complex(0.5, 0.0));
    CHECK(half(1, 1) == Complex(-0.5, 0.0));

    const CMatrix two = jz_matrix(SpinQuantum(4));
    for (int n = 0; n < 5; ++n) CHECK(two(n, n) == Complex(2.0 - n, 0.0));
}

TEST_CASE("jy matches the ladder construction") {
    const CMatrix half = jy_matrix(SpinQuantum(1));
    CHECK(std::abs(half(0, 1) - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(half(1, 0) - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(half(0, 0)) == 0.0);

    // j=1: off-diagonals 1/(i sqrt 2) from sqrt((j-+m)(j+-m+1))/2i
    const CMatrix one = jy_matrix(SpinQuantum(2));
    const Complex expect = 1.0 / (kImag * std::numbers::sqrt2);
    CHECK(std::abs(one(0, 1) - expect) < 1e-15);
    CHECK(std::abs(one(1, 2) - expect) < 1e-15);
    CHECK(std::abs(one(1, 0) + expect) < 1e-15);
    CHECK(std::abs(one(2, 1) + expect) < 1e-15);

    for (int two_j : {1, 2, 3, 5, 8}) {
        const CMatrix jy = jy_matrix(SpinQuantum(two_j));
        CHECK(max_abs_diff(jy, jy.adjoint()) == 0.0);  // Hermitian by construction
    }
}

TEST_CASE("torsion is the diagonal kick phase") {
    const double k = 1.37;
    const CMatrix t = torsion_exp(SpinQuantum(2), k);
    CHECK(max_abs_diff(t, diag3(std::polar(1.0, -k / 2.0), 1.0,
                                std::polar(1.0, -k / 2.0))) < 1e-15);

    CHECK(max_abs_diff(torsion_exp(SpinQuantum(5), 0.0), CMatrix::Identity(6, 6)) == 0.0);

    // k -> k + 2pi at j=1 multiplies by diag(-1, 1, -1)
    const CMatrix shifted = torsion_exp(SpinQuantum(2), k + 2.0 * pi);
    CHECK(max_abs_diff(shifted, diag3(-1.0, 1.0, -1.0) * t) < 1e-15);
}

TEST_CASE("rotation_exp special values and inverses") {
    CHECK(max_abs_diff(rotation_exp(SpinQuantum(3), 0.0), CMatrix::Identity(4, 4)) < 1e-14);

    CMatrix flip(2, 2);  // e^{-i pi sigma_y / 2}
    flip << 0.0, -1.0, 1.0, 0.0;
    CHECK(max_abs_diff(rotation_exp(SpinQuantum(1), pi), flip) < 1e-12);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> up(-2.0 * pi, 2.0 * pi);
    for (int two_j : {1, 2, 3, 4, 6}) {
        const double p = up(rng);
        const SpinQuantum j(two_j);
        const CMatrix fwd = rotation_exp(j, p);
        CHECK(unitarity_defect(fwd) < 1e-12);
        CHECK(max_abs_diff(fwd * rotation_exp(j, -p),
                           CMatrix::Identity(j.dim(), j.dim())) < 1e-12);
    }
}

TEST_CASE("rotation_exp cross-checked against closed-form Wigner d") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> up(-pi, pi);
    for (int rep = 0; rep < 20; ++rep) {
        const double p = up(rng);
        const double c = std::cos(p / 2.0), s = std::sin(p / 2.0);

        CMatrix d_half(2, 2);
        d_half << c, -s, s, c;
        CHECK(max_abs_diff(rotation_exp(SpinQuantum(1), p), d_half) < 1e-13);

        CMatrix d_one(3, 3);  // standard d^1(p)
        const double r2 = std::numbers::sqrt2;
        d_one << c * c, -r2 * c * s, s * s,
                 r2 * c * s, c * c - s * s, -r2 * c * s,
                 s * s, r2 * c * s, c * c;
        CHECK(max_abs_diff(rotation_exp(SpinQuantum(2), p), d_one) < 1e-13);
    }
}

TEST_CASE("hermitian_eigensystem contract") {
    const auto eig = hermitian_eigensystem(jz_matrix(SpinQuantum(2)));
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.0));
    CHECK(eig.eigenvalues[2] == doctest::Approx(1.0));

    const auto eig_half = hermitian_eigensystem(jy_matrix(SpinQuantum(1)));
    CHECK(eig_half.eigenvalues[0] == doctest::Approx(-0.5));
    CHECK(eig_half.eigenvalues[1] == doctest::Approx(0.5));

    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int l = 0; l < 5; ++l) g(i, l) = Complex(gauss(rng), gauss(rng));
    const CMatrix h = 0.5 * (g + g.adjoint());
    const auto sys = hermitian_eigensystem(h);
    CHECK(max_abs_diff(sys.reconstruct(), h) < 1e-10);
    CHECK(unitarity_defect(sys.eigenvectors) < 1e-10);
    for (int i = 1; i < 5; ++i) CHECK(sys.eigenvalues[i] >= sys.eigenvalues[i - 1]);

    CHECK_THROWS_AS(hermitian_eigensystem(g), input_error);
}

TEST_CASE("coherent state: poles, equator, oracle") {
    const auto top = coherent_state(SpinQuantum(4), 0.0, 0.0);
    CHECK(std::abs(top.amplitudes[0] - 1.0) < 1e-15);
    CHECK(top.amplitudes.tail(4).cwiseAbs().maxCoeff() == 0.0);

    const auto eq = coherent_state(SpinQuantum(1), pi / 2.0, 0.0);
    CHECK(std::abs(eq.amplitudes[0] - 1.0 / std::numbers::sqrt2) < 1e-14);
    CHECK(std::abs(eq.amplitudes[1] - 1.0 / std::numbers::sqrt2) < 1e-14);

    // j=1, theta=2.5, phi=1.1 against the rotation-operator oracle
    const auto state = coherent_state(SpinQuantum(2), 2.5, 1.1);
    const CVector oracle = testing::rotation_oracle_coherent(SpinQuantum(2), 2.5, 1.1);
    CHECK(phase_aligned_residual(oracle, state.amplitudes) < 1e-12);

    for (int two_j : {1, 2, 3, 7}) {
        std::mt19937_64 rng(100 + two_j);
        std::uniform_real_distribution<double> uth(0.0, pi);
        std::uniform_real_distribution<double> uph(-pi + 1e-9, pi);
        for (int rep = 0; rep < 50; ++rep) {
            const double th = uth(rng), ph = uph(rng);
            const auto psi = coherent_state(SpinQuantum(two_j), th, ph);
            CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
            const CVector or2 = testing::rotation_oracle_coherent(SpinQuantum(two_j), th, ph);
            CHECK(phase_aligned_residual(or2, psi.amplitudes) < 1e-12);
        }
    }

    CHECK_THROWS_AS(coherent_state(SpinQuantum(2), -0.1, 0.0), input_error);
    CHECK_THROWS_AS(coherent_state(SpinQuantum(2), 1.0, 4.0), input_error);
}

TEST_CASE("coherent-state norm holds over 10^4 random directions") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> uth(0.0, pi);
    std::uniform_real_distribution<double> uph(-pi + 1e-9, pi);
    double worst = 0.0;
    const SpinQuantum j(6);
    for (int rep = 0; rep < 10000; ++rep) {
        const auto psi = coherent_state(j, uth(rng), uph(rng));
        worst = std::max(worst, std::abs(psi.norm() - 1.0));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("exponential builders are unitary") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int two_j : {1, 2, 3, 8, 16}) {
        const SpinQuantum j(two_j);
        for (int rep = 0; rep < 5; ++rep) {
            CHECK(unitarity_defect(torsion_exp(j, u(rng))) < 1e-12);
            CHECK(unitarity_defect(rotation_exp(j, u(rng))) < 1e-12);
        }
    }
}

TEST_CASE("binomial table is exact integer arithmetic") {
    CHECK(binomial(0, 0) == 1.0);
    CHECK(binomial(6, 3) == 20.0);
    CHECK(binomial(12, 5) == 792.0);
    CHECK(binomial(64, 32) == 1832624140942590534.0);
    CHECK(binomial(5, 7) == 0.0);
    CHECK_THROWS_AS(binomial(65, 1), input_error);
}

TEST_CASE("SpinQuantum and DickeVector validation") {
    CHECK_THROWS_AS(SpinQuantum(0), input_error);
    CHECK_THROWS_AS(SpinQuantum(65), input_error);
    CHECK(SpinQuantum(3).dim() == 4);
    CHECK(SpinQuantum(3).j() == doctest::Approx(1.5));

    CVector bad(3);
    bad << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(DickeVector(SpinQuantum(2), bad), input_error);
}
