#include "magq/dense.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace magq;

namespace {
const Complex kI{0.0, 1.0};
}

TEST_CASE("embed_lowering single qubit") {
    const Matrix sm = embed_lowering(0, 1);
    Matrix expected(2, 2);
    expected << 0, 1, 0, 0;
    CHECK(sm == expected);
}

TEST_CASE("embed_lowering tensor placement on the second qubit") {
    const Matrix sm = embed_lowering(1, 2);
    Matrix single(2, 2);
    single << 0, 1, 0, 0;
    CHECK(sm == kron(Matrix::Identity(2, 2), single));
}

TEST_CASE("embed_lowering maps |10> to |00>") {
    const Matrix sm = embed_lowering(0, 2);
    Vector ket10 = Vector::Zero(4);
    ket10(2) = 1.0;
    Vector out = sm * ket10;
    CHECK(out(0) == Complex(1.0, 0.0));
    CHECK(out.tail(3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed_lowering rejects out-of-range sites") {
    CHECK_THROWS_AS(embed_lowering(2, 2), std::domain_error);
    CHECK_THROWS_AS(embed_lowering(-1, 2), std::domain_error);
}

TEST_CASE("kron of identities") {
    CHECK(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) == Matrix::Identity(4, 4));
}

TEST_CASE("kron places a lowering block") {
    Matrix sm(2, 2);
    sm << 0, 1, 0, 0;
    const Matrix out = kron(sm, Matrix::Identity(2, 2));
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 2) = 1.0;
    expected(1, 3) = 1.0;
    CHECK(out == expected);
}

TEST_CASE("kron matches the index formula") {
    std::mt19937 rng(7);
    const Matrix a = oracles::random_complex(rng, 2, 2);
    const Matrix b = oracles::random_complex(rng, 2, 2);
    const Matrix out = kron(a, b);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    CHECK(out(2 * i + k, 2 * j + l) == a(i, j) * b(k, l));
                }
            }
        }
    }
}

TEST_CASE("matrix_exponential of zero is the identity") {
    CHECK(matrix_exponential(Matrix::Zero(3, 3)) == Matrix::Identity(3, 3));
}

TEST_CASE("matrix_exponential of a diagonal matrix") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = Complex(0.3, -0.2);
    d(1, 1) = Complex(-1.1, 0.7);
    const Matrix e = matrix_exponential(d);
    CHECK(std::abs(e(0, 0) - std::exp(d(0, 0))) < 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(d(1, 1))) < 1e-14);
    CHECK(std::abs(e(0, 1)) == 0.0);
}

TEST_CASE("matrix_exponential matches a Taylor-series oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix m = oracles::random_complex(rng, 4, 4);
        m *= 0.8 / m.cwiseAbs().colwise().sum().maxCoeff();  // spectral radius < 1
        const Matrix ours = matrix_exponential(m);
        const Matrix ref = oracles::taylor_expm(m, 30);
        CHECK((ours - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("matrix_exponential handles large norms through scaling") {
    std::mt19937 rng(13);
    Matrix h = oracles::random_complex(rng, 4, 4);
    h = (h + h.adjoint().eval()) / 2.0;
    const Matrix u = matrix_exponential(-kI * h * 500.0);
    CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("matrix_exponential rejects non-square input") {
    CHECK_THROWS_AS(matrix_exponential(Matrix::Zero(2, 3)), std::domain_error);
}

TEST_CASE("vectorize stacks columns") {
    Matrix half_identity = 0.5 * Matrix::Identity(2, 2);
    const Vector v = vectorize(half_identity);
    CHECK(v(0) == Complex(0.5, 0.0));
    CHECK(v(1) == Complex(0.0, 0.0));
    CHECK(v(2) == Complex(0.0, 0.0));
    CHECK(v(3) == Complex(0.5, 0.0));
}

TEST_CASE("devectorize inverts vectorize bit-exactly") {
    std::mt19937 rng(17);
    const Matrix rho = oracles::random_density_matrix(rng, 4);
    CHECK(devectorize(vectorize(rho)) == rho);
}

TEST_CASE("devectorize rejects non-square lengths") {
    CHECK_THROWS_AS(devectorize(Vector::Zero(5)), std::domain_error);
}

TEST_CASE("superoperator identity vec(A rho B) = (B^T kron A) vec(rho)") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = oracles::random_complex(rng, 2, 2);
        const Matrix b = oracles::random_complex(rng, 2, 2);
        const Matrix rho = oracles::random_complex(rng, 2, 2);
        const Vector lhs = kron(b.transpose(), a) * vectorize(rho);
        const Vector rhs = vectorize(a * rho * b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((spre(a) * spost(b) * vectorize(rho) - rhs).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("fidelity_pure of a state with itself") {
    std::mt19937 rng(23);
    const PureState psi = PureState::normalized(oracles::random_complex(rng, 4, 1));
    const DensityMatrix rho{psi.amplitudes * psi.amplitudes.adjoint()};
    CHECK(fidelity_pure(rho, psi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity_pure of the maximally mixed state with a Bell state") {
    Vector bell = Vector::Zero(4);
    bell(0) = 1.0 / std::sqrt(2.0);
    bell(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho{0.25 * Matrix::Identity(4, 4)};
    CHECK(fidelity_pure(rho, PureState::normalized(bell)) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity_pure vanishes on orthogonal states") {
    Vector psi_minus = Vector::Zero(4);
    psi_minus(2) = 1.0 / std::sqrt(2.0);
    psi_minus(1) = -1.0 / std::sqrt(2.0);
    Matrix rho00 = Matrix::Zero(4, 4);
    rho00(0, 0) = 1.0;
    CHECK(fidelity_pure(DensityMatrix{rho00}, PureState::normalized(psi_minus)) == 0.0);
}

TEST_CASE("fidelity_pure is invariant under a global phase") {
    std::mt19937 rng(29);
    const DensityMatrix rho{oracles::random_density_matrix(rng, 4)};
    const PureState psi = PureState::normalized(oracles::random_complex(rng, 4, 1));
    const PureState rotated{std::exp(kI * 1.234) * psi.amplitudes};
    CHECK(fidelity_pure(rho, psi) == fidelity_pure(rho, rotated));
}

TEST_CASE("DensityMatrix::checked enforces the invariants") {
    Matrix not_hermitian = Matrix::Zero(2, 2);
    not_hermitian(0, 0) = 1.0;
    not_hermitian(0, 1) = Complex(0.0, 1e-6);
    CHECK_THROWS_AS(DensityMatrix::checked(not_hermitian), std::domain_error);

    CHECK_THROWS_AS(DensityMatrix::checked(2.0 * Matrix::Identity(2, 2)), std::domain_error);

    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix::checked(negative), std::domain_error);

    CHECK_NOTHROW(DensityMatrix::checked(0.5 * Matrix::Identity(2, 2)));
}
