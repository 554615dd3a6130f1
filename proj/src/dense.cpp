#include "magq/dense.hpp"

#include "magq/errors.hpp"
#include "magq/tolerances.hpp"

#include <cmath>
#include <stdexcept>

namespace magq {

PureState PureState::normalized(Vector v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::domain_error("PureState: cannot normalize a zero or non-finite vector");
    }
    v /= n;
    return PureState{std::move(v)};
}

DensityMatrix DensityMatrix::checked(Matrix m) {
    if (m.rows() != m.cols()) {
        throw std::domain_error("DensityMatrix: matrix is not square");
    }
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::hermiticity) {
        throw std::domain_error("DensityMatrix: not Hermitian, max |rho - rho^dag| = " +
                                std::to_string(herm));
    }
    const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
    if (tr_err > tol::trace) {
        throw std::domain_error("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint().eval()),
                                             Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < tol::positivity) {
        throw std::domain_error("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
    }
    return DensityMatrix{std::move(m)};
}

Matrix embed_lowering(int site, int n_qubits) {
    if (n_qubits < 1) throw std::domain_error("embed_lowering: need at least one qubit");
    if (site < 0 || site >= n_qubits) throw std::domain_error("embed_lowering: site out of range");
    Matrix lower(2, 2);
    lower << 0, 1, 0, 0;  // |0><1|
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < n_qubits; ++i) {
        out = kron(out, i == site ? lower : Matrix::Identity(2, 2));
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix matrix_exponential(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("matrix_exponential: matrix is not square");
    if (!m.allFinite()) throw std::domain_error("matrix_exponential: non-finite entries");

    const Eigen::Index n = m.rows();
    const Matrix id = Matrix::Identity(n, n);

    // Degree-13 Pade approximant, good to full double precision for
    // 1-norms up to theta13 (Higham 2005).
    constexpr double theta13 = 5.371920351148152;
    static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};

    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    Matrix a = m;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        a /= std::pow(2.0, squarings);
    }

    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    const Matrix v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Matrix r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

Vector vectorize(const Matrix& rho) {
    // Eigen is column-major, so the raw storage already is the
    // column-stacked vector.
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix devectorize(const Vector& v) {
    const auto len = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(len))));
    if (d * d != len) {
        throw std::domain_error("devectorize: length is not a perfect square");
    }
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix spre(const Matrix& a) { return kron(Matrix::Identity(a.rows(), a.cols()), a); }

Matrix spost(const Matrix& b) {
    return kron(b.transpose(), Matrix::Identity(b.rows(), b.cols()));
}

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
    if (rho.dim() != psi.dim()) throw std::domain_error("fidelity_pure: dimension mismatch");
    const Complex q = psi.amplitudes.adjoint() * rho.entries * psi.amplitudes;
    double val = q.real();
    if (val < 0.0 && val > -tol::hermiticity) val = 0.0;
    if (val < 0.0) throw std::domain_error("fidelity_pure: negative expectation value");
    return std::min(std::sqrt(val), 1.0);
}

}  // namespace magq
