#ifndef MAGQ_DENSE_HPP
#define MAGQ_DENSE_HPP

#include <Eigen/Dense>
#include <complex>

namespace magq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Normalized state vector on a 2^N-dimensional Hilbert space.
/// Basis labels are |b_0 b_1 ...> with site 0 the leftmost (most significant)
/// bit and |1> the excited state.
struct PureState {
    Vector amplitudes;

    static PureState normalized(Vector v);
    int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// Hermitian, unit-trace, positive-semidefinite matrix. Use checked() to
/// enforce the invariants; the raw constructor is for values already known
/// to be valid.
struct DensityMatrix {
    Matrix entries;

    static DensityMatrix checked(Matrix m);
    int dim() const { return static_cast<int>(entries.rows()); }
};

/// sigma^- = |0><1| on `site`, identity elsewhere, on n_qubits qubits.
Matrix embed_lowering(int site, int n_qubits);

/// Kronecker product; dims multiply.
Matrix kron(const Matrix& a, const Matrix& b);

/// exp(m) by scaling-and-squaring with a degree-13 Pade kernel.
Matrix matrix_exponential(const Matrix& m);

/// Column-stacking vectorization. Under this convention the superoperator
/// of A.rho.B is B^T (x) A.
Vector vectorize(const Matrix& rho);
Matrix devectorize(const Vector& v);

/// Superoperator of rho -> A.rho (i.e. I (x) A).
Matrix spre(const Matrix& a);
/// Superoperator of rho -> rho.B (i.e. B^T (x) I).
Matrix spost(const Matrix& b);

/// sqrt(<psi| rho |psi>), clamped to [0, 1].
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

}  // namespace magq

#endif
