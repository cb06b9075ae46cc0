#pragma once

#include <functional>
#include <vector>

#include "modlab/matrix.hpp"

namespace modlab {

/// Eigen-decomposition of a Hermitian matrix: `values` sorted descending,
/// `vectors` holds the matching orthonormal eigenvectors as columns.
struct SpectralData {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Thin SVD A = left * diag(values) * right^*, values descending,
/// k = min(rows, cols) columns in both factors.
struct SingularData {
  std::vector<double> values;
  ComplexMatrix left;
  ComplexMatrix right;
};

struct PolarData {
  ComplexMatrix unitary;
  ComplexMatrix modulus;
};

namespace tol {
/// ‖A - A^*‖_F must not exceed hermitian * max(1, ‖A‖_F).
inline constexpr double hermitian = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius mass is below jacobi * ‖A‖_F.
inline constexpr double jacobi = 1e-13;
inline constexpr int max_sweeps = 60;
/// Negative eigenvalues down to -clip * max(1, λ_max) are treated as roundoff.
inline constexpr double clip = 1e-10;
/// Singular values below svd_rank * σ_max count as zero.
inline constexpr double svd_rank = 1e-12;
/// Eigenvalues below pinv_rank * λ_max are dropped by pinv_sqrt.
inline constexpr double pinv_rank = 1e-10;
}  // namespace tol

using ScalarFunction = std::function<double(double)>;

bool is_hermitian(const ComplexMatrix& a);

/// Cyclic complex Jacobi. Throws NotHermitian or NoConvergence.
SpectralData hermitian_eig(const ComplexMatrix& a);

/// Eigenvalues only, descending.
std::vector<double> eigenvalues(const ComplexMatrix& a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eig(const ComplexMatrix& a);

/// SVD built on hermitian_eig of A^*A (or AA^* for wide A); left vectors are
/// aligned through A v_j / σ_j and completed orthonormally on the null space.
SingularData svd(const ComplexMatrix& a);

std::vector<double> singular_values(const ComplexMatrix& a);

/// (Z^*Z)^{1/2} for any (possibly rectangular) Z. Eigenvalues are taken as
/// ‖Z v_j‖ rather than square roots of Gram eigenvalues, which keeps
/// near-null directions accurate.
ComplexMatrix matrix_abs(const ComplexMatrix& z);

/// V f(Λ) V^* for Hermitian PSD A, after clipping roundoff-negative
/// eigenvalues to zero. Throws NotPsd below -clip_tol.
ComplexMatrix psd_function(const ComplexMatrix& a, const ScalarFunction& f);

ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// A = U |A| with U unitary (completed on ker |A|).
PolarData polar(const ComplexMatrix& a);

/// Moore-Penrose inverse of A^{1/2}.
ComplexMatrix pinv_sqrt(const ComplexMatrix& a);

/// [[a, b], [c, d]].
ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                     const ComplexMatrix& d);

/// Throws NotPsd if the Hermitian matrix has an eigenvalue below the clip tolerance.
void require_psd(const ComplexMatrix& a, const char* what);

}  // namespace modlab
