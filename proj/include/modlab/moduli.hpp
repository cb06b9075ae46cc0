#pragma once

#include <string_view>

#include "modlab/matrix.hpp"

namespace modlab {

enum class ModulusKind { Usual, ArithmeticSym, QuadraticSym };

std::string_view to_string(ModulusKind kind) noexcept;

/// |Z| = (Z^*Z)^{1/2}.
ComplexMatrix usual_modulus(const ComplexMatrix& z);

/// |Z|_sym = (|Z| + |Z^*|)/2.
ComplexMatrix sym_modulus(const ComplexMatrix& z);

/// |Z|_qsym = ((|Z|^2 + |Z^*|^2)/2)^{1/2}.
///
/// Evaluated as the modulus of the stacked 2n x n matrix [Z; Z^*]/sqrt(2),
/// whose Gram matrix is exactly (Z^*Z + ZZ^*)/2. The Cartesian form
/// sqrt((Re Z)^2 + (Im Z)^2) is only used as a cross-check.
ComplexMatrix qsym_modulus(const ComplexMatrix& z);

ComplexMatrix modulus(const ComplexMatrix& z, ModulusKind kind);

struct CartesianParts {
  ComplexMatrix real;  ///< (Z + Z^*)/2
  ComplexMatrix imag;  ///< (Z - Z^*)/(2i)
};

CartesianParts cartesian(const ComplexMatrix& z);

/// [[0, A], [A^*, 0]].
ComplexMatrix hermitian_dilation(const ComplexMatrix& a);

/// (1/sqrt 2) [[A, 0], [A^*, 0]]; |Phi(A)| = diag(|A|_qsym, 0).
ComplexMatrix phi_embedding(const ComplexMatrix& a);

}  // namespace modlab
