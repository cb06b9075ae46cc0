#include "modlab/moduli.hpp"

#include <numbers>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"

namespace modlab {
namespace {

void require_square(const ComplexMatrix& z, const char* what) {
  if (!z.square() || z.empty()) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " needs a square matrix");
}

}  // namespace

std::string_view to_string(ModulusKind kind) noexcept {
  switch (kind) {
    case ModulusKind::Usual: return "usual";
    case ModulusKind::ArithmeticSym: return "sym";
    case ModulusKind::QuadraticSym: return "qsym";
  }
  return "?";
}

ComplexMatrix usual_modulus(const ComplexMatrix& z) {
  require_square(z, "usual_modulus");
  return matrix_abs(z);
}

ComplexMatrix sym_modulus(const ComplexMatrix& z) {
  require_square(z, "sym_modulus");
  return (0.5 * (matrix_abs(z) + matrix_abs(z.adjoint()))).hermitian_part();
}

ComplexMatrix qsym_modulus(const ComplexMatrix& z) {
  require_square(z, "qsym_modulus");
  const std::size_t n = z.rows();
  const ComplexMatrix stacked = block2(z, ComplexMatrix::zeros(n, 0), z.adjoint(), ComplexMatrix::zeros(n, 0));
  return matrix_abs((std::numbers::sqrt2 / 2.0) * stacked);
}

ComplexMatrix modulus(const ComplexMatrix& z, ModulusKind kind) {
  switch (kind) {
    case ModulusKind::Usual: return usual_modulus(z);
    case ModulusKind::ArithmeticSym: return sym_modulus(z);
    case ModulusKind::QuadraticSym: return qsym_modulus(z);
  }
  throw Error(ErrorCode::BadArgument, "unknown modulus kind");
}

CartesianParts cartesian(const ComplexMatrix& z) {
  require_square(z, "cartesian");
  const ComplexMatrix adj = z.adjoint();
  return {(0.5 * (z + adj)).hermitian_part(), (Complex(0.0, -0.5) * (z - adj)).hermitian_part()};
}

ComplexMatrix hermitian_dilation(const ComplexMatrix& a) {
  return block2(ComplexMatrix::zeros(a.rows(), a.rows()), a, a.adjoint(),
                ComplexMatrix::zeros(a.cols(), a.cols()));
}

ComplexMatrix phi_embedding(const ComplexMatrix& a) {
  require_square(a, "phi_embedding");
  const ComplexMatrix zero = ComplexMatrix::zeros(a.rows(), a.rows());
  return (std::numbers::sqrt2 / 2.0) * block2(a, zero, a.adjoint(), zero);
}

}  // namespace modlab
