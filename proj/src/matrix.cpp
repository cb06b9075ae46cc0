#include "modlab/matrix.hpp"

#include <cmath>
#include <string>

#include "modlab/error.hpp"

namespace modlab {
namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > n || j > n) throw Error(ErrorCode::BadIndex, "matrix unit index out of range");
  ComplexMatrix m(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
  std::vector<Complex> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void ComplexMatrix::set_column(std::size_t j, std::span<const Complex> values) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::gram() const {
  ComplexMatrix g(cols_, cols_);
  for (std::size_t i = 0; i < cols_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rows_; ++k) s += std::conj((*this)(k, i)) * (*this)(k, j);
      if (i == j) s = s.real();
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  }
  return g;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  if (!square()) throw Error(ErrorCode::ShapeMismatch, "hermitian_part needs a square matrix");
  ComplexMatrix h(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    h(i, i) = (*this)(i, i).real();
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const Complex s = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      h(i, j) = s;
      h(j, i) = std::conj(s);
    }
  }
  return h;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                                   std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
  ComplexMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius() const {
  // Scaled accumulation keeps tiny and huge inputs from under/overflowing.
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z / scale);
  return scale * std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "product: inner dimensions differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix sum(std::span<const ComplexMatrix> list) {
  if (list.empty()) throw Error(ErrorCode::BadArgument, "sum of an empty matrix list");
  ComplexMatrix s = list.front();
  for (std::size_t k = 1; k < list.size(); ++k) s += list[k];
  return s;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius(); }

double norm2(std::span<const Complex> v) {
  double scale = 0.0;
  for (const auto& z : v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z / scale);
  return scale * std::sqrt(s);
}

ComplexMatrix pad_zeros(const ComplexMatrix& a, std::size_t extra) {
  ComplexMatrix p(a.rows() + extra, a.cols() + extra);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) p(i, j) = a(i, j);
  return p;
}

}  // namespace modlab
