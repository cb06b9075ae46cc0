#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace modlab {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Row-wise literal, e.g. {{0, 1}, {0, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// Matrix unit E_ij (1-based indices) in M_n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  /// u v^* for column vectors u, v.
  static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  std::vector<Complex> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> values);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  /// Z^* Z, computed so that the result is exactly Hermitian.
  ComplexMatrix gram() const;
  /// (M + M^*) / 2.
  ComplexMatrix hermitian_part() const;
  /// Top-left (rows x cols) sub-block starting at (r0, c0).
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

  Complex trace() const;
  double frobenius() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

/// Sum of a non-empty list of equally shaped matrices.
ComplexMatrix sum(std::span<const ComplexMatrix> list);

/// ‖A - B‖_F; shapes must agree.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Euclidean norm of a vector.
double norm2(std::span<const Complex> v);

/// Direct sum diag(a, 0_k).
ComplexMatrix pad_zeros(const ComplexMatrix& a, std::size_t extra);

}  // namespace modlab
