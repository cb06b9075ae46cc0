#include "modlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "modlab/error.hpp"

namespace modlab {
namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.square()) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " needs a square matrix");
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  require_square(a, what);
  if (!is_hermitian(a)) throw Error(ErrorCode::NotHermitian, what);
}

// Permute values (and matching columns) into descending order.
void sort_descending(std::vector<double>& values, ComplexMatrix& vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] > values[r]; });
  std::vector<double> sorted(values.size());
  ComplexMatrix permuted(vectors.rows(), vectors.cols());
  for (std::size_t j = 0; j < order.size(); ++j) {
    sorted[j] = values[order[j]];
    for (std::size_t i = 0; i < vectors.rows(); ++i) permuted(i, j) = vectors(i, order[j]);
  }
  values = std::move(sorted);
  vectors = std::move(permuted);
}

// Fill columns [first, cols) of q with an orthonormal extension of columns [0, first).
void complete_orthonormal(ComplexMatrix& q, std::size_t first) {
  const std::size_t m = q.rows();
  std::size_t filled = first;
  for (std::size_t e = 0; e < m && filled < q.cols(); ++e) {
    std::vector<Complex> v(m);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < filled; ++i) {
        Complex dot = 0.0;
        for (std::size_t k = 0; k < m; ++k) dot += std::conj(q(k, i)) * v[k];
        for (std::size_t k = 0; k < m; ++k) v[k] -= dot * q(k, i);
      }
    }
    const double len = norm2(v);
    if (len < 1e-6) continue;
    for (auto& z : v) z /= len;
    q.set_column(filled++, v);
  }
}

ComplexMatrix recompose(const ComplexMatrix& vectors, const std::vector<double>& weights) {
  const std::size_t n = vectors.rows();
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = weights[j] * vectors(r, j);
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(vectors(c, j));
    }
  }
  return out.hermitian_part();
}

double clip_tolerance(double lambda_max) { return tol::clip * std::max(1.0, lambda_max); }

}  // namespace

bool is_hermitian(const ComplexMatrix& a) {
  if (!a.square()) return false;
  double defect = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) defect += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(defect) <= tol::hermitian * std::max(1.0, a.frobenius());
}

SpectralData hermitian_eig(const ComplexMatrix& input) {
  require_hermitian(input, "hermitian_eig");
  if (!input.all_finite()) throw Error(ErrorCode::BadArgument, "hermitian_eig: non-finite entry");
  const std::size_t n = input.rows();
  ComplexMatrix a = input.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius();

  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < tol::max_sweeps && !converged; ++sweep) {
    if (off_diagonal_mass(a) <= tol::jacobi * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cph = std::conj(phase);

        // A <- A J, V <- V J with J = [[c, s], [-s conj(ph), c conj(ph)]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(k, p);
          const Complex y = a(k, q);
          a(k, p) = c * x - s * cph * y;
          a(k, q) = s * x + c * cph * y;
          const Complex vx = v(k, p);
          const Complex vy = v(k, q);
          v(k, p) = c * vx - s * cph * vy;
          v(k, q) = s * vx + c * cph * vy;
        }
        // A <- J^* A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(p, k);
          const Complex y = a(q, k);
          a(p, k) = c * x - s * phase * y;
          a(q, k) = s * x + c * phase * y;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
  }
  if (!converged && off_diagonal_mass(a) > tol::jacobi * scale) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi exceeded " + std::to_string(tol::max_sweeps) + " sweeps (n=" + std::to_string(n) + ")");
  }

  SpectralData out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();
  out.vectors = std::move(v);
  sort_descending(out.values, out.vectors);
  return out;
}

std::vector<double> eigenvalues(const ComplexMatrix& a) { return hermitian_eig(a).values; }

double min_eig(const ComplexMatrix& a) { return hermitian_eig(a).values.back(); }

namespace {

// Gram matrix of a/max|a_ij|: same eigenvectors, no overflow for huge entries.
ComplexMatrix scaled_gram(const ComplexMatrix& a) {
  const double s = a.max_abs();
  if (s == 0.0 || !std::isfinite(s)) return a.gram();
  return (a * Complex(1.0 / s)).gram();
}

}  // namespace

SingularData svd(const ComplexMatrix& a) {
  if (a.empty()) throw Error(ErrorCode::BadArgument, "svd of an empty matrix");
  if (a.rows() < a.cols()) {
    SingularData t = svd(a.adjoint());
    return {std::move(t.values), std::move(t.right), std::move(t.left)};
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SpectralData eig = hermitian_eig(scaled_gram(a));
  SingularData out;
  out.right = std::move(eig.vectors);
  ComplexMatrix av = a * out.right;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = norm2(av.column(j));
  // ‖A v_j‖ can reorder nearly equal Gram eigenvalues; keep both factors in step.
  {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return out.values[l] > out.values[r]; });
    std::vector<double> values(n);
    ComplexMatrix right(n, n);
    ComplexMatrix av_sorted(m, n);
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = out.values[order[j]];
      for (std::size_t i = 0; i < n; ++i) right(i, j) = out.right(i, order[j]);
      for (std::size_t i = 0; i < m; ++i) av_sorted(i, j) = av(i, order[j]);
    }
    out.values = std::move(values);
    out.right = std::move(right);
    av = std::move(av_sorted);
  }

  const double cutoff = tol::svd_rank * out.values.front();
  out.left = ComplexMatrix(m, n);
  std::size_t rank = 0;
  while (rank < n && out.values[rank] > cutoff && out.values[rank] > 0.0) {
    for (std::size_t i = 0; i < m; ++i) out.left(i, rank) = av(i, rank) / out.values[rank];
    ++rank;
  }
  complete_orthonormal(out.left, rank);
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) { return svd(a).values; }

ComplexMatrix matrix_abs(const ComplexMatrix& z) {
  SpectralData eig = hermitian_eig(scaled_gram(z));
  ComplexMatrix zv = z * eig.vectors;
  std::vector<double> sigma(eig.values.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) sigma[j] = norm2(zv.column(j));
  return recompose(eig.vectors, sigma);
}

void require_psd(const ComplexMatrix& a, const char* what) {
  const auto values = eigenvalues(a);
  const double lmin = values.back();
  if (lmin < -clip_tolerance(values.front())) {
    throw Error(ErrorCode::NotPsd, std::string(what) + ": min eigenvalue " + std::to_string(lmin));
  }
}

ComplexMatrix psd_function(const ComplexMatrix& a, const ScalarFunction& f) {
  SpectralData eig = hermitian_eig(a);
  const double lmax = eig.values.front();
  if (eig.values.back() < -clip_tolerance(lmax)) {
    throw Error(ErrorCode::NotPsd, "psd_function: min eigenvalue " + std::to_string(eig.values.back()));
  }
  std::vector<double> mapped(eig.values.size());
  for (std::size_t j = 0; j < mapped.size(); ++j) mapped[j] = f(std::max(eig.values[j], 0.0));
  return recompose(eig.vectors, mapped);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  return psd_function(a, [](double t) { return std::sqrt(t); });
}

PolarData polar(const ComplexMatrix& a) {
  require_square(a, "polar");
  SingularData s = svd(a);
  PolarData out;
  out.unitary = s.left * s.right.adjoint();
  out.modulus = recompose(s.right, s.values);
  return out;
}

ComplexMatrix pinv_sqrt(const ComplexMatrix& a) {
  SpectralData eig = hermitian_eig(a);
  const double lmax = eig.values.front();
  if (eig.values.back() < -clip_tolerance(lmax)) {
    throw Error(ErrorCode::NotPsd, "pinv_sqrt: min eigenvalue " + std::to_string(eig.values.back()));
  }
  const double cutoff = tol::pinv_rank * lmax;
  std::vector<double> mapped(eig.values.size());
  for (std::size_t j = 0; j < mapped.size(); ++j) {
    mapped[j] = eig.values[j] > cutoff && eig.values[j] > 0.0 ? 1.0 / std::sqrt(eig.values[j]) : 0.0;
  }
  return recompose(eig.vectors, mapped);
}

ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                     const ComplexMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "block2: blocks are not conformable");
  }
  ComplexMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
  auto place = [&out](const ComplexMatrix& m, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(r0 + i, c0 + j) = m(i, j);
  };
  place(a, 0, 0);
  place(b, 0, a.cols());
  place(c, a.rows(), 0);
  place(d, a.rows(), a.cols());
  return out;
}

}  // namespace modlab
