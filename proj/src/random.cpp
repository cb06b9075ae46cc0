#include "modlab/random.hpp"

#include <cmath>
#include <numbers>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"

namespace modlab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::BadArgument, "ginibre needs positive dimensions");
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) z = rng.complex_normal();
  return g;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix q = ginibre(n, rng);
  // Modified Gram-Schmidt, two passes. R's diagonal comes out real positive,
  // which is exactly the phase normalization that makes Q Haar distributed.
  for (std::size_t j = 0; j < n; ++j) {
    auto v = q.column(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += std::conj(q(k, i)) * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= dot * q(k, i);
      }
    }
    const double len = norm2(v);
    for (auto& z : v) z /= len;
    q.set_column(j, v);
  }
  return q;
}

ComplexMatrix random_psd(std::size_t n, Rng& rng) { return ginibre(n, rng).gram(); }

ComplexMatrix random_contraction(std::size_t n, Rng& rng) {
  ComplexMatrix g = ginibre(n, rng);
  const double top = singular_values(g).front();
  const double shrink = rng.uniform();
  return (shrink / top) * g;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) { return ginibre(n, rng).hermitian_part(); }

ComplexMatrix random_low_rank_psd(std::size_t n, std::size_t rank, Rng& rng) {
  return ginibre(rank, n, rng).gram();
}

}  // namespace modlab
