#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "modlab/matrix.hpp"

namespace modlab {

/// Seeded source of uniforms and Gaussians.
///
/// The stream is fixed by the seed: mt19937_64 (as standardized in C++11)
/// supplies 64-bit words, uniforms take the top 53 bits, and normals come from
/// the Box-Muller transform on pairs of uniforms. The combination is named by
/// `algorithm_id()` and recorded in reports. `std::normal_distribution` is not
/// used because its output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr std::string_view algorithm_id() { return "mt19937_64+boxmuller53/v1"; }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  /// Standard real normal.
  double normal();
  /// Standard complex normal, E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Per-trial / per-restart seed derived from a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return master ^ index; }

/// i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
inline ComplexMatrix ginibre(std::size_t n, Rng& rng) { return ginibre(n, n, rng); }

/// Haar-distributed unitary (QR of a Ginibre matrix with positive R diagonal).
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

/// G^* G for Ginibre G.
ComplexMatrix random_psd(std::size_t n, Rng& rng);

/// Ginibre scaled to unit operator norm, then by a uniform factor in [0, 1].
ComplexMatrix random_contraction(std::size_t n, Rng& rng);

/// (G + G^*)/2 for Ginibre G.
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

/// Rank-r PSD matrix W W^* with W Ginibre n x r.
ComplexMatrix random_low_rank_psd(std::size_t n, std::size_t rank, Rng& rng);

}  // namespace modlab
