#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modlab/matrix.hpp"

namespace modlab {

/// Schatten exponent sentinel for the operator norm.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Choice of unitarily invariant norm.
///
/// Text grammar: "schatten:2.5", "schatten:inf", "kyfan:3", "op", "tr", "fro".
/// "uin" selects the all-unitarily-invariant-norms mode, which is not a
/// single norm: checks resolve it through Ky Fan dominance.
class NormSpec {
 public:
  enum class Kind { Schatten, KyFan, Operator, Trace, Frobenius, AllUnitarilyInvariant };

  static NormSpec schatten(double p);
  static NormSpec ky_fan(std::size_t k);
  static NormSpec op() { return NormSpec(Kind::Operator, kInfinity, 1); }
  static NormSpec trace() { return NormSpec(Kind::Trace, 1.0, 0); }
  static NormSpec frobenius() { return NormSpec(Kind::Frobenius, 2.0, 0); }
  static NormSpec all_uin() { return NormSpec(Kind::AllUnitarilyInvariant, 0.0, 0); }
  static NormSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool all_uin_mode() const noexcept { return kind_ == Kind::AllUnitarilyInvariant; }
  /// Schatten exponent for Schatten/Operator/Trace/Frobenius.
  double exponent() const noexcept { return p_; }
  std::size_t k() const noexcept { return k_; }
  bool is_schatten_family() const noexcept { return kind_ != Kind::KyFan && kind_ != Kind::AllUnitarilyInvariant; }

  std::string to_string() const;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;

 private:
  NormSpec(Kind kind, double p, std::size_t k) : kind_(kind), p_(p), k_(k) {}

  Kind kind_;
  double p_;
  std::size_t k_;
};

/// Descending singular values.
std::vector<double> singular_values_of(const ComplexMatrix& a);

/// Norm evaluated from descending singular values.
double norm_from_singular_values(std::span<const double> sigma, const NormSpec& spec);

double norm(const ComplexMatrix& a, const NormSpec& spec);

double schatten_norm(const ComplexMatrix& a, double p);
double ky_fan_norm(const ComplexMatrix& a, std::size_t k);

/// Result of comparing Ky Fan partial sums of two matrices.
struct FanComparison {
  double ratio = 0.0;     ///< max_k KyFan_k(A)/KyFan_k(B), or +inf
  std::size_t k = 1;      ///< index attaining the max
  double lhs = 0.0;       ///< KyFan_k(A) at that index
  double rhs = 0.0;       ///< KyFan_k(B) at that index
};

/// Least c with ‖A‖ <= c‖B‖ for every unitarily invariant norm (Fan
/// dominance). Singular values below 1e-12 * σ_max are treated as zero.
/// Throws Degenerate if both matrices vanish.
FanComparison fan_compare(const ComplexMatrix& a, const ComplexMatrix& b);

double weak_major_ratio(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace modlab
