#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modlab/json_io.hpp"
#include "modlab/matrix.hpp"
#include "modlab/norms.hpp"

namespace modlab {

inline constexpr double kDefaultTol = 1e-9;
/// rhs at or below this fraction of the scale makes a ratio undefined.
inline constexpr double kDegenerateFraction = 1e-12;

/// Outcome of one inequality lhs <= constant * rhs.
///
/// `ratio` is lhs / (constant * rhs); it is NaN when rhs is zero but the
/// verdict is still meaningful (eigenvalue and positivity checks).
struct CheckReport {
  std::string check_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  double ratio = 0.0;
  double margin = 0.0;
  bool pass = false;
  double scale = 1.0;
  std::string inputs_digest;
  /// Ky Fan index attaining the worst ratio in all-UIN mode.
  std::optional<std::size_t> kyfan_index;

  /// lhs / rhs without the constant.
  double raw_ratio() const { return ratio * constant; }
  /// margin / scale; negative means failure beyond rounding.
  double normalized_margin() const { return margin / scale; }
};

Json to_json(const CheckReport& r);

using CheckPair = std::pair<CheckReport, CheckReport>;

/// Scalar functions accepted by the concave/convex lemmas:
/// "sqrt", "pow:q", "identity", "shift:c".
class FunctionSpec {
 public:
  enum class Kind { Sqrt, Power, Identity, Shift };

  static FunctionSpec sqrt() { return FunctionSpec(Kind::Sqrt, 0.5); }
  static FunctionSpec power(double q);
  static FunctionSpec identity() { return FunctionSpec(Kind::Identity, 1.0); }
  static FunctionSpec shift(double c);
  static FunctionSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  bool concave() const noexcept;
  bool convex() const noexcept;
  double operator()(double t) const;
  std::string to_string() const;

 private:
  FunctionSpec(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

/// f applied to a PSD matrix through its spectrum.
ComplexMatrix apply(const FunctionSpec& f, const ComplexMatrix& a);

/// lhs <= constant * rhs for the norms of two matrices; all-UIN mode
/// compares Ky Fan partial sums. Throws Degenerate on a vanishing rhs.
CheckReport compare_norms(std::string check_id, const ComplexMatrix& lhs, const ComplexMatrix& rhs, double constant,
                          const NormSpec& spec, std::string digest, double tol = kDefaultTol);

/// lhs <= constant * rhs for precomputed scalars. With `allow_zero_rhs` a
/// zero rhs gives a NaN ratio and a verdict instead of Degenerate.
CheckReport compare_scalars(std::string check_id, double lhs, double rhs, double constant, std::string digest,
                            double tol = kDefaultTol, bool allow_zero_rhs = false, double scale_floor = 1.0);

// Equivalence of moduli. first = lower bound, second = upper bound.
CheckPair check_equiv_sym(const ComplexMatrix& z, const NormSpec& spec, double tol = kDefaultTol);
CheckPair check_equiv_qsym(const ComplexMatrix& z, const NormSpec& spec, double tol = kDefaultTol);
CheckPair check_sym_vs_qsym(const ComplexMatrix& z, const NormSpec& spec, double tol = kDefaultTol);

// Sums of matrices against sums of moduli.
CheckReport check_lee(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol = kDefaultTol);
CheckReport check_sum_vs_sym(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol = kDefaultTol);
CheckReport check_sum_vs_qsym(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol = kDefaultTol);
CheckReport check_bourin_lee(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol = kDefaultTol);
CheckReport check_corollary_24(const std::vector<ComplexMatrix>& a, std::size_t j, double tol = kDefaultTol);
CheckReport check_qsym_lee(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol = kDefaultTol);
CheckReport check_schatten_sym(const std::vector<ComplexMatrix>& a, double p, double tol = kDefaultTol);
CheckReport check_schatten_qsym(const std::vector<ComplexMatrix>& a, double p, double tol = kDefaultTol);
CheckReport check_frob_c2(const std::vector<ComplexMatrix>& a, double tol = kDefaultTol);
CheckReport check_cp_bound(const std::vector<ComplexMatrix>& a, double p, double tol = kDefaultTol);
CheckReport check_sym_endpoints(const std::vector<ComplexMatrix>& a, double p, double tol = kDefaultTol);
CheckReport check_qsym_endpoints(const std::vector<ComplexMatrix>& a, double p, double tol = kDefaultTol);

// Block matrices and contractions.
/// [[|A^*|, A], [A^*, |A|]]
ComplexMatrix modulus_block(const ComplexMatrix& a);
CheckReport check_block_positivity(const ComplexMatrix& a, double tol = kDefaultTol);
/// first: positivity of [[P, Z], [Z^*, P]] with Z = P^{1/2} K P^{1/2};
/// second: ‖Z‖ <= ‖P‖.
CheckPair check_eqdiag_dom(const ComplexMatrix& p, const ComplexMatrix& k, const NormSpec& spec,
                           double tol = kDefaultTol);

struct ContractionData {
  ComplexMatrix k;
  /// ‖X - A^{1/2} K B^{1/2}‖_F
  double defect = 0.0;
};

/// K = A^{†/2} X B^{†/2} for a PSD block [[A, X], [X^*, B]] with square halves.
ContractionData extract_contraction(const ComplexMatrix& block);

// Scalar and trace inequalities.
CheckReport check_one_inf_two(const ComplexMatrix& x, double tol = kDefaultTol);
/// first: |tr(A^*B)|^2 <= tr(|A||B|) tr(|A^*||B^*|); second: the AM-GM form.
CheckPair check_trace_cs(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);
CheckReport check_trace_qsym(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);
CheckReport check_mccarthy(const ComplexMatrix& a, const ComplexMatrix& b, double p, double tol = kDefaultTol);
CheckReport check_bourin_uchiyama(const ComplexMatrix& a, const ComplexMatrix& b, const NormSpec& spec,
                                  const FunctionSpec& f, double tol = kDefaultTol);
CheckReport check_aujla_silva(const ComplexMatrix& a, const ComplexMatrix& b, double alpha, const NormSpec& spec,
                              const FunctionSpec& f, double tol = kDefaultTol);
CheckReport check_lieb(const ComplexMatrix& x1, const ComplexMatrix& x2, const ComplexMatrix& y1,
                       const ComplexMatrix& y2, double tol = kDefaultTol);

/// λ_2(|X_θ|_qsym) / λ_2(|X_θ|_sym) against sqrt(2/(1 - cos θ)).
/// Passes when the two agree to 1e-8 relative; lhs is the computed value.
CheckReport check_no_constant(double theta);

/// [[cos θ, 0], [sin θ, 0]]
ComplexMatrix x_theta_matrix(double theta);

// Constants, exposed for search bounds and reports.
double lee_constant(std::size_t m, std::size_t n);
double schatten_sym_constant(double p);
double schatten_qsym_constant(double p);
double one_inf_two_constant(std::size_t n);
double frob_c2_constant(std::size_t m, std::size_t n);
double cp_constant(std::size_t m, std::size_t n, double p);
double sym_endpoint_constant(double p);
double qsym_endpoint_constant(std::size_t m, std::size_t n, double p);
/// ((2^{p/2} + 2^{1-p/2})/3)^{1/p}; p = ∞ gives sqrt 2.
double sym_lower_curve(double p);

}  // namespace modlab
