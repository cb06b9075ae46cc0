#include "modlab/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"

namespace modlab {
namespace {

// Above this exponent σ^p is evaluated relative to σ_1.
constexpr double kScaledExponent = 300.0;
constexpr double kFanZero = 1e-12;

double parse_number(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::BadNormParam, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

NormSpec NormSpec::schatten(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::BadNormParam, "Schatten exponent must be >= 1");
  return NormSpec(Kind::Schatten, p, 0);
}

NormSpec NormSpec::ky_fan(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::BadNormParam, "Ky Fan index must be >= 1");
  return NormSpec(Kind::KyFan, 0.0, k);
}

NormSpec NormSpec::parse(std::string_view text) {
  if (text == "op") return op();
  if (text == "tr") return trace();
  if (text == "fro") return frobenius();
  if (text == "uin") return all_uin();
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto head = text.substr(0, colon);
    const auto tail = text.substr(colon + 1);
    if (head == "schatten") return schatten(parse_number(tail));
    if (head == "kyfan") {
      const double k = parse_number(tail);
      if (k < 1 || k != std::floor(k) || std::isinf(k)) throw Error(ErrorCode::BadNormParam, "bad Ky Fan index");
      return ky_fan(static_cast<std::size_t>(k));
    }
  }
  throw Error(ErrorCode::BadNormParam, "unknown norm '" + std::string(text) + "'");
}

std::string NormSpec::to_string() const {
  switch (kind_) {
    case Kind::Operator: return "op";
    case Kind::Trace: return "tr";
    case Kind::Frobenius: return "fro";
    case Kind::AllUnitarilyInvariant: return "uin";
    case Kind::KyFan: return "kyfan:" + std::to_string(k_);
    case Kind::Schatten: {
      if (std::isinf(p_)) return "schatten:inf";
      std::ostringstream os;
      os.precision(17);
      os << p_;
      return "schatten:" + os.str();
    }
  }
  return "?";
}

std::vector<double> singular_values_of(const ComplexMatrix& a) { return singular_values(a); }

double norm_from_singular_values(std::span<const double> sigma, const NormSpec& spec) {
  if (spec.all_uin_mode()) {
    throw Error(ErrorCode::BadNormParam, "'uin' is a mode, not a single norm");
  }
  if (sigma.empty()) return 0.0;
  if (spec.kind() == NormSpec::Kind::KyFan) {
    if (spec.k() > sigma.size()) {
      throw Error(ErrorCode::BadNormParam,
                  "Ky Fan index " + std::to_string(spec.k()) + " exceeds " + std::to_string(sigma.size()));
    }
    double s = 0.0;
    for (std::size_t j = 0; j < spec.k(); ++j) s += sigma[j];
    return s;
  }
  const double p = spec.exponent();
  const double top = sigma.front();
  if (std::isinf(p) || top == 0.0) return top;
  if (p == 1.0) {
    double s = 0.0;
    for (double x : sigma) s += x;
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : sigma) s += (x / top) * (x / top);
    return top * std::sqrt(s);
  }
  if (p > kScaledExponent) {
    double s = 0.0;
    for (double x : sigma) s += std::pow(x / top, p);
    return top * std::pow(s, 1.0 / p);
  }
  double s = 0.0;
  for (double x : sigma) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}

double norm(const ComplexMatrix& a, const NormSpec& spec) {
  const auto sigma = singular_values(a);
  return norm_from_singular_values(sigma, spec);
}

double schatten_norm(const ComplexMatrix& a, double p) { return norm(a, NormSpec::schatten(p)); }

double ky_fan_norm(const ComplexMatrix& a, std::size_t k) { return norm(a, NormSpec::ky_fan(k)); }

FanComparison fan_compare(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "fan_compare: shapes differ");
  }
  auto sa = singular_values(a);
  auto sb = singular_values(b);
  const double cutoff = kFanZero * std::max(sa.front(), sb.front());
  for (auto* s : {&sa, &sb})
    for (double& x : *s)
      if (x <= cutoff) x = 0.0;
  if (sa.front() == 0.0 && sb.front() == 0.0) {
    throw Error(ErrorCode::Degenerate, "fan_compare: both matrices vanish");
  }
  FanComparison best;
  best.ratio = -1.0;
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    pa += sa[k];
    pb += sb[k];
    double r;
    if (pb == 0.0) {
      r = pa > 0.0 ? kInfinity : 0.0;
    } else {
      r = pa / pb;
    }
    if (r > best.ratio) best = {r, k + 1, pa, pb};
  }
  return best;
}

double weak_major_ratio(const ComplexMatrix& a, const ComplexMatrix& b) { return fan_compare(a, b).ratio; }

}  // namespace modlab
