#include "modlab/inequalities.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"
#include "modlab/moduli.hpp"

namespace modlab {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_nonzero(std::initializer_list<const ComplexMatrix*> inputs, const char* what) {
  for (const auto* m : inputs)
    if (m->max_abs() > 0.0) return;
  throw Error(ErrorCode::Degenerate, std::string(what) + ": all inputs vanish");
}

void require_nonzero(const std::vector<ComplexMatrix>& inputs, const char* what) {
  if (inputs.empty()) throw Error(ErrorCode::BadArgument, std::string(what) + ": empty matrix list");
  for (const auto& m : inputs)
    if (m.max_abs() > 0.0) return;
  throw Error(ErrorCode::Degenerate, std::string(what) + ": all inputs vanish");
}

void require_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::BadNormParam, "exponent must be >= 1");
}

ComplexMatrix total(const std::vector<ComplexMatrix>& a) { return sum(a); }

template <class F>
ComplexMatrix sum_of(const std::vector<ComplexMatrix>& a, F&& f) {
  ComplexMatrix s = f(a.front());
  for (std::size_t i = 1; i < a.size(); ++i) s += f(a[i]);
  return s.hermitian_part();
}

double real_trace(const ComplexMatrix& a) { return a.trace().real(); }

double double_from(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::BadArgument, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

double op_norm(const ComplexMatrix& a) { return singular_values(a).front(); }

// Positivity of a Hermitian matrix as "0 <= λ_min".
CheckReport positivity(std::string id, const ComplexMatrix& h, std::string digest, double tol) {
  const double floor = std::max(1.0, op_norm(h));
  return compare_scalars(std::move(id), 0.0, min_eig(h), 1.0, std::move(digest), tol, true, floor);
}

}  // namespace

Json to_json(const CheckReport& r) {
  auto number = [](double x) -> Json {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return nullptr;
    return x > 0 ? "inf" : "-inf";
  };
  Json j = {{"check_id", r.check_id},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"constant", number(r.constant)},
            {"ratio", number(r.ratio)},
            {"margin", number(r.margin)},
            {"pass", r.pass},
            {"scale", number(r.scale)},
            {"inputs_digest", r.inputs_digest}};
  if (r.kyfan_index) j["kyfan_index"] = *r.kyfan_index;
  return j;
}

// ---------------------------------------------------------------- functions

FunctionSpec FunctionSpec::power(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw Error(ErrorCode::BadArgument, "power must be positive");
  return FunctionSpec(Kind::Power, q);
}

FunctionSpec FunctionSpec::shift(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::BadArgument, "shift must be nonnegative");
  return FunctionSpec(Kind::Shift, c);
}

FunctionSpec FunctionSpec::parse(std::string_view text) {
  if (text == "sqrt") return sqrt();
  if (text == "identity") return identity();
  if (text.starts_with("pow:")) return power(double_from(text.substr(4)));
  if (text.starts_with("shift:")) return shift(double_from(text.substr(6)));
  throw Error(ErrorCode::BadArgument, "unknown function '" + std::string(text) + "'");
}

bool FunctionSpec::concave() const noexcept {
  switch (kind_) {
    case Kind::Sqrt: return true;
    case Kind::Power: return param_ <= 1.0;
    case Kind::Identity:
    case Kind::Shift: return true;
  }
  return false;
}

bool FunctionSpec::convex() const noexcept {
  switch (kind_) {
    case Kind::Sqrt: return false;
    case Kind::Power: return param_ >= 1.0;
    case Kind::Identity:
    case Kind::Shift: return true;
  }
  return false;
}

double FunctionSpec::operator()(double t) const {
  switch (kind_) {
    case Kind::Sqrt: return std::sqrt(t);
    case Kind::Power: return std::pow(t, param_);
    case Kind::Identity: return t;
    case Kind::Shift: return t + param_;
  }
  return t;
}

std::string FunctionSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Sqrt: return "sqrt";
    case Kind::Identity: return "identity";
    case Kind::Power: os << "pow:" << param_; break;
    case Kind::Shift: os << "shift:" << param_; break;
  }
  return os.str();
}

ComplexMatrix apply(const FunctionSpec& f, const ComplexMatrix& a) {
  return psd_function(a, [&f](double t) { return f(t); });
}

// ---------------------------------------------------------------- reports

CheckReport compare_scalars(std::string check_id, double lhs, double rhs, double constant, std::string digest,
                            double tol, bool allow_zero_rhs, double scale_floor) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.scale = std::max({scale_floor, std::abs(lhs), std::abs(rhs)});
  if (!std::isfinite(r.scale)) r.scale = 1.0;
  r.margin = constant * rhs - lhs;
  r.pass = r.margin >= -tol * r.scale;
  r.inputs_digest = std::move(digest);
  if (std::abs(rhs) > kDegenerateFraction * r.scale) {
    r.ratio = lhs / (constant * rhs);
  } else if (allow_zero_rhs) {
    r.ratio = std::nan("");
  } else if (lhs > kDegenerateFraction * r.scale) {
    r.ratio = std::numeric_limits<double>::infinity();
  } else {
    throw Error(ErrorCode::Degenerate, r.check_id + ": both sides vanish");
  }
  return r;
}

CheckReport compare_norms(std::string check_id, const ComplexMatrix& lhs, const ComplexMatrix& rhs, double constant,
                          const NormSpec& spec, std::string digest, double tol) {
  if (!spec.all_uin_mode()) {
    return compare_scalars(std::move(check_id), norm(lhs, spec), norm(rhs, spec), constant, std::move(digest), tol);
  }
  const FanComparison fan = fan_compare(lhs, rhs);
  CheckReport r = compare_scalars(std::move(check_id), fan.lhs, fan.rhs, constant, std::move(digest), tol);
  r.kyfan_index = fan.k;
  return r;
}

// ---------------------------------------------------------------- constants

double lee_constant(std::size_t m, std::size_t n) { return std::sqrt(static_cast<double>(std::min(m, n))); }

double schatten_sym_constant(double p) { return std::pow(2.0, 1.0 - 1.0 / p); }

double schatten_qsym_constant(double p) { return p <= 2.0 ? 1.0 : std::pow(2.0, 0.5 - 1.0 / p); }

double one_inf_two_constant(std::size_t n) { return (1.0 + std::sqrt(static_cast<double>(n))) / 2.0; }

double frob_c2_constant(std::size_t m, std::size_t n) {
  return std::sqrt((1.0 + std::sqrt(static_cast<double>(std::min(m, n)))) / 2.0);
}

double cp_constant(std::size_t m, std::size_t n, double p) {
  return std::pow(static_cast<double>(std::min(m, n)), 0.5 - 0.5 / p);
}

double sym_endpoint_constant(double p) { return std::min(schatten_sym_constant(p), kSqrt2); }

double qsym_endpoint_constant(std::size_t m, std::size_t n, double p) { return cp_constant(m, 2 * n, p); }

double sym_lower_curve(double p) {
  if (std::isinf(p)) return kSqrt2;
  // 2^{p/2} + 2^{1-p/2} = 2^{p/2} (1 + 2^{1-p})
  return kSqrt2 * std::pow((1.0 + std::pow(2.0, 1.0 - p)) / 3.0, 1.0 / p);
}

// ---------------------------------------------------------------- moduli

CheckPair check_equiv_sym(const ComplexMatrix& z, const NormSpec& spec, double tol) {
  require_nonzero({&z}, "equiv_sym");
  const auto abs = usual_modulus(z);
  const auto sym = sym_modulus(z);
  const auto d = digest({z});
  return {compare_norms("equiv_sym.lower", abs, sym, 2.0, spec, d, tol),
          compare_norms("equiv_sym.upper", sym, abs, 1.0, spec, d, tol)};
}

CheckPair check_equiv_qsym(const ComplexMatrix& z, const NormSpec& spec, double tol) {
  require_nonzero({&z}, "equiv_qsym");
  const auto abs = usual_modulus(z);
  const auto qsym = qsym_modulus(z);
  const auto d = digest({z});
  return {compare_norms("equiv_qsym.lower", abs, qsym, kSqrt2, spec, d, tol),
          compare_norms("equiv_qsym.upper", qsym, abs, kSqrt2, spec, d, tol)};
}

CheckPair check_sym_vs_qsym(const ComplexMatrix& z, const NormSpec& spec, double tol) {
  require_nonzero({&z}, "sym_vs_qsym");
  const auto sym = sym_modulus(z);
  const auto qsym = qsym_modulus(z);
  const auto d = digest({z});
  return {compare_norms("sym_vs_qsym.lower", sym, qsym, 1.0, spec, d, tol),
          compare_norms("sym_vs_qsym.upper", qsym, sym, kSqrt2, spec, d, tol)};
}

// ---------------------------------------------------------------- sums

CheckReport check_lee(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol) {
  require_nonzero(a, "lee");
  const std::size_t n = a.front().rows();
  return compare_norms("lee", total(a), sum_of(a, usual_modulus), lee_constant(a.size(), n), spec, digest(a), tol);
}

CheckReport check_sum_vs_sym(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol) {
  require_nonzero(a, "sum_vs_sym");
  return compare_norms("sum_vs_sym", total(a), sum_of(a, sym_modulus), 2.0, spec, digest(a), tol);
}

CheckReport check_sum_vs_qsym(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol) {
  require_nonzero(a, "sum_vs_qsym");
  return compare_norms("sum_vs_qsym", total(a), sum_of(a, qsym_modulus), kSqrt2, spec, digest(a), tol);
}

CheckReport check_bourin_lee(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol) {
  require_nonzero(a, "bourin_lee");
  return compare_norms("bourin_lee", sym_modulus(total(a)), sum_of(a, sym_modulus), kSqrt2, spec, digest(a), tol);
}

CheckReport check_corollary_24(const std::vector<ComplexMatrix>& a, std::size_t j, double tol) {
  if (a.empty()) throw Error(ErrorCode::BadArgument, "corollary_24: empty matrix list");
  const std::size_t n = a.front().rows();
  if (1 + 3 * j > n) {
    throw Error(ErrorCode::BadIndex, "corollary_24: need 1+3j <= n, got j=" + std::to_string(j) +
                                         ", n=" + std::to_string(n));
  }
  const auto lhs = eigenvalues(sym_modulus(total(a)));
  const auto rhs = eigenvalues(sum_of(a, sym_modulus));
  return compare_scalars("corollary_24", lhs[3 * j], rhs[j], kSqrt2, digest(a), tol, true);
}

CheckReport check_qsym_lee(const std::vector<ComplexMatrix>& a, const NormSpec& spec, double tol) {
  require_nonzero(a, "qsym_lee");
  const std::size_t n = a.front().rows();
  return compare_norms("qsym_lee", qsym_modulus(total(a)), sum_of(a, qsym_modulus), lee_constant(a.size(), 2 * n),
                       spec, digest(a), tol);
}

CheckReport check_schatten_sym(const std::vector<ComplexMatrix>& a, double p, double tol) {
  require_nonzero(a, "schatten_sym");
  return compare_norms("schatten_sym", total(a), sum_of(a, sym_modulus), schatten_sym_constant(p),
                       NormSpec::schatten(p), digest(a), tol);
}

CheckReport check_schatten_qsym(const std::vector<ComplexMatrix>& a, double p, double tol) {
  require_nonzero(a, "schatten_qsym");
  return compare_norms("schatten_qsym", total(a), sum_of(a, qsym_modulus), schatten_qsym_constant(p),
                       NormSpec::schatten(p), digest(a), tol);
}

CheckReport check_frob_c2(const std::vector<ComplexMatrix>& a, double tol) {
  require_nonzero(a, "frob_c2");
  const std::size_t n = a.front().rows();
  return compare_norms("frob_c2", total(a), sum_of(a, usual_modulus), frob_c2_constant(a.size(), n),
                       NormSpec::frobenius(), digest(a), tol);
}

CheckReport check_cp_bound(const std::vector<ComplexMatrix>& a, double p, double tol) {
  require_nonzero(a, "cp_bound");
  const std::size_t n = a.front().rows();
  return compare_norms("cp_bound", total(a), sum_of(a, usual_modulus), cp_constant(a.size(), n, p),
                       NormSpec::schatten(p), digest(a), tol);
}

CheckReport check_sym_endpoints(const std::vector<ComplexMatrix>& a, double p, double tol) {
  require_nonzero(a, "sym_endpoints");
  return compare_norms("sym_endpoints", sym_modulus(total(a)), sum_of(a, sym_modulus), sym_endpoint_constant(p),
                       NormSpec::schatten(p), digest(a), tol);
}

CheckReport check_qsym_endpoints(const std::vector<ComplexMatrix>& a, double p, double tol) {
  require_nonzero(a, "qsym_endpoints");
  const std::size_t n = a.front().rows();
  return compare_norms("qsym_endpoints", qsym_modulus(total(a)), sum_of(a, qsym_modulus),
                       qsym_endpoint_constant(a.size(), n, p), NormSpec::schatten(p), digest(a), tol);
}

// ---------------------------------------------------------------- blocks

ComplexMatrix modulus_block(const ComplexMatrix& a) {
  return block2(usual_modulus(a.adjoint()), a, a.adjoint(), usual_modulus(a));
}

CheckReport check_block_positivity(const ComplexMatrix& a, double tol) {
  if (!a.square()) throw Error(ErrorCode::ShapeMismatch, "block_positivity needs a square matrix");
  return positivity("block_positivity", modulus_block(a), digest({a}), tol);
}

CheckPair check_eqdiag_dom(const ComplexMatrix& p, const ComplexMatrix& k, const NormSpec& spec, double tol) {
  require_psd(p, "eqdiag_dom");
  if (k.rows() != p.rows() || k.cols() != p.cols()) throw Error(ErrorCode::ShapeMismatch, "eqdiag_dom: K shape");
  if (op_norm(k) > 1.0 + 1e-8) throw Error(ErrorCode::BadArgument, "eqdiag_dom: K is not a contraction");
  require_nonzero({&p}, "eqdiag_dom");
  const auto root = psd_sqrt(p);
  const auto z = root * k * root;
  const auto d = digest({p, k});
  return {positivity("eqdiag_dom.positivity", block2(p, z, z.adjoint(), p), d, tol),
          compare_norms("eqdiag_dom", z, p, 1.0, spec, d, tol)};
}

ContractionData extract_contraction(const ComplexMatrix& block) {
  if (!block.square() || block.rows() % 2 != 0) {
    throw Error(ErrorCode::ShapeMismatch, "extract_contraction needs an even square block");
  }
  require_psd(block, "extract_contraction");
  const std::size_t n = block.rows() / 2;
  const auto a = block.block(0, 0, n, n).hermitian_part();
  const auto x = block.block(0, n, n, n);
  const auto b = block.block(n, n, n, n).hermitian_part();
  ContractionData out;
  out.k = pinv_sqrt(a) * x * pinv_sqrt(b);
  out.defect = (x - psd_sqrt(a) * out.k * psd_sqrt(b)).frobenius();
  return out;
}

// ---------------------------------------------------------------- scalar forms

CheckReport check_one_inf_two(const ComplexMatrix& x, double tol) {
  require_psd(x, "one_inf_two");
  require_nonzero({&x}, "one_inf_two");
  const auto ev = eigenvalues(x);
  double trace = 0.0;
  double squares = 0.0;
  for (double l : ev) {
    const double v = std::max(l, 0.0);
    trace += v;
    squares += v * v;
  }
  return compare_scalars("one_inf_two", trace * std::max(ev.front(), 0.0), squares,
                         one_inf_two_constant(x.rows()), digest({x}), tol);
}

CheckPair check_trace_cs(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_nonzero({&a, &b}, "trace_cs");
  const double inner = std::abs((a.adjoint() * b).trace());
  const double right = real_trace(usual_modulus(a) * usual_modulus(b));
  const double left = real_trace(usual_modulus(a.adjoint()) * usual_modulus(b.adjoint()));
  const auto d = digest({a, b});
  return {compare_scalars("trace_cs", inner * inner, right * left, 1.0, d, tol, true),
          compare_scalars("trace_cs.amgm", inner, (right + left) / 2.0, 1.0, d, tol, true)};
}

CheckReport check_trace_qsym(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  require_nonzero({&a, &b}, "trace_qsym");
  const double inner = std::abs((a.adjoint() * b).trace());
  const double rhs = real_trace(qsym_modulus(a) * qsym_modulus(b));
  return compare_scalars("trace_qsym", inner, rhs, 1.0, digest({a, b}), tol, true);
}

CheckReport check_mccarthy(const ComplexMatrix& a, const ComplexMatrix& b, double p, double tol) {
  require_exponent(p);
  if (std::isinf(p)) throw Error(ErrorCode::BadNormParam, "mccarthy needs a finite exponent");
  require_psd(a, "mccarthy");
  require_psd(b, "mccarthy");
  require_nonzero({&a, &b}, "mccarthy");
  auto trace_power = [p](const ComplexMatrix& m) {
    double s = 0.0;
    for (double l : eigenvalues(m)) s += std::pow(std::max(l, 0.0), p);
    return s;
  };
  return compare_scalars("mccarthy", trace_power(a) + trace_power(b), trace_power(a + b), 1.0, digest({a, b}), tol);
}

CheckReport check_bourin_uchiyama(const ComplexMatrix& a, const ComplexMatrix& b, const NormSpec& spec,
                                  const FunctionSpec& f, double tol) {
  if (!f.concave()) throw Error(ErrorCode::BadArgument, "bourin_uchiyama needs a concave function");
  require_psd(a, "bourin_uchiyama");
  require_psd(b, "bourin_uchiyama");
  require_nonzero({&a, &b}, "bourin_uchiyama");
  return compare_norms("bourin_uchiyama", apply(f, (a + b).hermitian_part()), apply(f, a) + apply(f, b), 1.0, spec,
                       digest({a, b}), tol);
}

CheckReport check_aujla_silva(const ComplexMatrix& a, const ComplexMatrix& b, double alpha, const NormSpec& spec,
                              const FunctionSpec& f, double tol) {
  if (!f.convex()) throw Error(ErrorCode::BadArgument, "aujla_silva needs a convex function");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::BadArgument, "aujla_silva: alpha outside [0, 1]");
  require_psd(a, "aujla_silva");
  require_psd(b, "aujla_silva");
  require_nonzero({&a, &b}, "aujla_silva");
  const auto mix = (Complex(alpha) * a + Complex(1.0 - alpha) * b).hermitian_part();
  const auto avg = Complex(alpha) * apply(f, a) + Complex(1.0 - alpha) * apply(f, b);
  return compare_norms("aujla_silva", apply(f, mix), avg, 1.0, spec, digest({a, b}), tol);
}

CheckReport check_lieb(const ComplexMatrix& x1, const ComplexMatrix& x2, const ComplexMatrix& y1,
                       const ComplexMatrix& y2, double tol) {
  for (const auto* m : {&x1, &x2, &y1, &y2}) require_psd(*m, "lieb");
  require_nonzero({&x1, &x2, &y1, &y2}, "lieb");
  auto pairing = [](const ComplexMatrix& x, const ComplexMatrix& y) { return real_trace(psd_sqrt(x) * psd_sqrt(y)); };
  const auto mx = (Complex(0.5) * (x1 + x2)).hermitian_part();
  const auto my = (Complex(0.5) * (y1 + y2)).hermitian_part();
  const double lhs = (pairing(x1, y1) + pairing(x2, y2)) / 2.0;
  return compare_scalars("lieb", lhs, pairing(mx, my), 1.0, digest({x1, x2, y1, y2}), tol, true);
}

// ---------------------------------------------------------------- no constant

ComplexMatrix x_theta_matrix(double theta) {
  ComplexMatrix x(2, 2);
  x(0, 0) = std::cos(theta);
  x(1, 0) = std::sin(theta);
  return x;
}

CheckReport check_no_constant(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2)) {
    throw Error(ErrorCode::BadArgument, "no_constant: theta outside (0, pi/2]");
  }
  const auto x = x_theta_matrix(theta);
  const double computed = eigenvalues(qsym_modulus(x))[1] / eigenvalues(sym_modulus(x))[1];
  // sqrt(2/(1 - cos θ)) with 1 - cos θ = 2 sin^2(θ/2)
  const double closed = 1.0 / std::sin(theta / 2.0);
  constexpr double kAgreement = 1e-8;
  CheckReport r;
  r.check_id = "no_constant";
  r.lhs = computed;
  r.rhs = closed;
  r.constant = 1.0;
  r.ratio = computed / closed;
  r.scale = closed;
  r.margin = kAgreement * closed - std::abs(computed - closed);
  r.pass = r.margin >= 0.0;
  r.inputs_digest = digest({x});
  return r;
}

}  // namespace modlab
