#include "modlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"
#include "modlab/moduli.hpp"
#include "modlab/norms.hpp"

namespace modlab {
namespace {

using Relation = Expectation::Relation;

constexpr double kSqrt2 = std::numbers::sqrt2;

Expectation near(std::string name, double value, double tol) { return {std::move(name), value, tol, Relation::Near}; }

ComplexMatrix real_outer(const std::vector<double>& u, const std::vector<double>& v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

ComplexMatrix sum_sym(const std::vector<ComplexMatrix>& a) {
  ComplexMatrix s = sym_modulus(a.front());
  for (std::size_t i = 1; i < a.size(); ++i) s += sym_modulus(a[i]);
  return s.hermitian_part();
}

ComplexMatrix sum_abs(const std::vector<ComplexMatrix>& a) {
  ComplexMatrix s = usual_modulus(a.front());
  for (std::size_t i = 1; i < a.size(); ++i) s += usual_modulus(a[i]);
  return s.hermitian_part();
}

double op(const ComplexMatrix& a) { return norm(a, NormSpec::op()); }

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Tight-check tags: "check", "check@norm", "check@j=J", "check@theta".
struct Tag {
  std::string check;
  std::string param;
};

Tag split_tag(std::string_view tag) {
  const auto at = tag.find('@');
  if (at == std::string_view::npos) return {std::string(tag), ""};
  return {std::string(tag.substr(0, at)), std::string(tag.substr(at + 1))};
}

double exponent_of(const std::string& param) {
  const NormSpec spec = NormSpec::parse(param);
  if (!spec.is_schatten_family()) throw Error(ErrorCode::BadNormParam, "expected a Schatten norm, got " + param);
  return spec.exponent();
}

}  // namespace

std::string CatalogEntry::label() const {
  std::string s = id;
  if (params.empty()) return s;
  s += "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) s += ",";
    first = false;
    s += k + "=" + format_number(v);
  }
  return s + ")";
}

// ---------------------------------------------------------------- entries

CatalogEntry e12(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadArgument, "e12 needs n >= 2");
  CatalogEntry e;
  e.id = "e12";
  e.params = {{"n", static_cast<double>(n)}};
  e.matrices = {ComplexMatrix::unit(n, 1, 2)};
  e.expected = {near("sym_op", 0.5, 1e-12),          near("qsym_trace", kSqrt2, 1e-12),
                near("sym_eig_1", 0.5, 1e-12),       near("sym_eig_2", 0.5, 1e-12),
                near("qsym_eig_1", kSqrt2 / 2, 1e-12), near("qsym_eig_2", kSqrt2 / 2, 1e-12),
                near("abs_op", 1.0, 1e-12)};
  if (n > 2) e.expected.push_back(near("sym_eig_3", 0.0, 1e-12));
  e.tight_checks = {"equiv_sym.lower@op",   "equiv_qsym.lower@op",   "equiv_qsym.upper@tr",
                    "sym_vs_qsym.upper@op", "sum_vs_sym@op",         "sum_vs_qsym@op",
                    "schatten_sym@schatten:3", "schatten_qsym@fro", "schatten_qsym@op"};
  e.provenance = "nilpotent unit matrix E_12; extremal for the modulus equivalences";
  return e;
}

CatalogEntry sharp3x3() {
  const double r = 1.0 / std::sqrt(3.0);
  const std::vector<double> u = {r, r, r}, v = {r, -r, -r}, x = {-r, r, -r}, y = {r, r, -r};
  CatalogEntry e;
  e.id = "sharp3x3";
  e.matrices = {real_outer(u, v), real_outer(x, y)};
  e.expected = {near("sum_sym_op", 2.0 / 3.0, 1e-10),
                near("sum_sym_minus_two_thirds_identity", 0.0, 1e-12),
                near("sym_of_sum_op", 2.0 * kSqrt2 / 3.0, 1e-10),
                near("sym_of_sum_eig_1", 2.0 * kSqrt2 / 3.0, 1e-10),
                near("sym_of_sum_eig_2", kSqrt2 / 3.0, 1e-10),
                near("sym_of_sum_eig_3", kSqrt2 / 3.0, 1e-10),
                near("ratio_op", kSqrt2, 1e-10),
                near("ratio_schatten_4", sym_lower_curve(4.0), 1e-10)};
  e.tight_checks = {"bourin_lee@op", "corollary_24@j=0", "sym_endpoints@op"};
  e.provenance = "rank-one pair A = uv^T, B = xy^T in M_3 attaining sqrt 2 in the Bourin-Lee inequality";
  return e;
}

CatalogEntry example_114() {
  CatalogEntry e;
  e.id = "example_114";
  e.matrices = {
      ComplexMatrix{{Complex(-0.773354, -3.706913), Complex(-0.605203, -0.251180)},
                    {Complex(0.302923, 1.869626), Complex(0.296552, 0.139226)}},
      ComplexMatrix{{Complex(-0.614194, 0.304837), Complex(-0.919027, 0.530163)},
                    {Complex(2.687653, 0.304749), Complex(4.176505, 0.211368)}},
  };
  e.expected = {near("ratio_op", 1.1789471123, 1e-6), {"ratio_op", kSqrt2, 0.0, Relation::Less}};
  e.provenance = "2x2 complex pair with operator-norm Bourin-Lee ratio about 1.1789 (lower bound for c(m,2))";
  return e;
}

CatalogEntry expansive_counterexample() {
  const ComplexMatrix x1{{-1, -1, 0}, {1, 1, 0}, {-1, -1, 1}};
  CatalogEntry e;
  e.id = "expansive_counterexample";
  e.matrices = {x1, ComplexMatrix::identity(3) - x1};
  e.expected = {near("eig_1", 5.11522680, 1e-6),
                near("eig_2", 0.88353915, 1e-6),
                near("eig_3", 0.70372677, 1e-6),
                {"eig_2", 1.0, 0.0, Relation::Less},
                near("sum_minus_identity", 0.0, 0.0)};
  e.provenance = "X1 + X2 = I_3 with lambda_2(|X1| + |X2|) < 1";
  return e;
}

CatalogEntry lee_sharp_family(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::BadArgument, "lee_sharp_family needs m, n >= 1");
  const std::size_t l = std::min(m, n);
  CatalogEntry e;
  e.id = "lee_sharp_family";
  e.params = {{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}};
  for (std::size_t k = 1; k <= m; ++k) {
    e.matrices.push_back(k <= l ? ComplexMatrix::unit(n, 1, k) : ComplexMatrix::zeros(n, n));
  }
  const double root = std::sqrt(static_cast<double>(l));
  e.expected = {near("sum_op", root, 1e-9), near("sum_abs_op", 1.0, 1e-9), near("ratio_op", root, 1e-9)};
  e.tight_checks = {"lee@op", "lee@uin"};
  e.provenance = "A_k = E_1k for k <= min(m,n); attains sqrt(min(m,n)) in Lee's inequality";
  return e;
}

CatalogEntry frobenius_sharp_family(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::BadArgument, "frobenius_sharp_family needs m, n >= 1");
  const std::size_t d = std::min(m, n);
  const double t = 1.0 / (std::sqrt(static_cast<double>(d)) + 1.0);
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = (i == j) ? 1.0 : t;
  // Hermitian root: V^*V = V^2 = G, so the columns v_k have Gram matrix G.
  const ComplexMatrix v = psd_sqrt(g);
  CatalogEntry e;
  e.id = "frobenius_sharp_family";
  e.params = {{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}};
  for (std::size_t k = 0; k < m; ++k) {
    ComplexMatrix a(n, n);
    if (k < d)
      for (std::size_t j = 0; j < d; ++j) a(0, j) = std::conj(v(j, k));
    e.matrices.push_back(a);
  }
  const double sq = (1.0 + std::sqrt(static_cast<double>(d))) / 2.0;
  e.expected = {near("ratio_fro", std::sqrt(sq), 1e-9), near("ratio_fro_squared", sq, 1e-9)};
  e.tight_checks = {"frob_c2"};
  e.provenance = "rank-one A_k = e_1 v_k^* with Gram matrix (1-t)I + tJ, t = 1/(sqrt d + 1)";
  return e;
}

CatalogEntry c2_counterexample() {
  CatalogEntry e;
  e.id = "c2_counterexample";
  e.matrices = {ComplexMatrix{{0, -1}, {1, -4}}, ComplexMatrix{{-16, -7}, {9, 4}}};
  e.expected = {near("sym_ratio_fro", 1.0144, 5e-4), {"sym_ratio_fro", 1.0, 0.0, Relation::Greater}};
  e.provenance = "real 2x2 pair showing the Frobenius sym triangle constant exceeds 1";
  return e;
}

CatalogEntry x_theta(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2)) {
    throw Error(ErrorCode::BadArgument, "x_theta needs theta in (0, pi/2]");
  }
  const double c = std::cos(theta);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);  // (1 - cos θ)/2
  CatalogEntry e;
  e.id = "x_theta";
  e.params = {{"theta", theta}};
  e.matrices = {x_theta_matrix(theta)};
  e.expected = {near("sym_eig_1", (1 + c) / 2, 1e-10),      near("sym_eig_2", s2, 1e-10),
                near("qsym_eig_1", std::sqrt((1 + c) / 2), 1e-10), near("qsym_eig_2", std::sqrt(s2), 1e-10),
                near("lambda2_ratio", 1.0 / std::sin(theta / 2), 1e-8)};
  e.tight_checks = {"no_constant"};
  e.provenance = "X_theta = [[cos, 0], [sin, 0]]; lambda_2 ratio of qsym to sym diverges as theta -> 0";
  return e;
}

CatalogEntry lemma61_extremizer(std::size_t n, double a) {
  if (n < 1 || !(a > 0.0)) throw Error(ErrorCode::BadArgument, "lemma61_extremizer needs n >= 1, a > 0");
  std::vector<double> diag(n, a / (std::sqrt(static_cast<double>(n)) + 1.0));
  diag[0] = a;
  CatalogEntry e;
  e.id = "lemma61_extremizer";
  e.params = {{"n", static_cast<double>(n)}, {"a", a}};
  e.matrices = {ComplexMatrix::diagonal(diag)};
  e.expected = {near("one_inf_two_ratio", 1.0, 1e-10),
                near("raw_ratio", one_inf_two_constant(n), 1e-10)};
  e.tight_checks = {"one_inf_two"};
  e.provenance = "diag(a, a/(sqrt n + 1), ...) attains (1 + sqrt n)/2 in ||X||_1 ||X||_inf <= c ||X||_2^2";
  return e;
}

// ---------------------------------------------------------------- index

const std::vector<CatalogInfo>& catalog_index() {
  static const std::vector<CatalogInfo> index = [] {
    std::vector<CatalogInfo> out;
    auto add = [&](const CatalogEntry& e, std::string dim) {
      out.push_back({e.id, std::move(dim), e.provenance, e.tight_checks});
    };
    add(e12(2), "n x n, n >= 2");
    add(sharp3x3(), "2 matrices, 3x3");
    add(example_114(), "2 matrices, 2x2");
    add(expansive_counterexample(), "2 matrices, 3x3");
    add(lee_sharp_family(3, 5), "m matrices, n x n");
    add(frobenius_sharp_family(3, 3), "m matrices, n x n");
    add(c2_counterexample(), "2 matrices, 2x2");
    add(x_theta(1.0), "1 matrix, 2x2");
    add(lemma61_extremizer(4), "1 matrix, n x n");
    return out;
  }();
  return index;
}

bool is_catalog_id(std::string_view id) {
  return std::any_of(catalog_index().begin(), catalog_index().end(), [&](const auto& c) { return c.id == id; });
}

std::vector<CatalogEntry> default_instances(std::string_view id) {
  std::vector<CatalogEntry> out;
  const bool all = id == "all";
  if (all || id == "e12")
    for (std::size_t n : {2, 5}) out.push_back(e12(n));
  if (all || id == "sharp3x3") out.push_back(sharp3x3());
  if (all || id == "example_114") out.push_back(example_114());
  if (all || id == "expansive_counterexample") out.push_back(expansive_counterexample());
  if (all || id == "lee_sharp_family")
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 5}, {5, 3}, {4, 4}}) out.push_back(lee_sharp_family(m, n));
  if (all || id == "frobenius_sharp_family")
    for (std::size_t d = 2; d <= 6; ++d) out.push_back(frobenius_sharp_family(d, d));
  if (all || id == "c2_counterexample") out.push_back(c2_counterexample());
  if (all || id == "x_theta")
    for (double t : {std::numbers::pi / 2, std::numbers::pi / 3, 1.0, 0.3, 0.1, 0.03, 0.01}) out.push_back(x_theta(t));
  if (all || id == "lemma61_extremizer")
    for (std::size_t n = 2; n <= 8; ++n) out.push_back(lemma61_extremizer(n));
  if (out.empty()) throw Error(ErrorCode::BadArgument, "unknown example '" + std::string(id) + "'");
  return out;
}

// ---------------------------------------------------------------- quantities

std::map<std::string, double> compute_quantities(const CatalogEntry& e) {
  std::map<std::string, double> q;
  const auto& a = e.matrices;
  if (e.id == "e12" || e.id == "x_theta") {
    const auto sym = sym_modulus(a[0]);
    const auto qsym = qsym_modulus(a[0]);
    const auto es = eigenvalues(sym);
    const auto eq = eigenvalues(qsym);
    for (std::size_t i = 0; i < es.size(); ++i) {
      q["sym_eig_" + std::to_string(i + 1)] = es[i];
      q["qsym_eig_" + std::to_string(i + 1)] = eq[i];
    }
    q["sym_op"] = op(sym);
    q["qsym_trace"] = norm(qsym, NormSpec::trace());
    q["abs_op"] = op(usual_modulus(a[0]));
    if (e.id == "x_theta") q["lambda2_ratio"] = check_no_constant(e.params.at("theta")).lhs;
  } else if (e.id == "sharp3x3") {
    const auto s = sum_sym(a);
    const auto sym_total = sym_modulus(sum(a));
    q["sum_sym_op"] = op(s);
    q["sum_sym_minus_two_thirds_identity"] = (s - Complex(2.0 / 3.0) * ComplexMatrix::identity(3)).max_abs();
    q["sym_of_sum_op"] = op(sym_total);
    const auto ev = eigenvalues(sym_total);
    for (std::size_t i = 0; i < ev.size(); ++i) q["sym_of_sum_eig_" + std::to_string(i + 1)] = ev[i];
    q["ratio_op"] = q["sym_of_sum_op"] / q["sum_sym_op"];
    q["ratio_schatten_4"] = schatten_norm(sym_total, 4) / schatten_norm(s, 4);
  } else if (e.id == "example_114") {
    q["ratio_op"] = op(sym_modulus(sum(a))) / op(sum_sym(a));
  } else if (e.id == "expansive_counterexample") {
    const auto ev = eigenvalues(sum_abs(a));
    for (std::size_t i = 0; i < ev.size(); ++i) q["eig_" + std::to_string(i + 1)] = ev[i];
    q["sum_minus_identity"] = (sum(a) - ComplexMatrix::identity(3)).max_abs();
  } else if (e.id == "lee_sharp_family") {
    q["sum_op"] = op(sum(a));
    q["sum_abs_op"] = op(sum_abs(a));
    q["ratio_op"] = q["sum_op"] / q["sum_abs_op"];
  } else if (e.id == "frobenius_sharp_family") {
    const double r = norm(sum(a), NormSpec::frobenius()) / norm(sum_abs(a), NormSpec::frobenius());
    q["ratio_fro"] = r;
    q["ratio_fro_squared"] = r * r;
  } else if (e.id == "c2_counterexample") {
    q["sym_ratio_fro"] = norm(sym_modulus(sum(a)), NormSpec::frobenius()) / norm(sum_sym(a), NormSpec::frobenius());
  } else if (e.id == "lemma61_extremizer") {
    const auto r = check_one_inf_two(a[0]);
    q["one_inf_two_ratio"] = r.ratio;
    q["raw_ratio"] = r.raw_ratio();
  } else {
    throw Error(ErrorCode::BadArgument, "no quantities for '" + e.id + "'");
  }
  return q;
}

CheckReport run_check_tag(const CatalogEntry& e, std::string_view text, double tol) {
  const Tag tag = split_tag(text);
  const auto& a = e.matrices;
  const auto& c = tag.check;
  auto spec = [&] { return NormSpec::parse(tag.param); };
  auto pick = [&](const CheckPair& pair) { return pair.first.check_id == c ? pair.first : pair.second; };

  if (c.starts_with("equiv_sym")) return pick(check_equiv_sym(a.at(0), spec(), tol));
  if (c.starts_with("equiv_qsym")) return pick(check_equiv_qsym(a.at(0), spec(), tol));
  if (c.starts_with("sym_vs_qsym")) return pick(check_sym_vs_qsym(a.at(0), spec(), tol));
  if (c == "lee") return check_lee(a, spec(), tol);
  if (c == "sum_vs_sym") return check_sum_vs_sym(a, spec(), tol);
  if (c == "sum_vs_qsym") return check_sum_vs_qsym(a, spec(), tol);
  if (c == "bourin_lee") return check_bourin_lee(a, spec(), tol);
  if (c == "qsym_lee") return check_qsym_lee(a, spec(), tol);
  if (c == "corollary_24") {
    if (!tag.param.starts_with("j=")) throw Error(ErrorCode::BadArgument, "corollary_24 tag needs j=");
    return check_corollary_24(a, static_cast<std::size_t>(std::stoul(tag.param.substr(2))), tol);
  }
  if (c == "schatten_sym") return check_schatten_sym(a, exponent_of(tag.param), tol);
  if (c == "schatten_qsym") return check_schatten_qsym(a, exponent_of(tag.param), tol);
  if (c == "cp_bound") return check_cp_bound(a, exponent_of(tag.param), tol);
  if (c == "sym_endpoints") return check_sym_endpoints(a, exponent_of(tag.param), tol);
  if (c == "qsym_endpoints") return check_qsym_endpoints(a, exponent_of(tag.param), tol);
  if (c == "frob_c2") return check_frob_c2(a, tol);
  if (c == "one_inf_two") return check_one_inf_two(a.at(0), tol);
  if (c == "no_constant") return check_no_constant(e.params.at("theta"));
  throw Error(ErrorCode::BadArgument, "unknown check tag '" + std::string(text) + "'");
}

ReproduceResult reproduce(const CatalogEntry& e) {
  ReproduceResult r;
  r.id = e.id;
  r.label = e.label();
  const auto computed = compute_quantities(e);
  for (const auto& x : e.expected) {
    QuantityResult qr{x, computed.at(x.name), false};
    switch (x.relation) {
      case Relation::Near: qr.ok = std::abs(qr.computed - x.value) <= x.tol * std::max(1.0, std::abs(x.value)); break;
      case Relation::Less: qr.ok = qr.computed < x.value; break;
      case Relation::Greater: qr.ok = qr.computed > x.value; break;
    }
    r.ok = r.ok && qr.ok;
    r.quantities.push_back(std::move(qr));
  }
  for (const auto& tag : e.tight_checks) {
    auto report = run_check_tag(e, tag);
    const bool ok = report.pass && std::abs(report.ratio - 1.0) <= kTightTol;
    r.ok = r.ok && ok;
    r.tight.push_back(std::move(report));
    r.tight_ok.push_back(ok);
  }
  return r;
}

// ---------------------------------------------------------------- json

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Near: return "near";
    case Relation::Less: return "less";
    case Relation::Greater: return "greater";
  }
  return "?";
}

}  // namespace

Json to_json(const CatalogEntry& e) {
  Json expected = Json::array();
  for (const auto& x : e.expected) {
    expected.push_back({{"name", x.name}, {"value", x.value}, {"tol", x.tol}, {"relation", relation_name(x.relation)}});
  }
  return {{"id", e.id},
          {"params", e.params},
          {"matrices", to_json(e.matrices)},
          {"expected", expected},
          {"tight_checks", e.tight_checks},
          {"provenance", e.provenance}};
}

Json to_json(const ReproduceResult& r) {
  Json quantities = Json::array();
  for (const auto& q : r.quantities) {
    quantities.push_back({{"name", q.expected.name},
                          {"expected", q.expected.value},
                          {"tol", q.expected.tol},
                          {"relation", relation_name(q.expected.relation)},
                          {"computed", q.computed},
                          {"ok", q.ok}});
  }
  Json tight = Json::array();
  for (std::size_t i = 0; i < r.tight.size(); ++i) {
    Json t = to_json(r.tight[i]);
    t["tight"] = static_cast<bool>(r.tight_ok[i]);
    tight.push_back(std::move(t));
  }
  return {{"example", r.id}, {"label", r.label}, {"quantities", quantities}, {"tight_checks", tight}, {"ok", r.ok}};
}

}  // namespace modlab
