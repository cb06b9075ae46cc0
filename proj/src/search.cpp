#include "modlab/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "modlab/error.hpp"
#include "modlab/inequalities.hpp"
#include "modlab/linalg.hpp"
#include "modlab/moduli.hpp"
#include "modlab/random.hpp"
#include "modlab/suites.hpp"

namespace modlab {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kDegenerate = 1e-12;
// Nelder-Mead coefficients and stopping rules.
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kDiameterStop = 1e-10;
constexpr double kSpreadStop = 1e-12;

ComplexMatrix lhs_matrix(LhsForm f, const ComplexMatrix& s) {
  switch (f) {
    case LhsForm::PlainSum: return s;
    case LhsForm::AbsOfSum: return usual_modulus(s);
    case LhsForm::SymOfSum: return sym_modulus(s);
    case LhsForm::QsymOfSum: return qsym_modulus(s);
  }
  return s;
}

ComplexMatrix rhs_term(RhsForm f, const ComplexMatrix& a) {
  switch (f) {
    case RhsForm::SumAbs: return usual_modulus(a);
    case RhsForm::SumSym: return sym_modulus(a);
    case RhsForm::SumQsym: return qsym_modulus(a);
  }
  return a;
}

bool same_modulus(LhsForm l, RhsForm r) {
  return ((l == LhsForm::PlainSum || l == LhsForm::AbsOfSum) && r == RhsForm::SumAbs) ||
         (l == LhsForm::SymOfSum && r == RhsForm::SumSym) || (l == LhsForm::QsymOfSum && r == RhsForm::SumQsym);
}

double stacked_frobenius(const std::vector<ComplexMatrix>& tuple) {
  double s = 0.0;
  for (const auto& a : tuple) {
    const double f = a.frobenius();
    s += f * f;
  }
  return std::sqrt(s);
}

double evidence_ratio(const std::vector<ComplexMatrix>& t) {
  const double size = stacked_frobenius(t);
  if (size == 0.0) throw Error(ErrorCode::Degenerate, "evidence: zero tuple");
  const auto sx = eigenvalues(sym_modulus(t[0]));
  const auto sy = eigenvalues(sym_modulus(t[1]));
  const auto ss = eigenvalues(sym_modulus(t[0] + t[1]));
  const std::size_t n = sx.size();
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) {
      const double den = sx[i] + sy[j];
      if (den <= kDegenerate * size) continue;
      best = std::max(best, ss[i + j] / den);
    }
  if (best < 0.0) throw Error(ErrorCode::Degenerate, "evidence: every denominator vanishes");
  return best;
}

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

struct Minimum {
  std::vector<double> x;
  double f = 0.0;
};

// Nelder-Mead minimization from x0 with an axis-aligned initial simplex.
template <class F>
Minimum nelder_mead(F&& objective, const std::vector<double>& x0, double step, std::size_t max_iters) {
  const std::size_t d = x0.size();
  Simplex s;
  s.x.assign(d + 1, x0);
  for (std::size_t i = 0; i < d; ++i) s.x[i + 1][i] += step;
  s.f.resize(d + 1);
  for (std::size_t i = 0; i <= d; ++i) s.f[i] = objective(s.x[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), trial(d), second(d);
  auto point = [&](double t, const std::vector<double>& from, std::vector<double>& out) {
    // centroid + t (from - centroid)
    for (std::size_t k = 0; k < d; ++k) out[k] = centroid[k] + t * (from[k] - centroid[k]);
  };
  for (std::size_t it = 0; it < max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t next_worst = order[d - 1];

    if (std::isfinite(s.f[worst]) && s.f[worst] - s.f[best] < kSpreadStop) break;
    double diameter = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) dist += (s.x[i][k] - s.x[best][k]) * (s.x[i][k] - s.x[best][k]);
      diameter = std::max(diameter, dist);
    }
    if (std::sqrt(diameter) < kDiameterStop) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += s.x[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(d);

    point(-kReflect, s.x[worst], trial);
    const double fr = objective(trial);
    if (fr < s.f[best]) {
      point(-kReflect * kExpand, s.x[worst], second);
      const double fe = objective(second);
      if (fe < fr) {
        s.x[worst] = second;
        s.f[worst] = fe;
      } else {
        s.x[worst] = trial;
        s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[next_worst]) {
      s.x[worst] = trial;
      s.f[worst] = fr;
      continue;
    }
    if (fr < s.f[worst]) {
      point(-kReflect * kContract, s.x[worst], second);
      const double fc = objective(second);
      if (fc <= fr) {
        s.x[worst] = second;
        s.f[worst] = fc;
        continue;
      }
    } else {
      point(kContract, s.x[worst], second);
      const double fc = objective(second);
      if (fc < s.f[worst]) {
        s.x[worst] = second;
        s.f[worst] = fc;
        continue;
      }
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k) s.x[i][k] = s.x[best][k] + kShrink * (s.x[i][k] - s.x[best][k]);
      s.f[i] = objective(s.x[i]);
    }
  }
  const auto it = std::min_element(s.f.begin(), s.f.end());
  return {s.x[static_cast<std::size_t>(it - s.f.begin())], *it};
}

struct RestartOutcome {
  double ratio = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

SearchResult run_search(const ProblemSpec& problem, const std::vector<std::vector<ComplexMatrix>>& starts,
                        const SearchBudget& budget, std::uint64_t seed) {
  if (budget.restarts == 0 || budget.iters == 0) {
    throw Error(ErrorCode::BadArgument, "search budget needs positive restarts and iters");
  }
  const auto start_time = std::chrono::steady_clock::now();
  const std::size_t m = problem.m;
  const std::size_t n = problem.n;
  const std::size_t dim = 2 * m * n * n;
  const double step = 0.5 / std::sqrt(static_cast<double>(dim));

  auto objective = [&](const std::vector<double>& x) {
    try {
      return -evaluate(problem, unflatten(x, m, n));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Degenerate) return std::numeric_limits<double>::infinity();
      throw;
    }
  };

  std::vector<RestartOutcome> outcomes(budget.restarts);
  parallel_for(budget.restarts, worker_count(budget.threads), [&](std::size_t r) {
    Rng rng(derive_seed(seed, r));
    std::vector<ComplexMatrix> init;
    if (r < starts.size()) {
      init = starts[r];
    } else {
      for (std::size_t k = 0; k < m; ++k) init.push_back(ginibre(n, rng));
    }
    auto x0 = flatten(normalize_tuple(std::move(init)));
    const Minimum min = nelder_mead(objective, x0, step, budget.iters);
    if (std::isfinite(min.f)) {
      outcomes[r].x = flatten(normalize_tuple(unflatten(min.x, m, n)));
      outcomes[r].ratio = evaluate(problem, unflatten(outcomes[r].x, m, n));
    }
  });

  SearchResult result;
  result.problem = problem;
  result.seed = seed;
  result.restarts = budget.restarts;
  result.iters_per_restart = budget.iters;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].ratio > best) {
      best = outcomes[r].ratio;
      result.best_restart = r;
    }
    result.history.emplace_back(r, best);
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::Degenerate, "every restart was degenerate");
  result.witness = unflatten(outcomes[result.best_restart].x, m, n);
  result.best_ratio = evaluate(problem, result.witness);
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return result;
}

}  // namespace

std::string_view to_string(LhsForm f) noexcept {
  switch (f) {
    case LhsForm::PlainSum: return "plain_sum";
    case LhsForm::AbsOfSum: return "abs_of_sum";
    case LhsForm::SymOfSum: return "sym_of_sum";
    case LhsForm::QsymOfSum: return "qsym_of_sum";
  }
  return "?";
}

std::string_view to_string(RhsForm f) noexcept {
  switch (f) {
    case RhsForm::SumAbs: return "sum_abs";
    case RhsForm::SumSym: return "sum_sym";
    case RhsForm::SumQsym: return "sum_qsym";
  }
  return "?";
}

LhsForm parse_lhs_form(std::string_view text) {
  for (auto f : {LhsForm::PlainSum, LhsForm::AbsOfSum, LhsForm::SymOfSum, LhsForm::QsymOfSum})
    if (to_string(f) == text) return f;
  throw Error(ErrorCode::BadArgument, "unknown lhs form '" + std::string(text) + "'");
}

RhsForm parse_rhs_form(std::string_view text) {
  for (auto f : {RhsForm::SumAbs, RhsForm::SumSym, RhsForm::SumQsym})
    if (to_string(f) == text) return f;
  throw Error(ErrorCode::BadArgument, "unknown rhs form '" + std::string(text) + "'");
}

const std::vector<ProblemInfo>& problem_registry() {
  static const std::vector<ProblemInfo> registry = {
      {"c_sym_op", "|||sum A_k|_sym||_op / ||sum |A_k|_sym||_op",
       "optimal 2x2 Bourin-Lee constant c(m,2); known lower bound 1.1789"},
      {"c_p_abs", "||sum A_k||_p / ||sum |A_k|||_p", "optimal constant c_p^abs(m,n)"},
      {"c_p_sym", "|||sum A_k|_sym||_p / ||sum |A_k|_sym||_p", "optimal constant c_p^sym(m,n)"},
      {"c_p_qsym", "|||sum A_k|_qsym||_p / ||sum |A_k|_qsym||_p", "optimal constant c_p^qsym(m,n)"},
      {"conj_sym_evidence",
       "max lambda_{i+j-1}(|X+Y|_sym) / (lambda_i(|X|_sym) + lambda_j(|Y|_sym)), heuristic",
       "necessary eigenvalue condition of the conjectured unitary-orbit triangle inequality with constant sqrt 2"},
  };
  return registry;
}

bool is_problem_id(std::string_view id) {
  for (const auto& p : problem_registry())
    if (p.id == id) return true;
  const auto slash = id.find('/');
  if (slash == std::string_view::npos) return false;
  try {
    parse_lhs_form(id.substr(0, slash));
    parse_rhs_form(id.substr(slash + 1));
    return true;
  } catch (const Error&) {
    return false;
  }
}

ProblemSpec make_problem(std::string_view id, std::size_t m, std::size_t n, std::optional<double> p,
                         std::optional<NormSpec> norm) {
  if (m < 1 || n < 1) throw Error(ErrorCode::BadArgument, "problem needs m, n >= 1");
  ProblemSpec s;
  s.objective_id = std::string(id);
  s.m = m;
  s.n = n;
  auto schatten_default = [&] { return norm ? *norm : NormSpec::schatten(p.value_or(2.0)); };
  if (id == "c_sym_op") {
    s.lhs = LhsForm::SymOfSum;
    s.rhs = RhsForm::SumSym;
    s.norm = norm ? *norm : (p ? NormSpec::schatten(*p) : NormSpec::op());
  } else if (id == "c_p_abs") {
    s.lhs = LhsForm::PlainSum;
    s.rhs = RhsForm::SumAbs;
    s.norm = schatten_default();
  } else if (id == "c_p_sym") {
    s.lhs = LhsForm::SymOfSum;
    s.rhs = RhsForm::SumSym;
    s.norm = schatten_default();
  } else if (id == "c_p_qsym") {
    s.lhs = LhsForm::QsymOfSum;
    s.rhs = RhsForm::SumQsym;
    s.norm = schatten_default();
  } else if (id == "conj_sym_evidence") {
    if (m != 2) throw Error(ErrorCode::BadArgument, "conj_sym_evidence needs m = 2");
    s.evidence = true;
  } else {
    const auto slash = id.find('/');
    if (slash == std::string_view::npos) throw Error(ErrorCode::BadArgument, "unknown problem '" + std::string(id) + "'");
    s.lhs = parse_lhs_form(id.substr(0, slash));
    s.rhs = parse_rhs_form(id.substr(slash + 1));
    s.norm = norm ? *norm : (p ? NormSpec::schatten(*p) : NormSpec::op());
  }
  if (s.norm.kind() == NormSpec::Kind::KyFan && s.norm.k() > n) {
    throw Error(ErrorCode::BadNormParam, "Ky Fan index exceeds n");
  }
  return s;
}

std::optional<double> proven_bound(const ProblemSpec& pr) {
  if (pr.evidence) return std::nullopt;
  const std::size_t m = pr.m;
  const std::size_t n = pr.n;
  if (m == 1 && same_modulus(pr.lhs, pr.rhs)) return 1.0;
  const bool plain = pr.lhs == LhsForm::PlainSum || pr.lhs == LhsForm::AbsOfSum;
  const double lee = lee_constant(m, n);
  const double lee2 = lee_constant(m, 2 * n);
  // Every unitarily invariant norm.
  double bound = 0.0;
  switch (pr.rhs) {
    case RhsForm::SumAbs: bound = (pr.lhs == LhsForm::QsymOfSum ? kSqrt2 : 1.0) * lee; break;
    case RhsForm::SumSym:
      bound = plain ? 2.0 : (pr.lhs == LhsForm::SymOfSum ? kSqrt2 : 2.0);
      break;
    case RhsForm::SumQsym: bound = plain ? kSqrt2 : lee2; break;
  }
  if (!pr.norm.is_schatten_family()) return bound;

  // Schatten-specific constants.
  const double p = pr.norm.exponent();
  double cp = cp_constant(m, n, p);
  if (p == 2.0) cp = std::min(cp, frob_c2_constant(m, n));
  double cq = qsym_endpoint_constant(m, n, p);
  if (p == 2.0) cq = std::min(cq, std::sqrt((1.0 + std::sqrt(static_cast<double>(std::min(m, 2 * n)))) / 2.0));
  double sharp = bound;
  switch (pr.rhs) {
    case RhsForm::SumAbs: sharp = (pr.lhs == LhsForm::QsymOfSum ? kSqrt2 : 1.0) * cp; break;
    case RhsForm::SumSym:
      if (plain) sharp = schatten_sym_constant(p);
      else if (pr.lhs == LhsForm::SymOfSum) sharp = sym_endpoint_constant(p);
      else sharp = kSqrt2 * sym_endpoint_constant(p);
      break;
    case RhsForm::SumQsym: sharp = plain ? schatten_qsym_constant(p) : cq; break;
  }
  return std::min(bound, sharp);
}

double reference_bound(const ProblemSpec& problem) { return proven_bound(problem).value_or(kSqrt2); }

double evaluate(const ProblemSpec& pr, const std::vector<ComplexMatrix>& tuple) {
  if (tuple.size() != pr.m) {
    throw Error(ErrorCode::ShapeMismatch,
                "expected " + std::to_string(pr.m) + " matrices, got " + std::to_string(tuple.size()));
  }
  for (const auto& a : tuple) {
    if (a.rows() != pr.n || a.cols() != pr.n) {
      throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(pr.n) + "x" + std::to_string(pr.n) +
                                                " matrices, got " + std::to_string(a.rows()) + "x" +
                                                std::to_string(a.cols()));
    }
  }
  if (pr.evidence) return evidence_ratio(tuple);
  const double size = stacked_frobenius(tuple);
  if (size == 0.0) throw Error(ErrorCode::Degenerate, "zero tuple");
  ComplexMatrix total = tuple.front();
  ComplexMatrix right = rhs_term(pr.rhs, tuple.front());
  for (std::size_t k = 1; k < tuple.size(); ++k) {
    total += tuple[k];
    right += rhs_term(pr.rhs, tuple[k]);
  }
  const ComplexMatrix left = lhs_matrix(pr.lhs, total);
  if (pr.norm.all_uin_mode()) return fan_compare(left, right.hermitian_part()).ratio;
  const double den = norm(right, pr.norm);
  if (den <= kDegenerate * size) throw Error(ErrorCode::Degenerate, "denominator vanishes");
  return norm(left, pr.norm) / den;
}

std::vector<double> flatten(const std::vector<ComplexMatrix>& tuple) {
  std::vector<double> x;
  for (const auto& a : tuple)
    for (const auto& z : a.data()) {
      x.push_back(z.real());
      x.push_back(z.imag());
    }
  return x;
}

std::vector<ComplexMatrix> unflatten(const std::vector<double>& x, std::size_t m, std::size_t n) {
  if (x.size() != 2 * m * n * n) throw Error(ErrorCode::ShapeMismatch, "unflatten: wrong vector length");
  std::vector<ComplexMatrix> out;
  out.reserve(m);
  std::size_t idx = 0;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Complex> entries(n * n);
    for (auto& z : entries) {
      z = Complex(x[idx], x[idx + 1]);
      idx += 2;
    }
    out.emplace_back(n, n, std::move(entries));
  }
  return out;
}

std::vector<ComplexMatrix> normalize_tuple(std::vector<ComplexMatrix> tuple) {
  const double size = stacked_frobenius(tuple);
  if (size == 0.0 || !std::isfinite(size)) return tuple;
  for (auto& a : tuple) a *= Complex(1.0 / size);
  return tuple;
}

SearchResult optimize(const ProblemSpec& problem, const SearchBudget& budget, std::uint64_t seed) {
  return run_search(problem, {}, budget, seed);
}

SearchResult warm_start(const ProblemSpec& problem, const std::vector<CatalogEntry>& entries,
                        const SearchBudget& budget, std::uint64_t seed) {
  std::vector<std::vector<ComplexMatrix>> starts;
  for (const auto& e : entries) {
    if (e.matrices.size() > problem.m) {
      throw Error(ErrorCode::ShapeMismatch, e.label() + " has " + std::to_string(e.matrices.size()) +
                                                " matrices, problem takes " + std::to_string(problem.m));
    }
    auto tuple = e.matrices;
    for (const auto& a : tuple) {
      if (a.rows() != problem.n || a.cols() != problem.n) {
        throw Error(ErrorCode::ShapeMismatch, e.label() + " is " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + ", problem n = " +
                                                  std::to_string(problem.n));
      }
    }
    while (tuple.size() < problem.m) tuple.push_back(ComplexMatrix::zeros(problem.n, problem.n));
    starts.push_back(std::move(tuple));
  }
  return run_search(problem, starts, budget, seed);
}

Json to_json(const ProblemSpec& p) {
  Json j = {{"objective_id", p.objective_id},
            {"m", p.m},
            {"n", p.n},
            {"norm", p.norm.to_string()},
            {"lhs_form", to_string(p.lhs)},
            {"rhs_form", to_string(p.rhs)},
            {"evidence", p.evidence}};
  if (p.evidence) {
    j["norm"] = nullptr;
    j["lhs_form"] = nullptr;
    j["rhs_form"] = nullptr;
  }
  return j;
}

Json to_json(const SearchResult& r, bool include_time) {
  Json history = Json::array();
  for (const auto& [restart, value] : r.history) history.push_back({restart, value});
  const auto bound = proven_bound(r.problem);
  Json j = {{"problem", to_json(r.problem)},
            {"best_ratio", r.best_ratio},
            {"proven_bound", bound ? Json(*bound) : Json(nullptr)},
            {"reference_bound", reference_bound(r.problem)},
            {"witness", to_json(r.witness)},
            {"seed", r.seed},
            {"restarts", r.restarts},
            {"iters", r.iters_per_restart},
            {"best_restart", r.best_restart},
            {"rng", Rng::algorithm_id()},
            {"history", history}};
  if (include_time) j["wall_time_s"] = r.wall_time_s;
  return j;
}

}  // namespace modlab
