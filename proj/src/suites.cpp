#include "modlab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <thread>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"
#include "modlab/moduli.hpp"

namespace modlab {
namespace {

// A random square matrix drawn from a mix of ensembles so that trials also
// hit rank-deficient, normal, Hermitian and badly scaled inputs.
ComplexMatrix random_square(std::size_t n, Rng& rng) {
  const int kind = rng.uniform_int(0, 9);
  switch (kind) {
    case 6: {
      const std::size_t r = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(std::max<std::size_t>(1, n - 1))));
      return ginibre(n, r, rng) * ginibre(r, n, rng);
    }
    case 7: {
      const auto u = haar_unitary(n, rng);
      ComplexMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = rng.complex_normal();
      return u * d * u.adjoint();
    }
    case 8: return random_hermitian(n, rng);
    case 9: return Complex(std::pow(10.0, 6.0 * rng.uniform() - 3.0)) * ginibre(n, rng);
    default: return ginibre(n, rng);
  }
}

std::vector<ComplexMatrix> random_list(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<ComplexMatrix> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(random_square(n, rng));
  return out;
}

ComplexMatrix random_psd_mixed(std::size_t n, Rng& rng) {
  if (n > 1 && rng.uniform() < 0.25) {
    return random_low_rank_psd(n, static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(n - 1))), rng);
  }
  return random_psd(n, rng);
}

// Ginibre sample with condition number at most 1e3.
ComplexMatrix well_conditioned(std::size_t n, Rng& rng) {
  for (;;) {
    auto a = ginibre(n, rng);
    const auto s = singular_values(a);
    if (s.back() >= 1e-3 * s.front()) return a;
  }
}

double finite_exponent(double p) { return std::isinf(p) ? 6.0 : p; }

std::vector<CheckReport> both(const CheckPair& pair) { return {pair.first, pair.second}; }

Suite suite(std::string id, std::string provenance, TrialFunction f) {
  return {std::move(id), std::move(provenance), std::move(f)};
}

std::vector<Suite> build_registry() {
  std::vector<Suite> s;
  s.push_back(suite("equiv_sym", "(1/2)|||Z||| <= |||Z|_sym|| <= |||Z|||, every unitarily invariant norm",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return both(check_equiv_sym(random_square(t.n, rng), t.norm, tol));
                    }));
  s.push_back(suite("equiv_qsym", "(sqrt2/2)|||Z||| <= |||Z|_qsym|| <= sqrt2 |||Z|||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return both(check_equiv_qsym(random_square(t.n, rng), t.norm, tol));
                    }));
  s.push_back(suite("sym_vs_qsym", "|||Z|_sym|| <= |||Z|_qsym|| <= sqrt2 |||Z|_sym||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return both(check_sym_vs_qsym(random_square(t.n, rng), t.norm, tol));
                    }));
  s.push_back(suite("lee", "||sum A_k|| <= sqrt(min(m,n)) ||sum |A_k|||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_lee(random_list(t.m, t.n, rng), t.norm, tol)};
                    }));
  s.push_back(suite("sum_vs_sym", "||sum A_k|| <= 2 ||sum |A_k|_sym||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_sum_vs_sym(random_list(t.m, t.n, rng), t.norm, tol)};
                    }));
  s.push_back(suite("sum_vs_qsym", "||sum A_k|| <= sqrt2 ||sum |A_k|_qsym||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_sum_vs_qsym(random_list(t.m, t.n, rng), t.norm, tol)};
                    }));
  s.push_back(suite("bourin_lee", "|||sum A_k|_sym|| <= sqrt2 ||sum |A_k|_sym|| (Bourin-Lee)",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_bourin_lee(random_list(t.m, t.n, rng), t.norm, tol)};
                    }));
  s.push_back(suite("corollary_24", "lambda_{1+3j}(|sum A_k|_sym) <= sqrt2 lambda_{1+j}(sum |A_k|_sym)",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      const int jmax = static_cast<int>((t.n - 1) / 3);
                      const auto j = static_cast<std::size_t>(rng.uniform_int(0, jmax));
                      return std::vector{check_corollary_24(random_list(t.m, t.n, rng), j, tol)};
                    }));
  s.push_back(suite("qsym_lee", "|||sum A_k|_qsym|| <= sqrt(min(m,2n)) ||sum |A_k|_qsym||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_qsym_lee(random_list(t.m, t.n, rng), t.norm, tol)};
                    }));
  s.push_back(suite("schatten_sym", "||sum A_k||_p <= 2^{1-1/p} ||sum |A_k|_sym||_p",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_schatten_sym(random_list(t.m, t.n, rng), t.p, tol)};
                    }));
  s.push_back(suite("schatten_qsym", "||sum A_k||_p <= max(1, 2^{1/2-1/p}) ||sum |A_k|_qsym||_p",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_schatten_qsym(random_list(t.m, t.n, rng), t.p, tol)};
                    }));
  s.push_back(suite("block_positivity", "[[|A^*|, A], [A^*, |A|]] >= 0",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_block_positivity(random_square(t.n, rng), tol)};
                    }));
  s.push_back(suite("eqdiag_dom", "[[P, Z], [Z^*, P]] >= 0 implies ||Z|| <= ||P||",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      const auto p = random_psd_mixed(t.n, rng);
                      return both(check_eqdiag_dom(p, random_contraction(t.n, rng), t.norm, tol));
                    }));
  s.push_back(suite("contraction", "PSD block [[A, X], [X^*, B]] gives X = A^{1/2} K B^{1/2}, K contraction",
                    [](const TrialParams& t, Rng& rng, double) {
                      ComplexMatrix block;
                      std::string digest_text;
                      if (t.index % 2 == 0) {
                        const auto a = well_conditioned(t.n, rng);
                        block = modulus_block(a);
                        digest_text = digest({a});
                      } else {
                        const auto p = random_psd_mixed(t.n, rng);
                        block = block2(p, p, p, p);
                        digest_text = digest({p});
                      }
                      const auto c = extract_contraction(block);
                      const double knorm = norm(c.k, NormSpec::op());
                      const double size = std::max(1.0, block.frobenius());
                      return std::vector{
                          compare_scalars("contraction.norm", knorm, 1.0, 1.0, digest_text, 1e-8),
                          compare_scalars("contraction.defect", c.defect, size, 1e-8, digest_text, 0.0, false, 0.0)};
                    }));
  s.push_back(suite("one_inf_two", "||X||_1 ||X||_inf <= ((1+sqrt n)/2) ||X||_2^2 for PSD X",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_one_inf_two(random_psd_mixed(t.n, rng), tol)};
                    }));
  s.push_back(suite("frob_c2", "||sum A_k||_2 <= sqrt((1+sqrt d)/2) ||sum |A_k|||_2, d = min(m,n)",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_frob_c2(random_list(t.m, t.n, rng), tol)};
                    }));
  s.push_back(suite("cp_bound", "||sum A_k||_p <= d^{1/2-1/(2p)} ||sum |A_k|||_p",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_cp_bound(random_list(t.m, t.n, rng), t.p, tol)};
                    }));
  s.push_back(suite("trace_cs", "|tr A^*B|^2 <= tr(|A||B|) tr(|A^*||B^*|) and its AM-GM form",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      const auto a = random_square(t.n, rng);
                      return both(check_trace_cs(a, random_square(t.n, rng), tol));
                    }));
  s.push_back(suite("trace_qsym", "|tr A^*B| <= tr(|A|_qsym |B|_qsym)",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      const auto a = random_square(t.n, rng);
                      return std::vector{check_trace_qsym(a, random_square(t.n, rng), tol)};
                    }));
  s.push_back(suite("mccarthy", "tr(A^p + B^p) <= tr (A+B)^p for PSD A, B, p >= 1 (p = inf trials use p = 6)",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      const auto a = random_psd_mixed(t.n, rng);
                      return std::vector{check_mccarthy(a, random_psd_mixed(t.n, rng), finite_exponent(t.p), tol)};
                    }));
  s.push_back(suite("bourin_uchiyama", "||f(A+B)|| <= ||f(A) + f(B)|| for concave f >= 0",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      static const std::vector<FunctionSpec> fs = {FunctionSpec::sqrt(), FunctionSpec::power(0.3),
                                                                   FunctionSpec::power(0.7), FunctionSpec::identity(),
                                                                   FunctionSpec::shift(0.5)};
                      const auto a = random_psd_mixed(t.n, rng);
                      const auto b = random_psd_mixed(t.n, rng);
                      return std::vector{check_bourin_uchiyama(a, b, t.norm, fs[t.index % fs.size()], tol)};
                    }));
  s.push_back(suite("aujla_silva", "||f(aA+(1-a)B)|| <= ||a f(A) + (1-a) f(B)|| for convex f >= 0",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      static const std::vector<FunctionSpec> fs = {FunctionSpec::power(1.5), FunctionSpec::power(2),
                                                                   FunctionSpec::power(3), FunctionSpec::identity(),
                                                                   FunctionSpec::shift(0.5)};
                      const auto a = random_psd_mixed(t.n, rng);
                      const auto b = random_psd_mixed(t.n, rng);
                      const double alpha = rng.uniform();
                      return std::vector{check_aujla_silva(a, b, alpha, t.norm, fs[t.index % fs.size()], tol)};
                    }));
  s.push_back(suite("lieb", "(X, Y) -> tr(X^{1/2} Y^{1/2}) is jointly concave (Lieb)",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      const auto x1 = random_psd_mixed(t.n, rng);
                      const auto x2 = random_psd_mixed(t.n, rng);
                      const auto y1 = random_psd_mixed(t.n, rng);
                      const auto y2 = random_psd_mixed(t.n, rng);
                      return std::vector{check_lieb(x1, x2, y1, y2, tol)};
                    }));
  s.push_back(suite("no_constant", "lambda_2(|X_theta|_qsym)/lambda_2(|X_theta|_sym) = sqrt(2/(1-cos theta))",
                    [](const TrialParams&, Rng& rng, double) {
                      const double theta = 0.01 + (std::numbers::pi / 2 - 0.01) * rng.uniform();
                      return std::vector{check_no_constant(theta)};
                    }));
  s.push_back(suite("sym_endpoints", "|||sum A_k|_sym||_p <= min(2^{1-1/p}, sqrt2) ||sum |A_k|_sym||_p",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_sym_endpoints(random_list(t.m, t.n, rng), t.p, tol)};
                    }));
  s.push_back(suite("qsym_endpoints", "|||sum A_k|_qsym||_p <= min(m,2n)^{1/2-1/(2p)} ||sum |A_k|_qsym||_p",
                    [](const TrialParams& t, Rng& rng, double tol) {
                      return std::vector{check_qsym_endpoints(random_list(t.m, t.n, rng), t.p, tol)};
                    }));
  return s;
}

}  // namespace

const std::vector<double>& exponent_grid() {
  static const std::vector<double> grid = {1.0, 1.5, 2.0, 3.0, 10.0, kInfinity};
  return grid;
}

TrialParams trial_params(std::size_t t, const TrialOverrides& o) {
  TrialParams p;
  p.index = t;
  p.n = o.n.value_or(2 + t % 5);
  p.m = o.m.value_or(2 + (t / 5) % 4);
  p.p = o.p.value_or(exponent_grid()[(t / 20) % exponent_grid().size()]);
  if (o.norm) {
    p.norm = *o.norm;
    if (p.norm.kind() == NormSpec::Kind::KyFan && p.norm.k() > p.n) p.norm = NormSpec::ky_fan(p.n);
  } else {
    switch ((t / 120) % 3) {
      case 0: p.norm = NormSpec::schatten(p.p); break;
      case 1: p.norm = NormSpec::all_uin(); break;
      default: p.norm = NormSpec::ky_fan(1 + t % p.n); break;
    }
  }
  return p;
}

const std::vector<Suite>& suite_registry() {
  static const std::vector<Suite> registry = build_registry();
  return registry;
}

const Suite* find_suite(std::string_view id) {
  for (const auto& s : suite_registry())
    if (s.id == id) return &s;
  return nullptr;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& suite_groups() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
      {"equivalence", {"equiv_sym", "equiv_qsym", "sym_vs_qsym"}},
      {"triangle", {"lee", "sum_vs_sym", "sum_vs_qsym", "bourin_lee", "corollary_24", "qsym_lee"}},
      {"schatten", {"schatten_sym", "schatten_qsym", "frob_c2", "cp_bound", "sym_endpoints", "qsym_endpoints"}},
      {"lemmas",
       {"block_positivity", "eqdiag_dom", "contraction", "one_inf_two", "trace_cs", "trace_qsym", "mccarthy",
        "bourin_uchiyama", "aujla_silva", "lieb"}},
  };
  return groups;
}

std::vector<const Suite*> resolve_suites(std::string_view name) {
  std::vector<const Suite*> out;
  if (name == "all") {
    for (const auto& s : suite_registry()) out.push_back(&s);
    return out;
  }
  if (const auto* s = find_suite(name)) return {s};
  for (const auto& [group, members] : suite_groups()) {
    if (group != name) continue;
    for (const auto& id : members) out.push_back(find_suite(id));
  }
  return out;
}

std::size_t SuiteResult::failures() const {
  std::size_t f = errors.size();
  for (const auto& c : checks) f += c.count - c.passed;
  return f;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MODULUS_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& f) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

SuiteResult run_suite(const Suite& suite, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  struct Outcome {
    std::vector<CheckReport> reports;
    bool degenerate = false;
    std::string error;
  };
  std::vector<Outcome> outcomes(options.trials);
  parallel_for(options.trials, worker_count(options.threads), [&](std::size_t t) {
    Rng rng(derive_seed(options.seed, t));
    try {
      outcomes[t].reports = suite.run(trial_params(t, options.overrides), rng, options.tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Degenerate) {
        outcomes[t].degenerate = true;
      } else {
        outcomes[t].error = e.what();
      }
    } catch (const std::exception& e) {
      outcomes[t].error = e.what();
    }
  });

  // Serial merge in trial order keeps the result independent of scheduling.
  SuiteResult result;
  result.suite = suite.id;
  result.trials = options.trials;
  result.seed = options.seed;
  result.tol = options.tol;
  std::map<std::string, CheckStats> stats;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    if (o.degenerate) ++result.degenerate;
    if (!o.error.empty()) result.errors.push_back({t, o.error});
    for (const auto& r : o.reports) {
      auto [it, fresh] = stats.try_emplace(r.check_id);
      auto& s = it->second;
      if (fresh) {
        s.check_id = r.check_id;
        s.worst_margin = r.normalized_margin();
        s.worst_margin_digest = r.inputs_digest;
        s.worst_ratio = std::isnan(r.ratio) ? 0.0 : r.ratio;
        s.worst_ratio_digest = r.inputs_digest;
      }
      ++s.count;
      if (r.pass) ++s.passed;
      if (r.normalized_margin() < s.worst_margin) {
        s.worst_margin = r.normalized_margin();
        s.worst_margin_digest = r.inputs_digest;
      }
      if (!std::isnan(r.ratio) && r.ratio > s.worst_ratio) {
        s.worst_ratio = r.ratio;
        s.worst_ratio_digest = r.inputs_digest;
      }
    }
  }
  for (auto& [id, s] : stats) result.checks.push_back(std::move(s));
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Json to_json(const SuiteResult& r, bool include_time) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"check_id", c.check_id},
                      {"count", c.count},
                      {"passed", c.passed},
                      {"failed", c.count - c.passed},
                      {"worst_margin", c.worst_margin},
                      {"worst_margin_digest", c.worst_margin_digest},
                      {"worst_ratio", std::isfinite(c.worst_ratio) ? Json(c.worst_ratio) : Json("inf")},
                      {"worst_ratio_digest", c.worst_ratio_digest}});
  }
  Json errors = Json::array();
  for (const auto& e : r.errors) errors.push_back({{"trial", e.trial}, {"message", e.message}});
  Json j = {{"suite", r.suite},     {"trials", r.trials},         {"seed", r.seed},
            {"tol", r.tol},         {"rng", Rng::algorithm_id()}, {"checks", checks},
            {"degenerate", r.degenerate}, {"errors", errors},     {"failures", r.failures()},
            {"ok", r.ok()}};
  if (include_time) j["wall_time_s"] = r.wall_time_s;
  return j;
}

}  // namespace modlab
