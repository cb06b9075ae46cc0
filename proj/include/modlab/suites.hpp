#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modlab/inequalities.hpp"
#include "modlab/json_io.hpp"
#include "modlab/norms.hpp"
#include "modlab/random.hpp"

namespace modlab {

/// Parameters of one verification trial.
struct TrialParams {
  std::size_t index = 0;
  std::size_t n = 2;  ///< matrix dimension
  std::size_t m = 2;  ///< number of matrices
  double p = 2.0;     ///< Schatten exponent for p-quantified checks
  NormSpec norm = NormSpec::op();
};

struct TrialOverrides {
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<double> p;
  std::optional<NormSpec> norm;
};

/// Exponent grid cycled by the trials.
const std::vector<double>& exponent_grid();

/// Trial t cycles n over 2..6, m over 2..5, p over the exponent grid and the
/// norm over {Schatten p, all-UIN, Ky Fan k}; overrides pin a coordinate.
TrialParams trial_params(std::size_t t, const TrialOverrides& overrides = {});

using TrialFunction = std::function<std::vector<CheckReport>(const TrialParams&, Rng&, double tol)>;

struct Suite {
  std::string id;
  std::string provenance;
  TrialFunction run;
};

const std::vector<Suite>& suite_registry();
const Suite* find_suite(std::string_view id);

/// Group names ("equivalence", "all") and single suites resolve to lists.
/// Returns an empty list for unknown names.
std::vector<const Suite*> resolve_suites(std::string_view name);
const std::vector<std::pair<std::string, std::vector<std::string>>>& suite_groups();

struct CheckStats {
  std::string check_id;
  std::size_t count = 0;
  std::size_t passed = 0;
  double worst_margin = 0.0;  ///< smallest margin / scale
  std::string worst_margin_digest;
  double worst_ratio = 0.0;  ///< largest finite-or-infinite ratio seen
  std::string worst_ratio_digest;
};

struct TrialError {
  std::size_t trial = 0;
  std::string message;
};

struct SuiteResult {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::vector<CheckStats> checks;  ///< sorted by check_id
  std::size_t degenerate = 0;      ///< trials skipped as Degenerate
  std::vector<TrialError> errors;  ///< unexpected exceptions; count as failures
  double wall_time_s = 0.0;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

struct RunOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  TrialOverrides overrides;
  /// 0 = hardware concurrency capped by MODULUS_LAB_THREADS.
  std::size_t threads = 0;
};

SuiteResult run_suite(const Suite& suite, const RunOptions& options);

/// Worker count: requested, else hardware concurrency; MODULUS_LAB_THREADS caps it.
std::size_t worker_count(std::size_t requested);

/// Runs f(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& f);

Json to_json(const SuiteResult& result, bool include_time = true);

}  // namespace modlab
