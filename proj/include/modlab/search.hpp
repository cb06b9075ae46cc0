#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modlab/catalog.hpp"
#include "modlab/json_io.hpp"
#include "modlab/matrix.hpp"
#include "modlab/norms.hpp"

namespace modlab {

enum class LhsForm { PlainSum, AbsOfSum, SymOfSum, QsymOfSum };
enum class RhsForm { SumAbs, SumSym, SumQsym };

std::string_view to_string(LhsForm f) noexcept;
std::string_view to_string(RhsForm f) noexcept;
LhsForm parse_lhs_form(std::string_view text);
RhsForm parse_rhs_form(std::string_view text);

/// Ratio ‖lhs(A_1..A_m)‖ / ‖rhs(A_1..A_m)‖ over m complex n x n matrices.
///
/// With `evidence` set the objective is instead the Weyl-type surrogate
/// max_{i+j-1<=n} λ_{i+j-1}(|X+Y|_sym) / (λ_i(|X|_sym) + λ_j(|Y|_sym)) for m = 2,
/// which the conjectured unitary-orbit triangle inequality would bound by
/// sqrt 2. It is heuristic evidence only and has no proven ceiling.
struct ProblemSpec {
  std::string objective_id;
  std::size_t m = 2;
  std::size_t n = 2;
  NormSpec norm = NormSpec::op();
  LhsForm lhs = LhsForm::SymOfSum;
  RhsForm rhs = RhsForm::SumSym;
  bool evidence = false;
};

struct ProblemInfo {
  std::string id;
  std::string description;
  std::string provenance;
};

const std::vector<ProblemInfo>& problem_registry();
bool is_problem_id(std::string_view id);

/// Builds a registered problem ("c_sym_op", "c_p_abs", "c_p_sym", "c_p_qsym",
/// "conj_sym_evidence") or a "<lhs_form>/<rhs_form>" pair. `p` selects a
/// Schatten exponent, `norm` any norm; the default is the problem's own.
ProblemSpec make_problem(std::string_view id, std::size_t m, std::size_t n, std::optional<double> p = std::nullopt,
                         std::optional<NormSpec> norm = std::nullopt);

/// Least constant known to bound the ratio, or nullopt in evidence mode.
std::optional<double> proven_bound(const ProblemSpec& problem);
/// sqrt 2 in evidence mode (conjectured), otherwise the proven bound.
double reference_bound(const ProblemSpec& problem);

/// Throws ShapeMismatch for a wrong tuple, Degenerate when the denominator
/// vanishes relative to the tuple's size.
double evaluate(const ProblemSpec& problem, const std::vector<ComplexMatrix>& tuple);

struct SearchBudget {
  std::size_t restarts = 50;
  std::size_t iters = 2000;
  /// 0 = hardware concurrency capped by MODULUS_LAB_THREADS.
  std::size_t threads = 0;
};

struct SearchResult {
  ProblemSpec problem;
  double best_ratio = 0.0;
  std::vector<ComplexMatrix> witness;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::size_t iters_per_restart = 0;
  std::size_t best_restart = 0;
  /// (restart, best ratio so far); nondecreasing.
  std::vector<std::pair<std::size_t, double>> history;
  double wall_time_s = 0.0;
};

SearchResult optimize(const ProblemSpec& problem, const SearchBudget& budget, std::uint64_t seed);

/// As optimize, with the catalog tuples used as the starting points of the
/// first restarts. Entries with fewer matrices are padded with zero matrices.
SearchResult warm_start(const ProblemSpec& problem, const std::vector<CatalogEntry>& entries,
                        const SearchBudget& budget, std::uint64_t seed);

/// Tuple <-> real vector of length 2 m n^2 (real and imaginary parts).
std::vector<double> flatten(const std::vector<ComplexMatrix>& tuple);
std::vector<ComplexMatrix> unflatten(const std::vector<double>& x, std::size_t m, std::size_t n);
/// Scales the tuple to unit stacked Frobenius norm.
std::vector<ComplexMatrix> normalize_tuple(std::vector<ComplexMatrix> tuple);

Json to_json(const ProblemSpec& problem);
Json to_json(const SearchResult& result, bool include_time = true);

}  // namespace modlab
