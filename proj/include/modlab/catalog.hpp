#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "modlab/inequalities.hpp"
#include "modlab/json_io.hpp"
#include "modlab/matrix.hpp"

namespace modlab {

/// One expected quantity. Near means |computed - value| <= tol * max(1, |value|);
/// Less/Greater are strict comparisons against value.
struct Expectation {
  enum class Relation { Near, Less, Greater };
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  Relation relation = Relation::Near;
};

struct CatalogEntry {
  std::string id;
  /// Instance parameters, e.g. {"d", 3}.
  std::map<std::string, double> params;
  std::vector<ComplexMatrix> matrices;
  std::vector<Expectation> expected;
  /// "check@param" tags on which the entry attains equality, e.g. "lee@op".
  std::vector<std::string> tight_checks;
  std::string provenance;

  std::string label() const;
};

CatalogEntry e12(std::size_t n);
CatalogEntry sharp3x3();
CatalogEntry example_114();
CatalogEntry expansive_counterexample();
CatalogEntry lee_sharp_family(std::size_t m, std::size_t n);
CatalogEntry frobenius_sharp_family(std::size_t m, std::size_t n);
CatalogEntry c2_counterexample();
CatalogEntry x_theta(double theta);
CatalogEntry lemma61_extremizer(std::size_t n, double a = 1.0);

struct CatalogInfo {
  std::string id;
  std::string dimension;
  std::string provenance;
  std::vector<std::string> tight_checks;
};

const std::vector<CatalogInfo>& catalog_index();
bool is_catalog_id(std::string_view id);

/// Default parameter grid for an entry id; "all" concatenates every grid.
/// Throws BadArgument for unknown ids.
std::vector<CatalogEntry> default_instances(std::string_view id);

/// Recomputes every named quantity of the entry from its matrices.
std::map<std::string, double> compute_quantities(const CatalogEntry& entry);

/// Runs a "check@param" tag on the entry's matrices; returns the report
/// whose check_id matches the tag's check name.
CheckReport run_check_tag(const CatalogEntry& entry, std::string_view tag, double tol = kDefaultTol);

struct QuantityResult {
  Expectation expected;
  double computed = 0.0;
  bool ok = false;
};

struct ReproduceResult {
  std::string id;
  std::string label;
  std::vector<QuantityResult> quantities;
  /// Tight checks with |ratio - 1| <= kTightTol.
  std::vector<CheckReport> tight;
  std::vector<bool> tight_ok;
  bool ok = true;
};

inline constexpr double kTightTol = 1e-6;

ReproduceResult reproduce(const CatalogEntry& entry);

Json to_json(const CatalogEntry& entry);
Json to_json(const ReproduceResult& result);

}  // namespace modlab
