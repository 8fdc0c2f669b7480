#pragma once

// The acceptance suite: twelve numbered checks with pinned tolerances,
// sample counts and seeds. Shared by `ellarr verify` and the acceptance test.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellarr/report.hpp"

namespace ellarr {

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::optional<std::string> only;  ///< criterion name or number
  std::optional<int> n;             ///< restricts the level in nodal-fiber-sum, monodromy and translate-sum
  std::optional<double> tol;        ///< replaces every residual upper bound
  std::optional<Lattice> lattice;   ///< replaces the random lattices
  NumericPolicy policy;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double metric = 0;     ///< worst observed value
  double threshold = 0;  ///< bound it was compared against
  std::string relation;  ///< "<=" or ">="
  std::string detail;
  json data;             ///< criterion-specific extras, part of the report
  double seconds = 0;    ///< wall time; kept out of the report
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CriterionResult> results;
  bool all_pass() const;
  json to_json() const;
  /// One line per criterion.
  std::string to_text() const;
};

/// Names in criterion order.
const std::vector<std::string>& criterion_names();

/// Runs the selected criteria. Criterion 12 reruns 1-11 and compares the
/// serialized reports.
VerifyReport run_verify(const VerifyConfig& config);

/// Wall-time limits per criterion in seconds (0 = none).
double criterion_time_limit(int id);

}  // namespace ellarr
