#pragma once

// Analytic-versus-simulation cross-checks behind `plpf validate`.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace plpf::validation {

inline constexpr std::size_t kDefaultTrials = 10000;

struct ValidationOptions {
  std::uint64_t seed = 20240501;
  /// Monte Carlo trials per estimate; below the default the report notes
  /// that confidence intervals are wider.
  std::size_t trials = kDefaultTrials;
  unsigned threads = 1;
};

struct CheckResult {
  /// Acceptance item this check belongs to (1-based).
  int criterion = 0;
  std::string name;
  bool passed = false;
  /// Deterministic summary of the measured values.
  std::string detail;
  double seconds = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool reduced_trials = false;
  std::size_t trials = 0;
  double seconds = 0.0;

  bool all_passed() const;
  /// Whether every check of the given criterion passed (false if none ran).
  bool criterion_passed(int criterion) const;
  std::vector<const CheckResult*> failures() const;
};

ValidationReport run_validation(const ValidationOptions& opts = {});

/// One line per check plus a summary; timings are omitted so the text is
/// identical across runs with the same options.
void write_report(std::ostream& out, const ValidationReport& report);

}  // namespace plpf::validation
