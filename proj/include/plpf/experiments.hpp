#pragma once

// Declarative experiment runs behind the `plpf` command line tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace plpf::experiments {

/// Experiment ids understood by run().
const std::vector<std::string>& experiment_names();

struct ExperimentSpec {
  std::string name;
  /// Parameter grid keyed by d, alpha, delta, Delta, m, s, eps, n, k, x.
  /// m = inf stands for no fading.
  std::map<std::string, std::vector<double>> grid;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Output path; empty or "-" writes to standard output.
  std::string out;
  /// `sample` only: uniform toy placement instead of the PPP.
  bool toy = false;
};

/// Flat key=value settings; later sources override earlier ones.
using Settings = std::map<std::string, std::string>;

/// Reads key=value lines; '#' starts a comment. Throws DomainError on
/// malformed lines and std::runtime_error when the file cannot be read.
Settings load_config(const std::string& path);
Settings parse_config(std::istream& in);

/// "1,2,5", "0:1.5:0.05" (inclusive range) or a mix; "inf" and "none"
/// map to +infinity. Throws DomainError on malformed input.
std::vector<double> parse_grid(std::string_view text);

/// Validates the experiment id and all keys, fills grid, trials, seed and
/// out. Throws DomainError on unknown ids, keys or malformed values.
ExperimentSpec make_spec(const std::string& name, const Settings& settings);

/// Writes the experiment CSV (with '#' header comments) to `out`. Returns
/// false when a `validate` run has failing checks.
bool run(const ExperimentSpec& spec, std::ostream& out);
/// Same, honoring spec.out. Throws std::runtime_error on unwritable paths.
bool run(const ExperimentSpec& spec);

/// Names of the analytic operations reachable through evaluate_operation().
std::vector<std::string> operation_names();

/// Evaluates one analytic operation over the cartesian product of the
/// parameter grids and writes a CSV table. Throws DomainError on unknown
/// operations or parameters.
void evaluate_operation(const std::string& name, const Settings& params, std::ostream& out);

}  // namespace plpf::experiments
