#pragma once

// Monte Carlo estimation on top of geometry realizations.
//
// Trial i always draws from RandomStream::for_trial(seed, i). Statistic
// values are stored by trial index and reduced in index order, so an
// estimate is bit-identical for any number of worker threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plpf/fading.hpp"
#include "plpf/geometry.hpp"
#include "plpf/random.hpp"

namespace plpf::mc {

inline constexpr std::size_t kMinTrials = 100;

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  /// Trials that produced a finite value (the ones averaged).
  std::size_t n_trials = 0;
  /// Trials whose statistic was NaN or infinite; excluded from the mean.
  std::size_t n_nonfinite = 0;

  std::pair<double, double> ci95() const {
    return {mean - 1.96 * std_error, mean + 1.96 * std_error};
  }
  /// (mean - reference) / std_error; 0 when both coincide with zero error.
  double z_score(double reference) const;
  bool within(double reference, double n_se) const;
};

struct McOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

using TrialStatistic = std::function<double(RandomStream&, std::size_t)>;

/// Statistic values in trial order. Throws DomainError if trials < 100.
std::vector<double> run_trials(const TrialStatistic& statistic, const McOptions& opts);
/// Sample mean and standard error of the finite entries.
Estimate summarize(std::span<const double> values);
Estimate estimate(const TrialStatistic& statistic, const McOptions& opts);

/// A sampled network per trial: window chosen for threshold s.
struct NetworkScenario {
  NetworkConfig config = NetworkConfig::standard();
  FadingSpec fading = FadingSpec::rayleigh();
  double s = 0.1;
  double max_missed = kDefaultMaxMissed;
  int transmissions = 1;
};

using RealizationStatistic = std::function<double(const PlpfRealization&, RandomStream&)>;

/// Samples the scenario network per trial and averages the statistic. The
/// same RandomStream continues into the statistic for extra draws.
Estimate estimate(const RealizationStatistic& statistic, const NetworkScenario& scenario,
                  const McOptions& opts);

/// Difference of two independent estimates in units of the combined error.
double z_difference(const Estimate& a, const Estimate& b);

struct KsResult {
  double statistic = 0.0;
  std::size_t n = 0;
  bool pass_at_1pct = false;
};

/// Two-sided one-sample Kolmogorov-Smirnov test; input need not be sorted.
KsResult empirical_cdf_ks(std::vector<double> samples,
                          const std::function<double(double)>& reference_cdf);
/// Same, with the reference given as a cdf evaluated on the sorted samples
/// (for references that are cheaper to compute incrementally).
KsResult ks_from_sorted_cdf(std::span<const double> cdf_at_sorted_samples);

struct CountDistribution {
  /// histogram[k] = trials with count k; the last bin collects k >= bins-1.
  std::vector<std::size_t> histogram;
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// variance / mean; 1 for a Poisson law.
  double dispersion_index = 0.0;
};

CountDistribution estimate_distribution(const TrialStatistic& count, const McOptions& opts,
                                        std::size_t bins);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  bool pass_at_1pct = false;
};

/// Pearson test of a count histogram against Poisson(mean). Bins with
/// expected count below 5 are pooled with their neighbours.
ChiSquareResult chi_square_poisson(const CountDistribution& dist, double mean);

/// CSV row: experiment, parameter values, mean, se, n.
void write_estimate_row(std::ostream& out, const std::string& experiment,
                        const std::vector<double>& params, const Estimate& est);

}  // namespace plpf::mc
