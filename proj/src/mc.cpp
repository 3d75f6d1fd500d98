#include "plpf/mc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "plpf/csv.hpp"
#include "plpf/error.hpp"
#include "plpf/specfun.hpp"

namespace plpf::mc {

double Estimate::z_score(double reference) const {
  const double diff = mean - reference;
  if (std_error == 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / std_error;
}

bool Estimate::within(double reference, double n_se) const {
  return std::abs(z_score(reference)) <= n_se;
}

std::vector<double> run_trials(const TrialStatistic& statistic, const McOptions& opts) {
  if (opts.trials < kMinTrials) {
    throw DomainError("run_trials: at least " + std::to_string(kMinTrials) +
                      " trials are required");
  }
  std::vector<double> values(opts.trials);
  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng = RandomStream::for_trial(opts.seed, i);
      values[i] = statistic(rng, i);
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(opts.threads, 1, std::max<std::size_t>(1, opts.trials / 10));
  if (workers == 1) {
    run_range(0, opts.trials);
    return values;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (opts.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(opts.trials, w * chunk);
      const std::size_t end = std::min(opts.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return values;
}

Estimate summarize(std::span<const double> values) {
  Estimate est;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++est.n_trials;
    } else {
      ++est.n_nonfinite;
    }
  }
  if (est.n_trials < 2) throw NumericError("summarize: fewer than two finite trial values");
  est.mean = sum / static_cast<double>(est.n_trials);
  double ss = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) ss += (v - est.mean) * (v - est.mean);
  }
  const double n = static_cast<double>(est.n_trials);
  est.std_error = std::sqrt(ss / (n - 1.0) / n);
  return est;
}

Estimate estimate(const TrialStatistic& statistic, const McOptions& opts) {
  const auto values = run_trials(statistic, opts);
  return summarize(values);
}

Estimate estimate(const RealizationStatistic& statistic, const NetworkScenario& scenario,
                  const McOptions& opts) {
  return estimate(
      [&](RandomStream& rng, std::size_t) {
        const PlpfRealization real =
            sample_network(scenario.config, scenario.fading, scenario.s, rng,
                           scenario.max_missed, scenario.transmissions);
        return statistic(real, rng);
      },
      opts);
}

double z_difference(const Estimate& a, const Estimate& b) {
  const double se = std::hypot(a.std_error, b.std_error);
  const double diff = a.mean - b.mean;
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / se;
}

KsResult ks_from_sorted_cdf(std::span<const double> cdf) {
  if (cdf.size() < kMinTrials) throw DomainError("ks: at least 100 samples are required");
  const double n = static_cast<double>(cdf.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    const double f = cdf[i];
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  KsResult out;
  out.statistic = d;
  out.n = cdf.size();
  out.pass_at_1pct = d < 1.628 / std::sqrt(n);
  return out;
}

KsResult empirical_cdf_ks(std::vector<double> samples,
                          const std::function<double(double)>& reference_cdf) {
  std::sort(samples.begin(), samples.end());
  std::vector<double> cdf(samples.size());
  std::transform(samples.begin(), samples.end(), cdf.begin(), reference_cdf);
  return ks_from_sorted_cdf(cdf);
}

CountDistribution estimate_distribution(const TrialStatistic& count, const McOptions& opts,
                                        std::size_t bins) {
  if (bins < 2) throw DomainError("estimate_distribution: need at least two bins");
  const auto values = run_trials(count, opts);
  CountDistribution out;
  out.histogram.assign(bins, 0);
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || std::floor(v) != v) {
      throw DomainError("estimate_distribution: statistic must be a non-negative integer");
    }
    ++out.histogram[std::min<std::size_t>(static_cast<std::size_t>(v), bins - 1)];
    sum += v;
  }
  out.n = values.size();
  const double n = static_cast<double>(out.n);
  out.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.variance = ss / (n - 1.0);
  out.dispersion_index = out.mean > 0.0 ? out.variance / out.mean : 0.0;
  return out;
}

ChiSquareResult chi_square_poisson(const CountDistribution& dist, double mean) {
  if (!(mean > 0.0)) throw DomainError("chi_square_poisson: mean must be > 0");
  const std::size_t bins = dist.histogram.size();
  const double n = static_cast<double>(dist.n);
  std::vector<double> expected(bins);
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < bins; ++k) {
    const double p = std::exp(-mean + k * std::log(mean) - specfun::log_gamma(k + 1.0));
    expected[k] = n * p;
    cumulative += p;
  }
  expected[bins - 1] = n * std::max(0.0, 1.0 - cumulative);

  // Pool left to right until each group expects at least 5; fold a short
  // final group into its predecessor.
  std::vector<std::pair<double, double>> groups;  // (observed, expected)
  double obs_acc = 0.0;
  double exp_acc = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    obs_acc += static_cast<double>(dist.histogram[k]);
    exp_acc += expected[k];
    if (exp_acc >= 5.0) {
      groups.emplace_back(obs_acc, exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (groups.empty()) {
      groups.emplace_back(obs_acc, exp_acc);
    } else {
      groups.back().first += obs_acc;
      groups.back().second += exp_acc;
    }
  }
  ChiSquareResult out;
  for (const auto& [o, e] : groups) out.statistic += (o - e) * (o - e) / e;
  out.dof = static_cast<int>(groups.size()) - 1;
  if (out.dof < 1) throw NumericError("chi_square_poisson: too few groups after pooling");
  out.p_value = specfun::gamma_q(0.5 * out.dof, 0.5 * out.statistic);
  out.pass_at_1pct = out.p_value > 0.01;
  return out;
}

void write_estimate_row(std::ostream& out, const std::string& experiment,
                        const std::vector<double>& params, const Estimate& est) {
  std::vector<std::string> cells{experiment};
  for (double p : params) cells.push_back(csv::format(p));
  cells.push_back(csv::format(est.mean));
  cells.push_back(csv::format(est.std_error));
  cells.push_back(csv::format(static_cast<long long>(est.n_trials)));
  csv::write_row(out, cells);
}

}  // namespace plpf::mc
