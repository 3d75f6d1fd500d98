#include "plpf/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "plpf/analytic.hpp"
#include "plpf/mc.hpp"
#include "plpf/quadrature.hpp"
#include "plpf/specfun.hpp"

namespace plpf::validation {

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool ValidationReport::criterion_passed(int criterion) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.criterion != criterion) continue;
    any = true;
    if (!c.passed) return false;
  }
  return any;
}

std::vector<const CheckResult*> ValidationReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;
using analytic::PathGain;
using analytic::PathLoss;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe(const mc::Estimate& est, double reference) {
  return "mc " + num(est.mean) + " +- " + num(est.std_error) + " vs " + num(reference) +
         " (z " + num(est.z_score(reference)) + ")";
}

class Suite {
 public:
  explicit Suite(const ValidationOptions& opts) : opts_(opts) {}

  /// Runs `body`, which fills detail and returns pass/fail.
  void check(int criterion, std::string name, const std::function<bool(std::string&)>& body) {
    CheckResult r;
    r.criterion = criterion;
    r.name = std::move(name);
    const auto t0 = Clock::now();
    try {
      r.passed = body(r.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail += std::string(r.detail.empty() ? "" : "; ") + "error: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report_.checks.push_back(std::move(r));
  }

  /// Options for the next Monte Carlo run; every run gets its own base seed.
  mc::McOptions mc_options() {
    return {opts_.trials, derive_seed(opts_.seed, 1000 + run_counter_++), opts_.threads};
  }

  const ValidationOptions& options() const { return opts_; }
  ValidationReport& report() { return report_; }

 private:
  ValidationOptions opts_;
  ValidationReport report_;
  std::uint64_t run_counter_ = 0;
};

std::string fading_label(const FadingSpec& f) {
  return f.is_degenerate() ? "none" : "m=" + num(f.m());
}

double connected_count(const PlpfRealization& real, double s) {
  return static_cast<double>(connected_set(real, s).size());
}

// 1. Connected count in the standard network, with and without fading.
void connectivity(Suite& suite) {
  const auto t0 = Clock::now();
  const NetworkConfig cfg = NetworkConfig::standard();
  const double s = 0.1;
  const double reference = 10.0 * specfun::kPi;
  for (const auto& fading : {FadingSpec::rayleigh(), FadingSpec::nakagami(2.0),
                             FadingSpec::nakagami(5.0), FadingSpec::none()}) {
    suite.check(1, "connected count s=0.1 " + fading_label(fading), [&](std::string& detail) {
      const mc::NetworkScenario sc{cfg, fading, s};
      const auto est = mc::estimate(
          [&](const PlpfRealization& real, RandomStream&) { return connected_count(real, s); },
          sc, suite.mc_options());
      const double analytic_value = analytic::expected_connected(cfg, fading, s);
      detail = describe(est, reference) + ", analytic " + num(analytic_value);
      return est.within(reference, 4.0) && std::abs(analytic_value - reference) < 1e-9;
    });
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  suite.check(1, "connected count runtime", [&](std::string& detail) {
    detail = "budget 60 s";
    return elapsed <= 60.0;
  });
}

// 2. Connectivity fading gain against simulation, and its minimizer.
void fading_gain(Suite& suite) {
  const double s = 0.5;
  const std::pair<double, NetworkConfig> grid[] = {
      {0.5, NetworkConfig(2, 4.0)}, {1.0, NetworkConfig(2, 2.0)}, {1.5, NetworkConfig(3, 2.0)}};
  for (const auto& [delta, cfg] : grid) {
    for (double m : {1.0, 2.0, 5.0}) {
      const auto fading = FadingSpec::nakagami(m);
      suite.check(2, "gain delta=" + num(delta) + " m=" + num(m), [&](std::string& detail) {
        const double without = analytic::expected_connected(cfg, FadingSpec::none(), s);
        auto est = mc::estimate(
            [&](const PlpfRealization& real, RandomStream&) {
              return connected_count(real, s) / without;
            },
            mc::NetworkScenario{cfg, fading, s}, suite.mc_options());
        const double gain = analytic::connectivity_gain(cfg, fading).gain;
        detail = describe(est, gain);
        return est.within(gain, 4.0);
      });
    }
  }
  suite.check(2, "gain minimum over delta at m=1", [&](std::string& detail) {
    const auto gain = [](double delta) {
      return analytic::connectivity_gain(NetworkConfig(2, 2.0 / delta), FadingSpec::rayleigh())
          .gain;
    };
    double a = 0.1;
    double b = 1.5;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    for (int it = 0; it < 100 && b - a > 1e-10; ++it) {
      if (gain(c) < gain(d)) {
        b = d;
      } else {
        a = c;
      }
      c = b - phi * (b - a);
      d = a + phi * (b - a);
    }
    const double argmin = 0.5 * (a + b);
    detail = "argmin delta " + num(argmin) + ", gain " + num(gain(argmin));
    return std::abs(argmin - 0.462) <= 0.005;
  });
}

// 3. Fading preserves the path loss process (delta = 1), and interval crossing.
void distribution_preservation(Suite& suite) {
  const NetworkConfig cfg = NetworkConfig::standard();
  const double target_points = 12000.0;
  const double cap = 4.0 * target_points;
  std::uint64_t stream = 0;
  for (double m : {1.0, 2.0, 5.0}) {
    suite.check(3, "KS of xi on [0, L/4] m=" + num(m), [&](std::string& detail) {
      RandomStream rng = RandomStream::for_trial(derive_seed(suite.options().seed, 3), stream++);
      const auto fading = FadingSpec::nakagami(m);
      const auto real = attach_fading(sample_plp(cfg, cap, rng), fading, rng);
      const double window = real.window_loss_bound;
      const double upper = window / 4.0;
      std::vector<double> xi;
      for (double v : real.xi) {
        if (v < upper) xi.push_back(v);
      }
      std::sort(xi.begin(), xi.end());
      // Intensity of xi from a window [0, L): c_d E[f; f < L/t] = c_d P(m+1, m L/t).
      const auto intensity = [&](double t) {
        return t <= 0.0 ? 1.0 : specfun::gamma_p(m + 1.0, m * window / t);
      };
      std::vector<double> cdf(xi.size());
      double acc = 0.0;
      double prev = 0.0;
      for (std::size_t i = 0; i < xi.size(); ++i) {
        acc += quad::integrate(intensity, prev, xi[i]).value;
        prev = xi[i];
        cdf[i] = acc;
      }
      const double total = acc + quad::integrate(intensity, prev, upper).value;
      for (auto& v : cdf) v /= total;
      const auto ks = mc::ks_from_sorted_cdf(cdf);
      detail = "n " + std::to_string(ks.n) + ", D " + num(ks.statistic) + ", critical " +
               num(1.628 / std::sqrt(static_cast<double>(ks.n)));
      return ks.pass_at_1pct && ks.n >= 10000;
    });
  }
  for (double m : {1.0, 2.0, 3.0}) {
    suite.check(3, "interval crossing fraction m=" + num(m), [&](std::string& detail) {
      const auto fading = FadingSpec::nakagami(m);
      const double a = 10.0;
      const std::size_t n = 100;
      const auto est = mc::estimate(
          [&](RandomStream& rng, std::size_t) {
            const auto real = sample_conditioned(cfg, n, a, fading, rng);
            const auto out = std::count_if(real.xi.begin(), real.xi.end(),
                                           [a](double v) { return v > a; });
            return static_cast<double>(out) / static_cast<double>(n);
          },
          suite.mc_options());
      const double reference =
          std::exp((m - 1.0) * std::log(m) - m - specfun::log_gamma(m));
      detail = describe(est, reference);
      return est.within(reference, 4.0);
    });
  }
}

// 4. Reordering probabilities.
void reordering(Suite& suite) {
  const double ln2 = std::log(2.0);
  const struct {
    int i, j;
    double exact;
  } closed[] = {{1, 1, 1.0 - ln2},
                {1, 2, 3.0 - 4.0 * ln2},
                {2, 2, 12.0 * ln2 - 8.0},
                {3, 3, 167.0 / 2.0 - 120.0 * ln2},
                {4, 4, 1120.0 * ln2 - 776.0}};
  for (const auto& c : closed) {
    suite.check(4, "reorder quadrature P" + std::to_string(c.i) + std::to_string(c.j),
                [&](std::string& detail) {
                  const double q = analytic::reorder_probability_integral(c.i, c.j);
                  detail = "quadrature " + num(q) + " vs " + num(c.exact) + " (diff " +
                           num(q - c.exact) + ")";
                  return std::abs(q - c.exact) <= 1e-6;
                });
  }
  const NetworkConfig cfg = NetworkConfig::standard();
  for (const auto& [i, j] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    suite.check(4, "reorder MC P" + std::to_string(i) + std::to_string(j),
                [&](std::string& detail) {
                  const auto est = mc::estimate(
                      [&](RandomStream& rng, std::size_t) {
                        auto real = attach_fading(sample_plp(cfg, 40.0, rng),
                                                  FadingSpec::rayleigh(), rng);
                        const auto far = static_cast<std::size_t>(i + j - 1);
                        if (real.size() <= far) return std::nan("");
                        return real.xi[i - 1] > real.xi[far] ? 1.0 : 0.0;
                      },
                      suite.mc_options());
                  const double ref = analytic::reorder_probability(i, j);
                  detail = describe(est, ref);
                  return est.within(ref, 4.0);
                });
  }
  suite.check(4, "reorder large-i limit P(200,3) -> 1/4", [&](std::string& detail) {
    const double p = analytic::reorder_probability(200, 3);
    detail = "P(200,3) " + num(p) + " vs 0.25 (diff " + num(p - 0.25) + ")";
    return std::abs(p - 0.25) <= 1e-3;
  });
}

// 5. Broadcast sum distance.
void sum_distance(Suite& suite) {
  const NetworkConfig cfg = NetworkConfig::standard();
  for (double s : {0.1, 1.0}) {
    suite.check(5, "sum distance MC s=" + num(s), [&](std::string& detail) {
      const auto est = mc::estimate(
          [&](const PlpfRealization& real, RandomStream&) {
            double sum = 0.0;
            for (auto i : connected_set(real, s).indices) sum += real.r[i];
            return sum;
          },
          mc::NetworkScenario{cfg, FadingSpec::rayleigh(), s}, suite.mc_options());
      const double ref = analytic::broadcast_sum_distance(cfg, FadingSpec::rayleigh(), s)
                             .with_fading;
      detail = describe(est, ref);
      return est.within(ref, 4.0);
    });
  }
  suite.check(5, "sum distance without fading", [&](std::string& detail) {
    double worst = 0.0;
    for (double s : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
      const double d = analytic::broadcast_sum_distance(cfg, FadingSpec::none(), s).with_fading;
      const double ref = 2.0 * specfun::kPi / (3.0 * std::pow(s, 1.5));
      worst = std::max(worst, std::abs(d - ref) / ref);
    }
    detail = "max relative error " + num(worst);
    return worst <= 1e-12;
  });
}

// 6. Broadcast transport capacity.
void transport_capacity(Suite& suite) {
  const auto cfg_for = [](double big_delta) { return NetworkConfig(2, 3.0 / big_delta); };
  suite.check(6, "first-order optimality of R_opt", [&](std::string& detail) {
    double worst_residual = 0.0;
    double worst_gap = 0.0;
    for (int k = 30; k <= 99; ++k) {
      const double big = k / 100.0;
      for (const auto& fading : {FadingSpec::none(), FadingSpec::rayleigh()}) {
        const auto c = analytic::broadcast_transport_capacity(cfg_for(big), fading);
        worst_residual = std::max(worst_residual, std::abs(*c.first_order_residual));
        worst_gap = std::max(worst_gap, std::abs(c.r_opt - *c.r_opt_numeric));
      }
    }
    detail = "max |residual| " + num(worst_residual) + ", max |R_opt - numeric| " +
             num(worst_gap);
    return worst_residual <= 1e-9 && worst_gap <= 1e-9;
  });
  suite.check(6, "capacity at Delta=1, d=2", [&](std::string& detail) {
    const double ref = 2.0 * specfun::kPi / (3.0 * std::log(2.0));
    double worst = 0.0;
    for (const auto& fading : {FadingSpec::none(), FadingSpec::rayleigh()}) {
      const auto c = analytic::broadcast_transport_capacity(NetworkConfig(2, 3.0), fading);
      worst = std::max(worst, std::abs(c.capacity.value_or(NAN) - ref));
    }
    detail = "2 pi / (3 ln 2) = " + num(ref) + ", max |diff| " + num(worst);
    return worst <= 1e-9;
  });
  suite.check(6, "lower bound gap on Delta in [0.3, 0.99]", [&](std::string& detail) {
    double worst = 0.0;
    double at = 0.0;
    for (int k = 300; k <= 990; ++k) {
      const double big = k / 1000.0;
      const auto c = analytic::broadcast_transport_capacity(cfg_for(big), FadingSpec::none());
      const double gap = 1.0 - *c.lower_bound / *c.capacity;
      if (gap > worst) {
        worst = gap;
        at = big;
      }
    }
    detail = "max gap " + num(100.0 * worst) + "% at Delta " + num(at);
    // 0.13% at two significant figures.
    return worst < 0.00135;
  });
  suite.check(6, "Delta > 1 unbounded", [&](std::string& detail) {
    const NetworkConfig cfg(2, 2.0);
    const auto c = analytic::broadcast_transport_capacity(cfg, FadingSpec::rayleigh());
    bool increasing = true;
    double prev = analytic::capacity_at_rate(cfg, FadingSpec::rayleigh(), 1.0);
    double rate = 1.0;
    for (int k = 0; k < 30; ++k) {
      rate /= 2.0;
      const double v = analytic::capacity_at_rate(cfg, FadingSpec::rayleigh(), rate);
      increasing = increasing && v > prev;
      prev = v;
    }
    detail = std::string("bounded flag ") + (c.bounded ? "set" : "clear") +
             ", C(R) at R=" + num(rate) + " is " + num(prev);
    return !c.bounded && !c.capacity && increasing;
  });
}

// 7. Reach probability and epsilon thresholds.
void reachability(Suite& suite) {
  suite.check(7, "p_1 closed form", [&](std::string& detail) {
    double worst = 0.0;
    for (double st : {1e-8, 1e-4, 0.01, 0.049, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      const double ref = -std::expm1(-st) / st;
      worst = std::max(worst, std::abs(analytic::broadcast_reach_probability(1, st) - ref));
    }
    detail = "max |diff| " + num(worst);
    return worst <= 1e-12;
  });
  suite.check(7, "epsilon threshold round trip", [&](std::string& detail) {
    double worst = INFINITY;
    for (int m : {1, 2, 3}) {
      for (double eps : {0.01, 0.05, 0.1}) {
        const auto t = analytic::epsilon_reachability_threshold(m, eps);
        const double margin = analytic::broadcast_reach_probability(m, t.exact) - (1.0 - eps);
        worst = std::min(worst, margin);
      }
    }
    detail = "min p_m(threshold) - (1 - eps) = " + num(worst);
    return worst >= -1e-12;
  });
  suite.check(7, "Lambert W threshold for m=1", [&](std::string& detail) {
    double worst = 0.0;
    for (double eps : {0.001, 0.01, 0.05, 0.1, 0.2}) {
      const auto t = analytic::epsilon_reachability_threshold(1, eps);
      worst = std::max(worst,
                       std::abs(analytic::broadcast_reach_probability(1, t.exact) - (1.0 - eps)));
    }
    detail = "max |p_1 - (1 - eps)| " + num(worst);
    return worst <= 1e-9;
  });
  suite.check(7, "sufficient threshold 2 eps within 7%", [&](std::string& detail) {
    double worst = 0.0;
    bool below = true;
    for (double eps : {1e-4, 0.001, 0.01, 0.02, 0.05, 0.08, 0.1}) {
      const auto t = analytic::epsilon_reachability_threshold(1, eps);
      below = below && t.sufficient < t.exact;
      worst = std::max(worst, (t.exact - t.sufficient) / t.exact);
    }
    detail = "max relative gap " + num(100.0 * worst) + "%";
    return below && worst < 0.07;
  });
}

// 8. Nodes receiving exactly k of n packets under block Rayleigh fading.
void retransmissions(Suite& suite) {
  const NetworkConfig cfg = NetworkConfig::standard();
  const double s = 0.5;
  const auto fading = FadingSpec::rayleigh();
  const auto count_k = [&](int k, int n) {
    return mc::estimate(
        [&, k, n](const PlpfRealization& real, RandomStream& rng) {
          const auto counts = reception_counts(real, fading, s, n, rng);
          return static_cast<double>(std::count_if(counts.begin(), counts.end(),
                                                   [k](int c) { return c == k; }));
        },
        mc::NetworkScenario{cfg, fading, s, kDefaultMaxMissed, n}, suite.mc_options());
  };
  mc::Estimate k2n3;
  mc::Estimate k2n6;
  for (const auto& [k, n] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{3, 6}, std::pair{2, 6}}) {
    suite.check(8, "exactly k=" + std::to_string(k) + " of n=" + std::to_string(n),
                [&](std::string& detail) {
                  const auto est = count_k(k, n);
                  if (k == 2) (n == 3 ? k2n3 : k2n6) = est;
                  const double ref = *analytic::expected_received_k(cfg, s, k, n);
                  detail = describe(est, ref);
                  return est.within(ref, 4.0) && std::abs(ref - cfg.ball_volume() / (k * s)) < 1e-12;
                });
  }
  suite.check(8, "independence from n at k=2", [&](std::string& detail) {
    const double z = mc::z_difference(k2n3, k2n6);
    detail = "n=3 " + num(k2n3.mean) + ", n=6 " + num(k2n6.mean) + ", z " + num(z);
    return k2n3.n_trials > 0 && k2n6.n_trials > 0 && std::abs(z) <= 4.0;
  });
  for (int n : {3, 6}) {
    suite.check(8, "sum over k equals retransmission count n=" + std::to_string(n),
                [&](std::string& detail) {
                  double sum = 0.0;
                  for (int k = 1; k <= n; ++k) sum += *analytic::expected_received_k(cfg, s, k, n);
                  const double eq = analytic::expected_connected_retransmissions(cfg, fading, s, n);
                  const auto est = mc::estimate(
                      [&](const PlpfRealization& real, RandomStream& rng) {
                        const auto counts = reception_counts(real, fading, s, n, rng);
                        return static_cast<double>(std::count_if(
                            counts.begin(), counts.end(), [](int c) { return c > 0; }));
                      },
                      mc::NetworkScenario{cfg, fading, s, kDefaultMaxMissed, n},
                      suite.mc_options());
                  detail = "sum " + num(sum) + " vs " + num(eq) + "; " + describe(est, eq);
                  return std::abs(sum - eq) <= 1e-10 * eq && est.within(eq, 4.0);
                });
  }
}

// 9. Maximum connected distance versus the Jensen bound.
void max_distance(Suite& suite) {
  const NetworkConfig cfg = NetworkConfig::standard();
  const auto fading = FadingSpec::rayleigh();
  for (double s : {0.05, 0.1, 0.2, 0.5, 1.0}) {
    suite.check(9, "max distance s=" + num(s), [&](std::string& detail) {
      const auto est = mc::estimate(
          [&](const PlpfRealization& real, RandomStream&) {
            double best = 0.0;
            for (auto i : connected_set(real, s).indices) best = std::max(best, real.r[i]);
            return best;
          },
          mc::NetworkScenario{cfg, fading, s}, suite.mc_options());
      const double bound = analytic::max_distance_bound(cfg, fading, s);
      const double exact = analytic::mean_max_distance(cfg, fading, s);
      detail = describe(est, exact) + ", bound " + num(bound) + ", ratio " +
               num(est.mean / bound);
      return est.mean <= bound && est.mean >= 0.85 * bound && est.within(exact, 4.0);
    });
  }
  suite.check(9, "bound at s=0.1", [&](std::string& detail) {
    const double bound = analytic::max_distance_bound(cfg, fading, 0.1);
    detail = "bound " + num(bound);
    return std::abs(bound - 6.36) < 0.005;
  });
}

// 10. Localization and the retransmission density peak.
void localization(Suite& suite) {
  const NetworkConfig cfg = NetworkConfig::standard();
  const double cd = cfg.ball_volume();
  for (const auto& fading : {FadingSpec::rayleigh(), FadingSpec::nakagami(3.0), FadingSpec::none()}) {
    suite.check(10, "ML index vs exhaustive scan " + fading_label(fading),
                [&](std::string& detail) {
                  RandomStream rng = RandomStream::for_trial(derive_seed(suite.options().seed, 10), 0);
                  int mismatches = 0;
                  for (int t = 0; t < 100; ++t) {
                    const double gain = cd / 200.0 + (cd - cd / 200.0) * rng.uniform();
                    const int closed = analytic::localize(cfg, fading, PathGain{gain});
                    const int scan =
                        analytic::localize_by_scan(cfg, fading, PathLoss{1.0 / gain}, 200);
                    const int ceil_form = static_cast<int>(std::ceil(cd / gain));
                    if (closed != scan || closed != ceil_form) ++mismatches;
                  }
                  detail = std::to_string(mismatches) + " mismatches in 100 gains";
                  return mismatches == 0;
                });
  }
  suite.check(10, "lambda_6^6(0) = pi", [&](std::string& detail) {
    const double v = analytic::received_k_density(cfg, 1.0, 6, 6, 1e-15);
    detail = "density " + num(v);
    return std::abs(v - specfun::kPi) <= 1e-12;
  });
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& opts) {
  const auto t0 = Clock::now();
  Suite suite(opts);
  connectivity(suite);
  fading_gain(suite);
  distribution_preservation(suite);
  reordering(suite);
  sum_distance(suite);
  transport_capacity(suite);
  reachability(suite);
  retransmissions(suite);
  max_distance(suite);
  localization(suite);
  ValidationReport report = std::move(suite.report());
  report.trials = opts.trials;
  report.reduced_trials = opts.trials < kDefaultTrials;
  report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

void write_report(std::ostream& out, const ValidationReport& report) {
  if (report.reduced_trials) {
    out << "note: " << report.trials << " trials per estimate (default " << kDefaultTrials
        << "); confidence intervals are wider by a factor of about "
        << num(std::sqrt(static_cast<double>(kDefaultTrials) / report.trials)) << "\n";
  }
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS" : "FAIL") << " [" << c.criterion << "] " << c.name << ": "
        << c.detail << "\n";
  }
  const auto failed = report.failures().size();
  out << (report.checks.size() - failed) << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace plpf::validation
