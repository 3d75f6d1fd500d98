#include <algorithm>
#include <cmath>

#include "analytic_detail.hpp"
#include "plpf/analytic.hpp"

namespace plpf::analytic {

using detail::delta_is_one;
using detail::is_rayleigh;
using detail::require_index;
using detail::require_positive;

namespace {

// 1 - F(y)^n without cancellation when F(y) is close to 1.
double one_minus_cdf_pow(const FadingSpec& fading, double y, int n) {
  const double surv = fading.survival(y);
  if (surv >= 1.0) return 1.0;
  if (surv <= 0.0) return 0.0;
  const double log_cdf = surv < 0.5 ? std::log1p(-surv) : std::log(fading.cdf(y));
  return -std::expm1(n * log_cdf);
}

// Integral over u = c_d x^delta of g(x(u)) on [0, inf).
double integrate_mean_measure(const NetworkConfig& cfg, double s,
                              const std::function<double(double)>& g) {
  const double cd = cfg.ball_volume();
  const double inv_delta = 1.0 / cfg.delta();
  const auto integrand = [&](double u) {
    if (u <= 0.0) return g(0.0);
    return g(std::pow(u / cd, inv_delta));
  };
  const double u1 = cfg.mean_measure(1.0 / s);
  const double pts[] = {0.01 * u1, 0.1 * u1, 0.5 * u1, u1, 2.0 * u1, 5.0 * u1, 20.0 * u1};
  return quad::integrate_to_infinity(integrand, 0.0, pts).value;
}

}  // namespace

double expected_connected(const NetworkConfig& cfg, const FadingSpec& fading, double s) {
  require_positive(s, "s", "expected_connected");
  return cfg.ball_volume() * std::pow(s, -cfg.delta()) * fading.moment(cfg.delta());
}

double expected_connected_integral(const NetworkConfig& cfg, const FadingSpec& fading,
                                   double s) {
  require_positive(s, "s", "expected_connected_integral");
  return integrate_mean_measure(cfg, s, [&](double x) { return fading.survival(s * x); });
}

GainReport connectivity_gain(const NetworkConfig& cfg, const FadingSpec& fading) {
  GainReport out;
  out.with_fading = expected_connected(cfg, fading, 1.0);
  out.without_fading = cfg.ball_volume();
  out.gain = out.with_fading / out.without_fading;
  return out;
}

double isolation_probability(const NetworkConfig& cfg, const FadingSpec& fading, double s) {
  return std::exp(-expected_connected(cfg, fading, s));
}

double expected_connected_within(const NetworkConfig& cfg, const FadingSpec& fading,
                                 double s, double a) {
  require_positive(s, "s", "expected_connected_within");
  if (!(a >= 0.0)) throw DomainError("expected_connected_within: a must be >= 0");
  if (a == 0.0) return 0.0;
  if (std::isinf(a)) return expected_connected(cfg, fading, s);
  return cfg.mean_measure(a) * conditioned_plpf_cdf(cfg, fading, a, 1.0 / s);
}

GainReport mean_connected_node(const NetworkConfig& cfg, const FadingSpec& fading, double s) {
  require_positive(s, "s", "mean_connected_node");
  const double delta = cfg.delta();
  GainReport out;
  out.without_fading = delta / ((delta + 1.0) * s);
  out.gain = fading.moment(delta + 1.0) / fading.moment(delta);
  out.with_fading = out.without_fading * out.gain;
  return out;
}

double retransmission_density(const NetworkConfig& cfg, const FadingSpec& fading, double s,
                              int n, double x) {
  require_positive(s, "s", "retransmission_density");
  require_index(n, "retransmission_density");
  require_positive(x, "x", "retransmission_density");
  return one_minus_cdf_pow(fading, s * x, n) * mean_density(cfg, x);
}

double expected_connected_retransmissions(const NetworkConfig& cfg, const FadingSpec& fading,
                                          double s, int n) {
  require_positive(s, "s", "expected_connected_retransmissions");
  require_index(n, "expected_connected_retransmissions");
  if (fading.is_degenerate() || n == 1) return expected_connected(cfg, fading, s);
  if (delta_is_one(cfg) && is_rayleigh(fading)) {
    return cfg.ball_volume() / s * (specfun::digamma(n + 1.0) + specfun::kEulerGamma);
  }
  return integrate_mean_measure(cfg, s,
                                [&](double x) { return one_minus_cdf_pow(fading, s * x, n); });
}

double expected_reached_decreasing_thresholds(const NetworkConfig& cfg,
                                              const FadingSpec& fading, double s1, int n) {
  require_positive(s1, "s1", "expected_reached_decreasing_thresholds");
  require_index(n, "expected_reached_decreasing_thresholds");
  if (fading.is_degenerate()) return cfg.mean_measure(n / s1);
  // The largest threshold reach scales with n, so integrate on that scale.
  const double sn = s1 / n;
  return integrate_mean_measure(cfg, sn, [&](double x) {
    double log_all_fail = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double surv = fading.survival(s1 * x / k);
      if (surv >= 1.0) return 1.0;
      log_all_fail += std::log1p(-surv);
    }
    return -std::expm1(log_all_fail);
  });
}

double max_loss_cdf(const NetworkConfig& cfg, const FadingSpec& fading, double s, double x) {
  require_positive(s, "s", "max_loss_cdf");
  if (std::isnan(x)) throw DomainError("max_loss_cdf: NaN argument");
  if (x <= 0.0) return std::exp(-expected_connected(cfg, fading, s));
  if (std::isinf(x)) return 1.0;
  return std::exp(-expected_missed_connections(cfg, fading, s, x));
}

double mean_max_distance(const NetworkConfig& cfg, const FadingSpec& fading, double s) {
  require_positive(s, "s", "mean_max_distance");
  const double alpha = cfg.alpha();
  const auto tail = [&](double r) {
    if (r <= 0.0) return -std::expm1(-expected_connected(cfg, fading, s));
    return -std::expm1(-expected_missed_connections(cfg, fading, s, std::pow(r, alpha)));
  };
  const double r1 = std::pow(1.0 / s, 1.0 / alpha);
  const double pts[] = {0.25 * r1, 0.5 * r1, r1, 1.5 * r1, 2.0 * r1, 4.0 * r1};
  return quad::integrate_to_infinity(tail, 0.0, pts).value;
}

double max_distance_bound(const NetworkConfig& cfg, const FadingSpec& fading, double s) {
  require_positive(s, "s", "max_distance_bound");
  if (!delta_is_one(cfg) || !is_rayleigh(fading)) {
    throw UnsupportedError("max_distance_bound: requires delta = 1 and Rayleigh fading");
  }
  const double mean_loss =
      (specfun::digamma(cfg.ball_volume() / s + 1.0) + specfun::kEulerGamma) / s;
  return std::pow(mean_loss, 1.0 / cfg.alpha());
}

}  // namespace plpf::analytic
