#include <algorithm>
#include <cmath>

#include "analytic_detail.hpp"
#include "plpf/analytic.hpp"

namespace plpf::analytic {

using detail::require_positive;

namespace {

void require_reach_args(int m, double s_tilde, const char* fn) {
  if (m < 1) throw DomainError(std::string(fn) + ": m must be an integer >= 1");
  if (!(s_tilde >= 0.0) || !std::isfinite(s_tilde)) {
    throw DomainError(std::string(fn) + ": s~ must be finite and >= 0");
  }
}

double log2_ratio(double rate) { return rate * std::log(2.0); }

}  // namespace

double broadcast_reach_probability(int m, double s_tilde) {
  require_reach_args(m, s_tilde, "broadcast_reach_probability");
  if (s_tilde == 0.0) return 1.0;
  const double mu = m * s_tilde;
  if (s_tilde < 0.05) {
    return specfun::gamma_p(m + 1.0, mu) / s_tilde + specfun::gamma_q(m, mu);
  }
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double log_pmf = -mu + k * std::log(mu) - specfun::log_gamma(k + 1.0);
    sum += std::exp(log_pmf) * (1.0 - static_cast<double>(k) / m);
  }
  return std::clamp((1.0 - sum) / s_tilde, 0.0, 1.0);
}

double broadcast_reach_probability_integral(double m, double s_tilde) {
  if (!(m >= 0.5) || !std::isfinite(m)) {
    throw DomainError("broadcast_reach_probability_integral: m must be >= 0.5");
  }
  if (!(s_tilde >= 0.0) || !std::isfinite(s_tilde)) {
    throw DomainError("broadcast_reach_probability_integral: s~ must be finite and >= 0");
  }
  if (s_tilde == 0.0) return 1.0;
  const auto integrand = [&](double x) { return specfun::gamma_q(m, m * s_tilde * x); };
  const double pts[] = {0.5 / s_tilde, 1.0 / s_tilde, 2.0 / s_tilde};
  return quad::integrate(integrand, 0.0, 1.0, pts, quad::Options{1e-13, 1e-11, 4000}).value;
}

ReachBounds broadcast_reach_bounds(int m, double s_tilde) {
  require_reach_args(m, s_tilde, "broadcast_reach_bounds");
  ReachBounds out;
  const double log_coef = m * std::log(static_cast<double>(m)) - specfun::log_gamma(m + 2.0);
  out.lower = s_tilde == 0.0
                  ? 1.0
                  : std::max(0.0, 1.0 - std::exp(log_coef + m * std::log(s_tilde)));
  if (s_tilde == 0.0) {
    out.upper = 1.0;
  } else {
    const double val = (1.0 - std::exp(-m * s_tilde) * (1.0 + (m - 1.0) * s_tilde)) / s_tilde;
    out.upper = std::min(1.0, val);
  }
  return out;
}

ReachThreshold epsilon_reachability_threshold(int m, double eps) {
  if (m < 1) throw DomainError("epsilon_reachability_threshold: m must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("epsilon_reachability_threshold: eps must lie in (0, 1)");
  }
  ReachThreshold out;
  out.sufficient = std::exp((specfun::log_gamma(m + 2.0) + std::log(eps)) / m) / m;
  if (m == 1) {
    const double inv_q = 1.0 / (1.0 - eps);
    out.exact = inv_q + specfun::lambert_w0(-std::exp(-inv_q) * inv_q);
    out.quadratic = 2.0 * eps + 4.0 / 3.0 * eps * eps;
    return out;
  }
  // p_m is decreasing in s~; bisect between the sufficient point and a
  // point that fails the target.
  const double target = 1.0 - eps;
  double lo = out.sufficient;
  double hi = std::max(2.0 * lo, 1e-300);
  while (broadcast_reach_probability(m, hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("epsilon_reachability_threshold: no bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (broadcast_reach_probability(m, mid) >= target ? lo : hi) = mid;
  }
  out.exact = lo;
  return out;
}

GainReport broadcast_sum_distance(const NetworkConfig& cfg, const FadingSpec& fading,
                                  double s) {
  require_positive(s, "s", "broadcast_sum_distance");
  const double delta = cfg.delta();
  const double big = cfg.delta_broadcast();
  GainReport out;
  out.without_fading = cfg.ball_volume() * (delta / big) * std::pow(s, -big);
  out.gain = fading.moment(big);
  out.with_fading = out.without_fading * out.gain;
  return out;
}

double broadcast_sum_distance_integral(const NetworkConfig& cfg, const FadingSpec& fading,
                                       double s) {
  require_positive(s, "s", "broadcast_sum_distance_integral");
  const double cd = cfg.ball_volume();
  const double inv_delta = 1.0 / cfg.delta();
  const double inv_d = 1.0 / cfg.d();
  const auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double x = std::pow(u / cd, inv_delta);
    return std::pow(u / cd, inv_d) * fading.survival(s * x);
  };
  const double u1 = cfg.mean_measure(1.0 / s);
  const double pts[] = {0.01 * u1, 0.1 * u1, 0.5 * u1, u1, 2.0 * u1, 5.0 * u1, 20.0 * u1};
  return quad::integrate_to_infinity(integrand, 0.0, pts, quad::Options{1e-12, 1e-11}).value;
}

double capacity_at_rate(const NetworkConfig& cfg, const FadingSpec& fading, double rate) {
  require_positive(rate, "rate", "capacity_at_rate");
  return rate * broadcast_sum_distance(cfg, fading, std::expm1(log2_ratio(rate))).with_fading;
}

CapacityResult broadcast_transport_capacity(const NetworkConfig& cfg,
                                            const FadingSpec& fading) {
  const double big = cfg.delta_broadcast();
  const double ln2 = std::log(2.0);
  const double d1 = broadcast_sum_distance(cfg, fading, 1.0).with_fading;
  CapacityResult out;
  if (big > 1.0) {
    out.bounded = false;
    out.r_opt = 0.0;
    out.s_opt = 0.0;
    return out;
  }
  if (big == 1.0) {
    // Supremum approached as R -> 0: R / (2^R - 1) -> 1 / ln 2.
    out.r_opt = 0.0;
    out.s_opt = 0.0;
    out.capacity = d1 / ln2;
    return out;
  }
  const double inv = 1.0 / big;
  out.r_opt = (specfun::lambert_w0(-std::exp(-inv) * inv) + inv) / ln2;
  out.s_opt = std::expm1(out.r_opt * ln2);
  out.capacity = out.r_opt * d1 * std::pow(out.s_opt, -big);

  const auto residual = [&](double r) {
    return 1.0 / r + big * ln2 / std::expm1(-r * ln2);
  };
  out.first_order_residual = residual(out.r_opt);
  double lo = 1e-12;
  double hi = 1.0;
  while (residual(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  out.r_opt_numeric = 0.5 * (lo + hi);

  const double s_lb = std::expm1(inv - big);
  out.s_opt_lower_bound = s_lb;
  const double r_lb = (inv - big) / ln2;
  out.lower_bound = r_lb * d1 * std::pow(s_lb, -big);
  return out;
}

SuperpositionBound superposition_capacity_lower_bound(const NetworkConfig& cfg) {
  const double big = cfg.delta_broadcast();
  const double cd_delta = cfg.ball_volume() * cfg.delta();
  SuperpositionBound out;
  out.near_field = cd_delta / (big * big * std::log(2.0));
  if (big < 1.0) {
    out.lower_bound = cd_delta / (big * (1.0 - big));
  } else {
    out.bounded = false;
  }
  return out;
}

}  // namespace plpf::analytic
