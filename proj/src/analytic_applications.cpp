#include <algorithm>
#include <cmath>
#include <limits>

#include "analytic_detail.hpp"
#include "plpf/analytic.hpp"

namespace plpf::analytic {

using detail::delta_is_one;
using detail::is_rayleigh;
using detail::require_index;
using detail::require_positive;

double discrete_progress(const NetworkConfig& cfg, const FadingSpec& fading, double s, int i) {
  require_positive(s, "s", "discrete_progress");
  require_index(i, "discrete_progress");
  const double cd = cfg.ball_volume();
  const double inv_alpha = 1.0 / cfg.alpha();
  if (delta_is_one(cfg) && is_rayleigh(fading)) {
    return std::exp(i * std::log(cd) - (i + inv_alpha) * std::log(s + cd) +
                    specfun::log_gamma(i + inv_alpha) - specfun::log_gamma(i));
  }
  const double inv_delta = 1.0 / cfg.delta();
  const double inv_d = 1.0 / cfg.d();
  const auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double x = std::pow(u / cd, inv_delta);
    const double surv = fading.survival(s * x);
    if (surv == 0.0) return 0.0;
    return std::pow(u / cd, inv_d) * surv * std::exp(detail::log_gamma_density(i, u));
  };
  auto pts = detail::gamma_breakpoints(i);
  pts.push_back(cfg.mean_measure(1.0 / s));
  return quad::integrate_to_infinity(integrand, 0.0, pts).value;
}

namespace {

// argmax_x x^(1/alpha) P[f > s x]: stationary point of y h(y) = 1/alpha in
// y = s x, where h is the hazard rate of the fading law.
double continuous_progress_optimum(const NetworkConfig& cfg, const FadingSpec& fading,
                                   double s) {
  const double inv_alpha = 1.0 / cfg.alpha();
  if (fading.is_degenerate()) return 1.0 / s;
  if (is_rayleigh(fading)) return inv_alpha / s;
  const auto excess = [&](double log_y) {
    const double y = std::exp(log_y);
    return y * fading.pdf(y) / fading.survival(y) - inv_alpha;
  };
  double lo = std::log(1e-12);
  double hi = std::log(1e3);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi)) / s;
}

}  // namespace

ProgressResult probabilistic_progress(const NetworkConfig& cfg, const FadingSpec& fading,
                                      double s) {
  require_positive(s, "s", "probabilistic_progress");
  ProgressResult out;
  out.continuous_optimum = continuous_progress_optimum(cfg, fading, s);
  const double cd = cfg.ball_volume();
  int scan = 0;
  if (delta_is_one(cfg) && is_rayleigh(fading)) {
    out.i_opt_rounded = static_cast<int>(std::ceil(cd / (cfg.alpha() * s)));
    out.i_opt_continuous = 1.0 / (cfg.alpha() * std::log1p(s / cd));
    scan = 10 * *out.i_opt_rounded;
  } else {
    scan = 10 * static_cast<int>(std::ceil(cfg.mean_measure(out.continuous_optimum)));
  }
  scan = std::max(scan, 20);
  out.progress.reserve(scan);
  double best = -1.0;
  for (int i = 1; i <= scan; ++i) {
    const double g = discrete_progress(cfg, fading, s, i);
    out.progress.push_back(g);
    if (g > best) {
      best = g;
      out.i_opt_scan = i;
    }
  }
  return out;
}

namespace {

void require_counts(int k, int n, const char* fn) {
  if (n < 1 || k < 0 || k > n) {
    throw DomainError(std::string(fn) + ": need 0 <= k <= n and n >= 1");
  }
}

// binom(n,k) p^k (1-p)^(n-k) with p = e^(-y).
double block_rayleigh_weight(int k, int n, double y) {
  if (y <= 0.0) return k == n ? 1.0 : 0.0;
  const double log_fail = std::log(-std::expm1(-y));
  return std::exp(detail::log_binomial(n, k) - k * y + (n - k) * log_fail);
}

// int_0^inf x^p weight(s x) dLambda(x).
double received_k_measure(const NetworkConfig& cfg, double s, int k, int n, double power) {
  const double cd = cfg.ball_volume();
  const double inv_delta = 1.0 / cfg.delta();
  const auto integrand = [&](double u) {
    if (u <= 0.0) return power == 0.0 ? block_rayleigh_weight(k, n, 0.0) : 0.0;
    const double x = std::pow(u / cd, inv_delta);
    return std::pow(x, power) * block_rayleigh_weight(k, n, s * x);
  };
  const double u1 = cfg.mean_measure(1.0 / s);
  const double un = cfg.mean_measure(std::log(n + 1.0) / s);
  const double pts[] = {0.01 * u1, 0.1 * u1, u1, un, 4.0 * un, 16.0 * un};
  return quad::integrate_to_infinity(integrand, 0.0, pts).value;
}

}  // namespace

double received_k_density(const NetworkConfig& cfg, double s, int k, int n, double x) {
  require_positive(s, "s", "received_k_density");
  require_counts(k, n, "received_k_density");
  require_positive(x, "x", "received_k_density");
  return mean_density(cfg, x) * block_rayleigh_weight(k, n, s * x);
}

std::optional<double> expected_received_k(const NetworkConfig& cfg, double s, int k, int n) {
  require_positive(s, "s", "expected_received_k");
  require_counts(k, n, "expected_received_k");
  if (k == 0) return std::nullopt;
  if (delta_is_one(cfg)) return cfg.ball_volume() / (k * s);
  return received_k_measure(cfg, s, k, n, 0.0);
}

double received_k_pdf(const NetworkConfig& cfg, double s, int k, int n, double x) {
  require_counts(k, n, "received_k_pdf");
  if (k == 0) throw DomainError("received_k_pdf: k must be >= 1");
  return received_k_density(cfg, s, k, n, x) / *expected_received_k(cfg, s, k, n);
}

Moments received_k_moments(const NetworkConfig& cfg, double s, int k, int n) {
  require_positive(s, "s", "received_k_moments");
  require_counts(k, n, "received_k_moments");
  if (k == 0) throw DomainError("received_k_moments: k must be >= 1");
  const double total = *expected_received_k(cfg, s, k, n);
  const double m1 = received_k_measure(cfg, s, k, n, 1.0) / total;
  const double m2 = received_k_measure(cfg, s, k, n, 2.0) / total;
  Moments out;
  out.mean = m1;
  out.variance = m2 - m1 * m1;
  return out;
}

int localize_by_scan(const NetworkConfig& cfg, const FadingSpec& fading, PathLoss loss,
                     int max_index) {
  require_positive(loss.value, "loss", "localize_by_scan");
  require_index(max_index, "localize_by_scan");
  int best_i = 1;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= max_index; ++i) {
    const double p = plpf_pdf(cfg, fading, i, loss.value);
    if (p > best) {
      best = p;
      best_i = i;
    }
  }
  return best_i;
}

int localize(const NetworkConfig& cfg, const FadingSpec& fading, PathGain gain) {
  require_positive(gain.value, "gain", "localize");
  if (!delta_is_one(cfg)) return localize(cfg, fading, PathLoss{1.0 / gain.value});
  const double cd = cfg.ball_volume();
  const double g = gain.value;
  // Region for index i: c_d / i <= g < c_d / (i - 1).
  double guess = std::ceil(cd / g);
  if (guess > 1e9) throw DomainError("localize: gain too small");
  int i = std::max(1, static_cast<int>(guess));
  while (cd / i > g) ++i;
  while (i > 1 && cd / (i - 1) <= g) --i;
  return i;
}

int localize(const NetworkConfig& cfg, const FadingSpec& fading, PathLoss loss) {
  require_positive(loss.value, "loss", "localize");
  if (delta_is_one(cfg)) {
    const double cd = cfg.ball_volume();
    const double t = cd * loss.value;
    if (t > 1e9) throw DomainError("localize: loss too large");
    // Region for index i: i - 1 < c_d x <= i.
    int i = std::max(1, static_cast<int>(std::ceil(t)));
    while (i < t) ++i;
    while (i > 1 && i - 1 >= t) --i;
    return i;
  }
  const int upper =
      std::max(200, 2 * static_cast<int>(std::ceil(cfg.mean_measure(loss.value))) + 50);
  return localize_by_scan(cfg, fading, loss, upper);
}

}  // namespace plpf::analytic
