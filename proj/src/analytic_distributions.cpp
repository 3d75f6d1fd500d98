#include <algorithm>
#include <cmath>

#include "analytic_detail.hpp"
#include "plpf/analytic.hpp"

namespace plpf::analytic {

using detail::delta_is_one;
using detail::is_rayleigh;
using detail::require_index;
using detail::require_positive;

double mean_measure(const NetworkConfig& cfg, double x) {
  if (!(x >= 0.0)) throw DomainError("mean_measure: x must be >= 0");
  return cfg.mean_measure(x);
}

double mean_density(const NetworkConfig& cfg, double x) {
  require_positive(x, "x", "mean_density");
  return cfg.ball_volume() * cfg.delta() * std::pow(x, cfg.delta() - 1.0);
}

double distance_pdf(const NetworkConfig& cfg, int i, double r) {
  require_index(i, "distance_pdf");
  require_positive(r, "r", "distance_pdf");
  const double v = cfg.ball_volume() * std::pow(r, cfg.d());
  return std::exp(-v + std::log(static_cast<double>(cfg.d())) + i * std::log(v) - std::log(r) -
                  specfun::log_gamma(i));
}

double expected_distance(const NetworkConfig& cfg, int i) {
  require_index(i, "expected_distance");
  const double inv_d = 1.0 / cfg.d();
  return std::exp(-inv_d * std::log(cfg.ball_volume()) + specfun::log_gamma(i + inv_d) -
                  specfun::log_gamma(i));
}

double plp_cdf(const NetworkConfig& cfg, int i, double x) {
  require_index(i, "plp_cdf");
  if (std::isnan(x)) throw DomainError("plp_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return specfun::gamma_p(i, cfg.mean_measure(x));
}

double plp_pdf(const NetworkConfig& cfg, int i, double x) {
  require_index(i, "plp_pdf");
  require_positive(x, "x", "plp_pdf");
  const double delta = cfg.delta();
  const double u = cfg.mean_measure(x);
  // Gamma(i) density of u = c_d x^delta times du/dx = delta u / x.
  return std::exp(detail::log_gamma_density(i, u) + std::log(delta * u / x));
}

double plp_mean(const NetworkConfig& cfg, int i) {
  require_index(i, "plp_mean");
  const double inv_delta = 1.0 / cfg.delta();
  return std::exp(-inv_delta * std::log(cfg.ball_volume()) + specfun::log_gamma(i + inv_delta) -
                  specfun::log_gamma(i));
}

namespace {

// I_z(i, m) for integer i and real m > 0, through the negative binomial
// identity I_z(i, m) = 1 - (1-z)^m sum_{k<i} Gamma(m+k)/(Gamma(m) k!) z^k.
double incomplete_beta_integer_a(int i, double m, double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double log_1mz = std::log1p(-z);
  if (z < 0.5) {
    // Sum the upper tail k >= i directly to avoid cancellation.
    double log_term = specfun::log_gamma(m + i) - specfun::log_gamma(m) -
                      specfun::log_gamma(i + 1.0) + i * std::log(z) + m * log_1mz;
    double term = std::exp(log_term);
    double sum = 0.0;
    for (int k = i; k < i + 100000; ++k) {
      sum += term;
      term *= (m + k) / (k + 1.0) * z;
      if (term < 1e-17 * sum) break;
    }
    return std::min(1.0, sum);
  }
  double term = 1.0;
  double sum = 0.0;
  for (int k = 0; k < i; ++k) {
    sum += term;
    term *= (m + k) / (k + 1.0) * z;
  }
  return std::max(0.0, 1.0 - std::exp(m * log_1mz) * sum);
}

}  // namespace

double plpf_cdf(const NetworkConfig& cfg, const FadingSpec& fading, int i, double x) {
  require_index(i, "plpf_cdf");
  if (std::isnan(x)) throw DomainError("plpf_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (fading.is_degenerate()) return plp_cdf(cfg, i, x);
  if (delta_is_one(cfg)) {
    const double m = fading.m();
    const double cx = cfg.ball_volume() * x;
    if (m == 1.0) return std::pow(cx / (cx + 1.0), i);
    return incomplete_beta_integer_a(i, m, cx / (m + cx));
  }
  return plpf_cdf_integral(cfg, fading, i, x);
}

double plpf_cdf_integral(const NetworkConfig& cfg, const FadingSpec& fading, int i, double x) {
  require_index(i, "plpf_cdf_integral");
  require_positive(x, "x", "plpf_cdf_integral");
  const double cd = cfg.ball_volume();
  const double inv_delta = 1.0 / cfg.delta();
  // u = c_d x_i^delta ~ Gamma(i, 1); P[xi_i < x] = E[1 - F(x_i / x)].
  const auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double loss = std::pow(u / cd, inv_delta);
    const double surv = fading.survival(loss / x);
    if (surv == 0.0) return 0.0;
    return surv * std::exp(detail::log_gamma_density(i, u));
  };
  auto pts = detail::gamma_breakpoints(i);
  pts.push_back(cfg.mean_measure(x));
  return std::clamp(quad::integrate_to_infinity(integrand, 0.0, pts).value, 0.0, 1.0);
}

double plpf_pdf(const NetworkConfig& cfg, const FadingSpec& fading, int i, double x) {
  require_index(i, "plpf_pdf");
  require_positive(x, "x", "plpf_pdf");
  if (fading.is_degenerate()) return plp_pdf(cfg, i, x);
  const double m = fading.m();
  const double cd = cfg.ball_volume();
  if (delta_is_one(cfg)) {
    const double log_binom = specfun::log_gamma(m + i) - specfun::log_gamma(m + 1.0) -
                             specfun::log_gamma(i);
    return std::exp((m + 1.0) * std::log(m) + log_binom + i * std::log(cd) +
                    (i - 1.0) * std::log(x) - (m + i) * std::log(m + cd * x));
  }
  // d/dx of P[x_i < x f] = E[f_F(x_i / x) x_i / x^2].
  const double inv_delta = 1.0 / cfg.delta();
  const auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double loss = std::pow(u / cd, inv_delta);
    const double ratio = loss / x;
    const double logv = detail::log_gamma_density(i, u);
    return fading.pdf(ratio) * ratio / x * std::exp(logv);
  };
  auto pts = detail::gamma_breakpoints(i);
  pts.push_back(cfg.mean_measure(x));
  return quad::integrate_to_infinity(integrand, 0.0, pts).value;
}

Moments plpf_moments(const NetworkConfig& cfg, const FadingSpec& fading, int i) {
  require_index(i, "plpf_moments");
  if (!delta_is_one(cfg)) throw UnsupportedError("plpf_moments: requires delta = 1");
  const double cd = cfg.ball_volume();
  Moments out;
  if (fading.is_degenerate()) {
    out.mean = i / cd;
    out.variance = i / (cd * cd);
    return out;
  }
  const double m = fading.m();
  if (m > 1.0) out.mean = m * i / (cd * (m - 1.0));
  if (m > 2.0) {
    out.variance = m * m * i * (m + i - 1.0) / (cd * cd * (m - 1.0) * (m - 1.0) * (m - 2.0));
  }
  return out;
}

PathGainMoments path_gain_moments(const NetworkConfig& cfg, const FadingSpec& fading, int i) {
  require_index(i, "path_gain_moments");
  if (!delta_is_one(cfg)) throw UnsupportedError("path_gain_moments: requires delta = 1");
  const double cd = cfg.ball_volume();
  PathGainMoments out;
  // 1/xi = f / x_i with x_i ~ Erlang(i, c_d) independent of f.
  if (i > 1) out.mean = cd / (i - 1.0);
  if (i > 2) {
    out.second_moment = fading.moment(2.0) * cd * cd / ((i - 1.0) * (i - 2.0));
    out.variance = *out.second_moment - *out.mean * *out.mean;
  }
  return out;
}

double plpf_entropy(const NetworkConfig& cfg, const FadingSpec& fading, int i) {
  require_index(i, "plpf_entropy");
  if (!delta_is_one(cfg)) throw UnsupportedError("plpf_entropy: requires delta = 1");
  const double cd = cfg.ball_volume();
  if (fading.is_degenerate()) {
    // x_i ~ Gamma(i, 1/c_d).
    return i - std::log(cd) + specfun::log_gamma(i) + (1.0 - i) * specfun::digamma(i);
  }
  const double m = fading.m();
  if (i == 1) return 1.0 + 1.0 / m - std::log(cd);
  const auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    const double p = plpf_pdf(cfg, fading, i, x);
    return p > 0.0 ? -p * std::log(p) : 0.0;
  };
  const double scale = i / cd;
  const double pts[] = {0.1 * scale, scale, 10.0 * scale};
  return quad::integrate_to_infinity(integrand, 0.0, pts).value;
}

double path_gain_entropy(const NetworkConfig& cfg, const FadingSpec& fading, int i) {
  require_index(i, "path_gain_entropy");
  if (cfg.d() != 2 || !delta_is_one(cfg) || !is_rayleigh(fading)) {
    throw UnsupportedError("path_gain_entropy: requires d = alpha = 2 and Rayleigh fading");
  }
  // 1/xi_i is Lomax with shape i and scale c_d.
  return (i + 1.0) / i + std::log(cfg.ball_volume() / i);
}

double reorder_probability(int i, int j) {
  require_index(i, "reorder_probability");
  require_index(j, "reorder_probability");
  const double ln2 = std::log(2.0);
  if (i == 1 && j == 1) return 1.0 - ln2;
  if (i == 1 && j == 2) return 3.0 - 4.0 * ln2;
  if (i == 2 && j == 2) return 12.0 * ln2 - 8.0;
  if (i == 3 && j == 3) return 167.0 / 2.0 - 120.0 * ln2;
  if (i == 4 && j == 4) return 1120.0 * ln2 - 776.0;
  return reorder_probability_integral(i, j);
}

double reorder_probability_integral(int i, int j) {
  require_index(i, "reorder_probability_integral");
  require_index(j, "reorder_probability_integral");
  // c_d drops out; take c_d = 1 so x ~ Gamma(i), y ~ Gamma(j).
  const quad::Options inner_opts{1e-13, 1e-11, 4000};
  const auto y_points = detail::gamma_breakpoints(j);
  const auto inner = [&](double x) {
    if (x <= 0.0) return 0.0;
    const auto fy = [&](double y) {
      if (y <= 0.0) return 0.0;
      return x / (2.0 * x + y) * std::exp(detail::log_gamma_density(j, y));
    };
    return quad::integrate_to_infinity(fy, 0.0, y_points, inner_opts).value *
           std::exp(detail::log_gamma_density(i, x));
  };
  return quad::integrate_to_infinity(inner, 0.0, detail::gamma_breakpoints(i),
                                     quad::Options{1e-11, 1e-10, 4000})
      .value;
}

double conditioned_plpf_cdf(const NetworkConfig& cfg, const FadingSpec& fading, double a,
                            double x) {
  require_positive(a, "a", "conditioned_plpf_cdf");
  if (std::isnan(x)) throw DomainError("conditioned_plpf_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double delta = cfg.delta();
  if (fading.is_degenerate()) return x >= a ? 1.0 : std::pow(x / a, delta);
  const double ratio = a / x;
  if (is_rayleigh(fading)) {
    if (delta == 1.0) return -(x / a) * std::expm1(-ratio);
    if (delta == 0.5) {
      return 0.5 * std::sqrt(specfun::kPi) * std::sqrt(x / a) * specfun::erf(std::sqrt(ratio));
    }
  }
  // int_0^1 Q(m, m (a/x) v^(1/delta)) dv
  //   = Q(m, m a/x) + (x/a)^delta E[f^delta] P(m + delta, m a/x).
  const double m = fading.m();
  return specfun::gamma_q(m, m * ratio) +
         std::pow(x / a, delta) * fading.moment(delta) * specfun::gamma_p(m + delta, m * ratio);
}

double conditioned_plpf_cdf_integral(const NetworkConfig& cfg, const FadingSpec& fading,
                                     double a, double x) {
  require_positive(a, "a", "conditioned_plpf_cdf_integral");
  require_positive(x, "x", "conditioned_plpf_cdf_integral");
  // v = (y/a)^delta is uniform on [0, 1) under the conditioned law.
  const double inv_delta = 1.0 / cfg.delta();
  const auto integrand = [&](double v) {
    return fading.survival(a * std::pow(v, inv_delta) / x);
  };
  const double pts[] = {std::pow(x / a, cfg.delta())};
  return quad::integrate(integrand, 0.0, 1.0, pts).value;
}

}  // namespace plpf::analytic
