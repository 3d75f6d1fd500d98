#include "plpf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "plpf/csv.hpp"
#include "plpf/error.hpp"
#include "plpf/specfun.hpp"

namespace plpf {
namespace {

void require_threshold(double s, const char* fn) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError(std::string(fn) + ": threshold s must be finite and > 0");
  }
}

}  // namespace

NetworkConfig::NetworkConfig(int d, double alpha) : d_(d), alpha_(alpha) {
  if (d < 1) throw DomainError("NetworkConfig: dimension must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("NetworkConfig: path loss exponent must be finite and > 0");
  }
  const double half_d = 0.5 * d;
  ball_volume_ = std::exp(half_d * std::log(specfun::kPi) - specfun::log_gamma(1.0 + half_d));
  // Exact values where they are well known, so c_1 = 2 and c_2 = pi hold to the bit.
  if (d == 1) ball_volume_ = 2.0;
  if (d == 2) ball_volume_ = specfun::kPi;
  if (d == 3) ball_volume_ = 4.0 * specfun::kPi / 3.0;
}

double NetworkConfig::mean_measure(double x) const {
  if (std::isnan(x)) throw DomainError("mean_measure: NaN argument");
  if (x <= 0.0) return 0.0;
  return ball_volume_ * std::pow(x, delta());
}

double NetworkConfig::loss_for_measure(double count) const {
  if (!(count >= 0.0)) throw DomainError("loss_for_measure: count must be >= 0");
  return std::pow(count / ball_volume_, 1.0 / delta());
}

double expected_missed_connections(const NetworkConfig& cfg, const FadingSpec& fading,
                                   double s, double window_loss_bound, int transmissions) {
  require_threshold(s, "expected_missed_connections");
  if (!(window_loss_bound >= 0.0)) {
    throw DomainError("expected_missed_connections: window must be >= 0");
  }
  if (transmissions < 1) throw DomainError("expected_missed_connections: transmissions >= 1");
  const double delta = cfg.delta();
  const double y = s * window_loss_bound;
  const double scale = cfg.ball_volume() * std::pow(s, -delta);
  double single;
  if (fading.is_degenerate()) {
    single = y >= 1.0 ? 0.0 : scale * (1.0 - std::pow(y, delta));
  } else {
    // c_d s^-delta * int_y^inf delta u^(delta-1) Q(m, m u) du
    //   = c_d s^-delta * (E[f^delta; f > y] - y^delta Q(m, m y)).
    const double m = fading.m();
    const double tail = fading.upper_partial_moment(delta, y) -
                        (y > 0.0 ? std::pow(y, delta) * specfun::gamma_q(m, m * y) : 0.0);
    single = scale * std::max(tail, 0.0);
  }
  return single * transmissions;
}

double required_window(const NetworkConfig& cfg, const FadingSpec& fading, double s,
                       double max_missed, int transmissions) {
  require_threshold(s, "required_window");
  if (!(max_missed > 0.0)) throw DomainError("required_window: max_missed must be > 0");
  if (fading.is_degenerate()) return 1.0 / s;
  auto missed = [&](double y) {
    return expected_missed_connections(cfg, fading, s, y / s, transmissions);
  };
  double hi = 1.0;
  while (missed(hi) > max_missed) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("required_window: no window meets the budget");
  }
  double lo = hi / 2.0;
  if (missed(lo) <= max_missed) return lo / s;
  for (int i = 0; i < 60 && hi - lo > 1e-9 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (missed(mid) > max_missed ? lo : hi) = mid;
  }
  return hi / s;
}

PlpfRealization sample_plp(const NetworkConfig& cfg, double intensity_measure_cap,
                           RandomStream& rng) {
  if (!(intensity_measure_cap > 0.0) || !std::isfinite(intensity_measure_cap)) {
    throw DomainError("sample_plp: intensity_measure_cap must be finite and > 0");
  }
  PlpfRealization out{cfg, cfg.loss_for_measure(intensity_measure_cap), {}, {}, {}, {}, {}};
  const auto count = rng.poisson(intensity_measure_cap);
  const double inv_delta = 1.0 / cfg.delta();
  out.x.resize(count);
  for (auto& xi : out.x) xi = out.window_loss_bound * std::pow(rng.uniform(), inv_delta);
  std::sort(out.x.begin(), out.x.end());
  out.r.resize(count);
  const double inv_alpha = 1.0 / cfg.alpha();
  std::transform(out.x.begin(), out.x.end(), out.r.begin(),
                 [inv_alpha](double x) { return std::pow(x, inv_alpha); });
  return out;
}

PlpfRealization attach_fading(PlpfRealization plp, const FadingSpec& fading,
                              RandomStream& rng) {
  if (plp.has_fading()) throw StateError("attach_fading: realization already carries marks");
  plp.f.resize(plp.size());
  plp.xi.resize(plp.size());
  for (std::size_t i = 0; i < plp.size(); ++i) {
    plp.f[i] = fading.sample(rng);
    plp.xi[i] = fading.is_degenerate() ? plp.x[i] : plp.x[i] / plp.f[i];
  }
  plp.fading = fading;
  return plp;
}

PlpfRealization sample_network(const NetworkConfig& cfg, const FadingSpec& fading, double s,
                               RandomStream& rng, double max_missed, int transmissions) {
  const double window = required_window(cfg, fading, s, max_missed, transmissions);
  return attach_fading(sample_plp(cfg, cfg.mean_measure(window), rng), fading, rng);
}

ConnectedSet connected_set(const PlpfRealization& real, double s,
                           const ConnectedSetOptions& opts) {
  require_threshold(s, "connected_set");
  if (!real.has_fading()) throw StateError("connected_set: realization has no fading marks");
  if (opts.enforce_window) {
    const double missed =
        expected_missed_connections(real.config, *real.fading, s, real.window_loss_bound);
    if (missed > opts.max_missed) {
      throw TruncationError("connected_set: threshold 1/s = " + csv::format(1.0 / s) +
                            " needs a larger window than " +
                            csv::format(real.window_loss_bound) + " (expected missed nodes " +
                            csv::format(missed) + ")");
    }
  }
  ConnectedSet out;
  const double limit = 1.0 / s;
  for (std::size_t i = 0; i < real.size(); ++i) {
    if (real.xi[i] < limit) {
      out.indices.push_back(i);
      out.x_hat.push_back(real.x[i]);
      out.xi_hat.push_back(real.xi[i]);
    }
  }
  return out;
}

PlpfRealization sample_conditioned(const NetworkConfig& cfg, std::size_t n, double a,
                                   const FadingSpec& fading, RandomStream& rng) {
  if (n < 1) throw DomainError("sample_conditioned: n must be >= 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("sample_conditioned: a must be > 0");
  PlpfRealization out{cfg, a, {}, {}, {}, {}, {}};
  const double inv_delta = 1.0 / cfg.delta();
  out.x.resize(n);
  for (auto& x : out.x) x = a * std::pow(rng.uniform(), inv_delta);
  std::sort(out.x.begin(), out.x.end());
  out.r.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.r[i] = std::pow(out.x[i], 1.0 / cfg.alpha());
  return attach_fading(std::move(out), fading, rng);
}

PlpfRealization sample_uniform_toy(std::size_t n, double upper, const FadingSpec& fading,
                                   RandomStream& rng) {
  if (!(upper > 0.0)) throw DomainError("sample_uniform_toy: upper must be > 0");
  // Losses are taken as distances (alpha = 1, d = 1) purely for display.
  PlpfRealization out{NetworkConfig(1, 1.0), upper, {}, {}, {}, {}, {}};
  out.x.resize(n);
  for (auto& x : out.x) x = upper * rng.uniform();
  std::sort(out.x.begin(), out.x.end());
  out.r = out.x;
  return attach_fading(std::move(out), fading, rng);
}

std::vector<int> reception_counts(const PlpfRealization& plp, const FadingSpec& fading,
                                  double s, int transmissions, RandomStream& rng) {
  require_threshold(s, "reception_counts");
  if (transmissions < 1) throw DomainError("reception_counts: transmissions must be >= 1");
  std::vector<int> counts(plp.size(), 0);
  for (std::size_t i = 0; i < plp.size(); ++i) {
    for (int t = 0; t < transmissions; ++t) {
      // x / f < 1/s  <=>  f > s x
      if (fading.sample(rng) > s * plp.x[i]) ++counts[i];
    }
  }
  return counts;
}

void write_realization_csv(std::ostream& out, const PlpfRealization& real, double s) {
  if (!real.has_fading()) throw StateError("write_realization_csv: realization has no marks");
  csv::write_row(out, {"i", "r", "x", "f", "xi", "connected"});
  const double limit = 1.0 / s;
  for (std::size_t i = 0; i < real.size(); ++i) {
    csv::write_row(out, {csv::format(static_cast<long long>(i + 1)), csv::format(real.r[i]),
                         csv::format(real.x[i]), csv::format(real.f[i]),
                         csv::format(real.xi[i]), real.xi[i] < limit ? "1" : "0"});
  }
}

}  // namespace plpf
