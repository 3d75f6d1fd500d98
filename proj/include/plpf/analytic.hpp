#pragma once

// Closed-form results for the path loss process (PLP) and the path loss
// process with fading (PLPF). Where an operation has both a closed form and
// an integral definition, the integral is exposed as a separate `*_integral`
// function so the two routes can be compared.
//
// Conventions: nodes form a unit-intensity PPP in R^d, x = r^alpha is the
// path loss, xi = x / f the faded path loss, and a node is connected at
// threshold s when xi < 1/s. delta = d/alpha, Delta = (d+1)/alpha.

#include <optional>
#include <vector>

#include "plpf/fading.hpp"
#include "plpf/geometry.hpp"

namespace plpf::analytic {

/// Ratio of a quantity with fading to the same quantity without fading.
struct GainReport {
  double with_fading = 0.0;
  double without_fading = 0.0;
  double gain = 0.0;
};

/// Mean and variance; an empty optional marks a moment that does not exist.
struct Moments {
  std::optional<double> mean;
  std::optional<double> variance;
};

// ---------------------------------------------------------------------------
// Path loss process without fading

/// Lambda(x) = c_d x^delta.
double mean_measure(const NetworkConfig& cfg, double x);
/// lambda(x) = c_d delta x^(delta-1), x > 0.
double mean_density(const NetworkConfig& cfg, double x);

/// Density of the distance r_i to the i-th nearest node (generalized gamma).
double distance_pdf(const NetworkConfig& cfg, int i, double r);
/// E r_i = c_d^(-1/d) Gamma(i + 1/d) / Gamma(i).
double expected_distance(const NetworkConfig& cfg, int i);

/// P[x_i < x] = 1 - Gamma_ic(i, c_d x^delta) / Gamma(i).
double plp_cdf(const NetworkConfig& cfg, int i, double x);
double plp_pdf(const NetworkConfig& cfg, int i, double x);
/// E x_i = c_d^(-1/delta) Gamma(i + 1/delta) / Gamma(i).
double plp_mean(const NetworkConfig& cfg, int i);

// ---------------------------------------------------------------------------
// Path loss process with fading

/// P[xi_i < x]. Closed form for delta = 1 with Nakagami-m (regularized
/// incomplete beta, reducing to ((c_d x)/(c_d x + 1))^i for Rayleigh) and
/// for the degenerate law; otherwise plpf_cdf_integral.
double plpf_cdf(const NetworkConfig& cfg, const FadingSpec& fading, int i, double x);
/// 1 - E[F(x_i / x)] by adaptive quadrature over the law of x_i.
double plpf_cdf_integral(const NetworkConfig& cfg, const FadingSpec& fading, int i, double x);
/// Density of xi_i. For delta = 1 and Nakagami-m:
///   m^(m+1) binom(m+i-1, m) c_d^i x^(i-1) / (m + c_d x)^(m+i).
double plpf_pdf(const NetworkConfig& cfg, const FadingSpec& fading, int i, double x);

/// Mean and variance of xi_i (delta = 1 only). Nakagami: mean exists for
/// m > 1, variance for m > 2.
Moments plpf_moments(const NetworkConfig& cfg, const FadingSpec& fading, int i);

struct PathGainMoments {
  std::optional<double> mean;           // c_d / (i - 1), i > 1
  std::optional<double> second_moment;  // E[f^2] c_d^2 / ((i-1)(i-2)), i > 2
  std::optional<double> variance;
};

/// Moments of the path gain 1/xi_i for delta = 1 and any unit-mean fading.
PathGainMoments path_gain_moments(const NetworkConfig& cfg, const FadingSpec& fading, int i);

/// Differential entropy h(xi_i) for delta = 1: closed form 1 + 1/m - ln c_d
/// at i = 1, Erlang entropy without fading, quadrature otherwise.
double plpf_entropy(const NetworkConfig& cfg, const FadingSpec& fading, int i);
/// h(1/xi_i) = (i+1)/i + ln(pi / i) for the standard network (d = alpha = 2,
/// Rayleigh fading); UnsupportedError otherwise.
double path_gain_entropy(const NetworkConfig& cfg, const FadingSpec& fading, int i);

/// P[xi_i > xi_(i+j)] for delta = 1 and Rayleigh fading (independent of c_d).
/// Exact closed forms for (1,1), (1,2), (2,2), (3,3), (4,4); otherwise the
/// double integral.
double reorder_probability(int i, int j);
/// Double integral of x/(2x+y) against Erlang(i) x Erlang(j) densities.
double reorder_probability_integral(int i, int j);

/// P[xi < x] for one of the n iid nodes conditioned on x_(n+1) = a.
double conditioned_plpf_cdf(const NetworkConfig& cfg, const FadingSpec& fading, double a,
                            double x);
double conditioned_plpf_cdf_integral(const NetworkConfig& cfg, const FadingSpec& fading,
                                     double a, double x);

// ---------------------------------------------------------------------------
// Connectivity

/// E N = c_d / (m s)^delta * Gamma(delta + m) / Gamma(m) = c_d s^-delta E[f^delta].
double expected_connected(const NetworkConfig& cfg, const FadingSpec& fading, double s);
double expected_connected_integral(const NetworkConfig& cfg, const FadingSpec& fading,
                                   double s);
/// E[f^delta] as with / without fading (evaluated at s = 1).
GainReport connectivity_gain(const NetworkConfig& cfg, const FadingSpec& fading);
/// exp(-E N): the connected count is Poisson.
double isolation_probability(const NetworkConfig& cfg, const FadingSpec& fading, double s);
/// Expected connected nodes with x_i < a: c_d a^delta F^a_xi(1/s).
double expected_connected_within(const NetworkConfig& cfg, const FadingSpec& fading,
                                 double s, double a);
/// Mean path loss of a uniformly chosen connected node, with and without
/// fading. Nakagami-m: delta (delta+m) / (m s (delta+1)), ratio 1 + delta/m.
GainReport mean_connected_node(const NetworkConfig& cfg, const FadingSpec& fading, double s);

/// Density of nodes decoding at least one of n block-faded transmissions:
/// (1 - F(s x)^n) c_d delta x^(delta-1).
double retransmission_density(const NetworkConfig& cfg, const FadingSpec& fading, double s,
                              int n, double x);
/// Integral of retransmission_density; (c_d/s)(Psi(n+1) + gamma) in the
/// standard network.
double expected_connected_retransmissions(const NetworkConfig& cfg, const FadingSpec& fading,
                                          double s, int n);
/// Expected nodes reached by n transmissions with thresholds s_k = s1 / k.
double expected_reached_decreasing_thresholds(const NetworkConfig& cfg,
                                              const FadingSpec& fading, double s1, int n);

// ---------------------------------------------------------------------------
// Broadcasting

/// p_m(s~): probability that a uniform node in [0, a) decodes, s~ = a s,
/// delta = 1, integer m >= 1.
double broadcast_reach_probability(int m, double s_tilde);
/// int_0^1 Q(m, m s~ x) dx; accepts any m >= 0.5.
double broadcast_reach_probability_integral(double m, double s_tilde);

struct ReachBounds {
  double lower = 0.0;  // (1 - m^m / Gamma(m+2) s~^m)^+
  double upper = 0.0;  // min{1, (1 - e^(-m s~)(1 + (m-1) s~)) / s~}
};
ReachBounds broadcast_reach_bounds(int m, double s_tilde);

struct ReachThreshold {
  /// (Gamma(m+2) eps)^(1/m) / m; 2 eps for m = 1.
  double sufficient = 0.0;
  /// Largest s~ with p_m(s~) >= 1 - eps. Lambert W for m = 1, root-finding else.
  double exact = 0.0;
  /// 2 eps + (4/3) eps^2, only for m = 1.
  std::optional<double> quadratic;
};
ReachThreshold epsilon_reachability_threshold(int m, double eps);

/// D = E sum over connected nodes of distance; with = D_m, without = D_inf =
/// c_d (delta/Delta) s^-Delta, gain = E[f^Delta].
GainReport broadcast_sum_distance(const NetworkConfig& cfg, const FadingSpec& fading, double s);
double broadcast_sum_distance_integral(const NetworkConfig& cfg, const FadingSpec& fading,
                                       double s);

struct CapacityResult {
  /// False when Delta > 1: R * D(2^R - 1) grows without bound as R -> 0.
  bool bounded = true;
  double r_opt = 0.0;
  double s_opt = 0.0;
  /// Empty when unbounded.
  std::optional<double> capacity;
  /// Lower bound from s_opt >= exp(1/Delta - Delta) - 1 (Delta < 1 only).
  std::optional<double> lower_bound;
  std::optional<double> s_opt_lower_bound;
  /// R at which d/dR log(R (2^R-1)^-Delta) vanishes, found by bisection.
  std::optional<double> r_opt_numeric;
  /// d/dR log(R (2^R-1)^-Delta) evaluated at the closed-form r_opt.
  std::optional<double> first_order_residual;
};

/// max over R of R * D(2^R - 1) with R_opt = (W(-e^(-1/Delta)/Delta) + 1/Delta) / ln 2.
CapacityResult broadcast_transport_capacity(const NetworkConfig& cfg, const FadingSpec& fading);
/// R * D(2^R - 1) for a given rate R > 0.
double capacity_at_rate(const NetworkConfig& cfg, const FadingSpec& fading, double rate);

struct SuperpositionBound {
  bool bounded = true;
  /// c_d delta / (Delta (1 - Delta)) for Delta < 1.
  std::optional<double> lower_bound;
  /// Contribution of nodes with x < 1 at Shannon rate: c_d delta / (Delta^2 ln 2).
  double near_field = 0.0;
};
/// Superposition-coded broadcast capacity bound (no fading).
SuperpositionBound superposition_capacity_lower_bound(const NetworkConfig& cfg);

// ---------------------------------------------------------------------------
// Maximum distance, progress, retransmissions, localization

/// Gumbel cdf of the largest connected path loss: exp(-E N (1 - F_xhat(x))).
/// Carries the atom exp(-E N) at 0 (no connected node).
double max_loss_cdf(const NetworkConfig& cfg, const FadingSpec& fading, double s, double x);
/// E max over connected nodes of x^(1/alpha) (0 if none), by quadrature.
double mean_max_distance(const NetworkConfig& cfg, const FadingSpec& fading, double s);
/// ((Psi(c_d/s + 1) + gamma) / s)^(1/alpha); delta = 1 and Rayleigh only.
double max_distance_bound(const NetworkConfig& cfg, const FadingSpec& fading, double s);

/// G_i = E[x_i^(1/alpha) P[f > s x_i | x_i]].
double discrete_progress(const NetworkConfig& cfg, const FadingSpec& fading, double s, int i);

struct ProgressResult {
  /// argmax over x of x^(1/alpha) P[f > s x]; 1/(alpha s) under Rayleigh.
  double continuous_optimum = 0.0;
  /// G_1 .. G_K over the scanned range.
  std::vector<double> progress;
  /// Exhaustive argmax over the scanned range.
  int i_opt_scan = 1;
  /// ceil(c_d / (alpha s)); delta = 1 and Rayleigh only.
  std::optional<int> i_opt_rounded;
  /// 1 / (alpha ln(1 + s/c_d)); delta = 1 and Rayleigh only.
  std::optional<double> i_opt_continuous;
};
ProgressResult probabilistic_progress(const NetworkConfig& cfg, const FadingSpec& fading,
                                      double s);

/// Block Rayleigh fading, n transmissions: density of nodes receiving exactly
/// k packets, lambda(x) binom(n,k) p^k (1-p)^(n-k) with p = e^(-s x).
double received_k_density(const NetworkConfig& cfg, double s, int k, int n, double x);
/// Expected count of nodes receiving exactly k of n; empty for k = 0
/// (infinitely many). c_d / (k s) when delta = 1.
std::optional<double> expected_received_k(const NetworkConfig& cfg, double s, int k, int n);
/// Normalized density of the path loss of such a node (1 <= k <= n).
double received_k_pdf(const NetworkConfig& cfg, double s, int k, int n, double x);
Moments received_k_moments(const NetworkConfig& cfg, double s, int k, int n);

/// Measured quantities for localization. Distinct types keep a path gain
/// from being passed where a path loss is expected.
struct PathLoss {
  double value;
};
struct PathGain {
  double value;
};

/// ML node index argmax_i f_xi_i(loss). For delta = 1 (any Nakagami m or no
/// fading) this is ceil(c_d * loss), i.e. ceil(c_d / gain) with the decision
/// region c_d/i <= gain < c_d/(i-1).
int localize(const NetworkConfig& cfg, const FadingSpec& fading, PathLoss loss);
int localize(const NetworkConfig& cfg, const FadingSpec& fading, PathGain gain);
/// Exhaustive argmax of plpf_pdf over i in [1, max_index].
int localize_by_scan(const NetworkConfig& cfg, const FadingSpec& fading, PathLoss loss,
                     int max_index);

}  // namespace plpf::analytic
