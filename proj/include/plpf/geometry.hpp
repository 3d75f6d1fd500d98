#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "plpf/fading.hpp"
#include "plpf/random.hpp"

namespace plpf {

/// Ambient model: nodes form a unit-intensity stationary PPP in R^d, path
/// loss over distance r is r^alpha.
class NetworkConfig {
 public:
  /// Throws DomainError unless d >= 1 and alpha is finite and > 0.
  NetworkConfig(int d, double alpha);

  /// d = alpha = 2; with Rayleigh fading this is the "standard network".
  static NetworkConfig standard() { return {2, 2.0}; }

  int d() const { return d_; }
  double alpha() const { return alpha_; }
  /// d / alpha: governs connectivity.
  double delta() const { return static_cast<double>(d_) / alpha_; }
  /// (d + 1) / alpha: governs broadcast sum-distance and capacity.
  double delta_broadcast() const { return static_cast<double>(d_ + 1) / alpha_; }
  /// Volume of the unit d-ball, pi^(d/2) / Gamma(1 + d/2).
  double ball_volume() const { return ball_volume_; }

  /// Expected number of PLP points with path loss below x: c_d x^delta.
  double mean_measure(double x) const;
  /// Path loss at which the mean measure reaches `count`.
  double loss_for_measure(double count) const;

  friend bool operator==(const NetworkConfig& a, const NetworkConfig& b) {
    return a.d_ == b.d_ && a.alpha_ == b.alpha_;
  }

 private:
  int d_;
  double alpha_;
  double ball_volume_;
};

/// One sampled network, ordered by distance to the origin. The fading marks
/// f and faded losses xi are empty until attach_fading.
struct PlpfRealization {
  NetworkConfig config;
  /// Largest path loss the sample represents: every point with x below this
  /// bound is present.
  double window_loss_bound = 0.0;
  std::vector<double> r;
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> xi;
  std::optional<FadingSpec> fading;

  std::size_t size() const { return x.size(); }
  bool has_fading() const { return fading.has_value(); }
};

struct ConnectedSet {
  std::vector<std::size_t> indices;
  std::vector<double> x_hat;
  std::vector<double> xi_hat;

  std::size_t size() const { return indices.size(); }
};

struct ConnectedSetOptions {
  /// Largest tolerated expected number of connectable nodes beyond the window.
  double max_missed = 1e-4;
  bool enforce_window = true;
};

inline constexpr double kDefaultMaxMissed = 1e-4;

/// Expected number of nodes beyond the loss window that would decode at
/// threshold s in at least one of `transmissions` independent fading draws
/// (union bound for transmissions > 1).
double expected_missed_connections(const NetworkConfig& cfg, const FadingSpec& fading,
                                   double s, double window_loss_bound,
                                   int transmissions = 1);

/// Smallest loss window (up to bisection resolution) whose missed-connection
/// expectation is at most max_missed.
double required_window(const NetworkConfig& cfg, const FadingSpec& fading, double s,
                       double max_missed = kDefaultMaxMissed, int transmissions = 1);

/// PLP restricted to [0, L) where c_d L^delta = intensity_measure_cap.
/// Count ~ Poisson(cap), positions iid with cdf (x/L)^delta, then sorted.
PlpfRealization sample_plp(const NetworkConfig& cfg, double intensity_measure_cap,
                           RandomStream& rng);

/// Draws iid marks and forms xi = x / f. StateError if marks are present.
PlpfRealization attach_fading(PlpfRealization plp, const FadingSpec& fading,
                              RandomStream& rng);

/// PLP over the window required for threshold s, with marks attached.
PlpfRealization sample_network(const NetworkConfig& cfg, const FadingSpec& fading, double s,
                               RandomStream& rng, double max_missed = kDefaultMaxMissed,
                               int transmissions = 1);

/// Nodes with xi < 1/s. Throws TruncationError when the window cannot
/// represent threshold s (see ConnectedSetOptions), StateError without marks.
ConnectedSet connected_set(const PlpfRealization& real, double s,
                           const ConnectedSetOptions& opts = {});

/// Node positions conditioned on x_{n+1} = a: n iid losses with cdf
/// (x/a)^delta (returned sorted), marks iid from `fading`.
PlpfRealization sample_conditioned(const NetworkConfig& cfg, std::size_t n, double a,
                                   const FadingSpec& fading, RandomStream& rng);

/// Illustration mode: n losses uniform on [0, upper] (not a PPP).
PlpfRealization sample_uniform_toy(std::size_t n, double upper, const FadingSpec& fading,
                                   RandomStream& rng);

/// Block fading over `transmissions` packets: per node, the number of
/// packets whose fresh mark gives x / f < 1/s.
std::vector<int> reception_counts(const PlpfRealization& plp, const FadingSpec& fading,
                                  double s, int transmissions, RandomStream& rng);

/// CSV with columns i,r,x,f,xi,connected (1-based i).
void write_realization_csv(std::ostream& out, const PlpfRealization& real, double s);

}  // namespace plpf
