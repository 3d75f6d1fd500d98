#pragma once

#include <string>
#include <string_view>

#include "plpf/random.hpp"

namespace plpf {

/// Unit-mean power fading law: Nakagami-m (gamma with shape m, scale 1/m) or
/// the degenerate no-fading law F(x) = u(x - 1).
///
/// Config-file form: "nakagami:m=2.0" or "none".
class FadingSpec {
 public:
  enum class Kind { nakagami, degenerate };

  /// Throws DomainError unless m >= 0.5 and finite.
  static FadingSpec nakagami(double m);
  static FadingSpec rayleigh() { return nakagami(1.0); }
  static FadingSpec none() { return FadingSpec(Kind::degenerate, 0.0); }

  /// Parses the config-file form. Throws DomainError on malformed input.
  static FadingSpec parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  bool is_degenerate() const { return kind_ == Kind::degenerate; }
  /// Nakagami parameter; UnsupportedError for the degenerate law.
  double m() const;

  /// P[f <= x]; 0 for x < 0. Right-continuous step at 1 when degenerate.
  double cdf(double x) const;
  /// 1 - cdf(x), evaluated without cancellation.
  double survival(double x) const;
  /// Density for x > 0; UnsupportedError when degenerate.
  double pdf(double x) const;
  double sample(RandomStream& rng) const;
  /// E[f^nu] = Gamma(m + nu) / (m^nu Gamma(m)); 1 for the degenerate law.
  /// DivergenceError when nu <= -m.
  double moment(double nu) const;
  /// E[f^nu ; f > y], the partial moment above y (y >= 0).
  double upper_partial_moment(double nu, double y) const;

  friend bool operator==(const FadingSpec&, const FadingSpec&) = default;

 private:
  FadingSpec(Kind kind, double m) : kind_(kind), m_(m) {}
  Kind kind_;
  double m_;
};

}  // namespace plpf
