#pragma once

// Shared helpers for the analytic translation units.

#include <cmath>
#include <string>
#include <vector>

#include "plpf/error.hpp"
#include "plpf/fading.hpp"
#include "plpf/geometry.hpp"
#include "plpf/quadrature.hpp"
#include "plpf/specfun.hpp"

namespace plpf::analytic::detail {

inline bool delta_is_one(const NetworkConfig& cfg) { return cfg.d() == cfg.alpha(); }

inline bool is_rayleigh(const FadingSpec& fading) {
  return !fading.is_degenerate() && fading.m() == 1.0;
}

inline void require_index(int i, const char* fn) {
  if (i < 1) throw DomainError(std::string(fn) + ": index must be >= 1");
}

inline void require_positive(double v, const char* what, const char* fn) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(fn) + ": " + what + " must be finite and > 0");
  }
}

/// ln of the Gamma(shape, 1) density at u > 0.
inline double log_gamma_density(double shape, double u) {
  return (shape - 1.0) * std::log(u) - u - specfun::log_gamma(shape);
}

inline double log_binomial(double n, double k) {
  return specfun::log_gamma(n + 1.0) - specfun::log_gamma(k + 1.0) -
         specfun::log_gamma(n - k + 1.0);
}

/// Breakpoints around the bulk of a Gamma(shape, 1) law.
inline std::vector<double> gamma_breakpoints(double shape) {
  std::vector<double> pts;
  const double sd = std::sqrt(shape);
  for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double p = shape + k * sd;
    if (p > 0.0) pts.push_back(p);
  }
  return pts;
}

inline quad::Options default_quad() { return {}; }

}  // namespace plpf::analytic::detail
