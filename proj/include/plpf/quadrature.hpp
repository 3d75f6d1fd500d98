#pragma once

#include <functional>
#include <span>

namespace plpf::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over [a, b];
/// b < a gives the negated integral over [b, a].
/// Throws NumericError (with the best estimate and error in the message)
/// when the tolerance cannot be met within max_intervals.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Same, with the interval pre-split at the given interior points. Points
/// outside (a, b) are ignored. Use this to expose narrow peaks.
Result integrate(const Integrand& f, double a, double b,
                 std::span<const double> breakpoints, const Options& opts = {});

/// Integral over [a, inf): plain on [a, p] for the largest breakpoint p,
/// then the map x = p + c t / (1 - t) with c = max(1, p - a).
Result integrate_to_infinity(const Integrand& f, double a, const Options& opts = {});

Result integrate_to_infinity(const Integrand& f, double a,
                             std::span<const double> breakpoints,
                             const Options& opts = {});

}  // namespace plpf::quad
