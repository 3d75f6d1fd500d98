#pragma once

// Special functions used by the analytic layer. All functions are pure and
// deterministic; arguments outside the documented domain raise DomainError.

namespace plpf::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Error budget of the iterative routines (series, continued fractions,
/// Halley steps). The closed-form routines meet the default budget.
struct Accuracy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;

  /// Throws DomainError unless both tolerances are positive and finite.
  void validate() const;
};

/// Gamma function for x > 0 (Lanczos, g = 7). Overflows to +inf past ~171.6;
/// use log_gamma there.
double gamma(double x);

/// ln Gamma(x) for x > 0 (Lanczos below 10, Stirling series above).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x, const Accuracy& acc = {});

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise.
double gamma_q(double a, double x, const Accuracy& acc = {});

/// Digamma (logarithmic derivative of Gamma) for x > 0.
double digamma(double x);

/// Principal branch of the Lambert W function, x >= -1/e. Result w >= -1.
double lambert_w0(double x, const Accuracy& acc = {});

double erf(double x);
double erfc(double x);

}  // namespace plpf::specfun
