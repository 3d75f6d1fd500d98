#include "plpf/fading.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "plpf/error.hpp"
#include "plpf/specfun.hpp"

namespace plpf {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string out(buf, end);
  // Keep the "m=2.0" look for integral values.
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

}  // namespace

FadingSpec FadingSpec::nakagami(double m) {
  if (!std::isfinite(m) || !(m >= 0.5)) {
    throw DomainError("FadingSpec::nakagami: m must be finite and >= 0.5");
  }
  return FadingSpec(Kind::nakagami, m);
}

FadingSpec FadingSpec::parse(std::string_view text) {
  const std::string_view t = trim(text);
  if (t == "none" || t == "degenerate") return none();
  constexpr std::string_view prefix = "nakagami:m=";
  if (t.substr(0, prefix.size()) == prefix) {
    const std::string_view num = t.substr(prefix.size());
    double m = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), m);
    if (ec == std::errc() && ptr == num.data() + num.size()) return nakagami(m);
  }
  if (t == "rayleigh") return rayleigh();
  throw DomainError("FadingSpec::parse: expected \"nakagami:m=<value>\" or \"none\", got \"" +
                    std::string(text) + "\"");
}

std::string FadingSpec::to_string() const {
  if (is_degenerate()) return "none";
  return "nakagami:m=" + format_number(m_);
}

double FadingSpec::m() const {
  if (is_degenerate()) throw UnsupportedError("FadingSpec::m: degenerate law has no m");
  return m_;
}

double FadingSpec::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("FadingSpec::cdf: NaN argument");
  if (is_degenerate()) return x >= 1.0 ? 1.0 : 0.0;
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return specfun::gamma_p(m_, m_ * x);
}

double FadingSpec::survival(double x) const {
  if (std::isnan(x)) throw DomainError("FadingSpec::survival: NaN argument");
  if (is_degenerate()) return x >= 1.0 ? 0.0 : 1.0;
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return specfun::gamma_q(m_, m_ * x);
}

double FadingSpec::pdf(double x) const {
  if (is_degenerate()) throw UnsupportedError("FadingSpec::pdf: degenerate law has no density");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("FadingSpec::pdf: x must be finite and > 0");
  }
  return std::exp(m_ * std::log(m_) + (m_ - 1.0) * std::log(x) - m_ * x -
                  specfun::log_gamma(m_));
}

double FadingSpec::sample(RandomStream& rng) const {
  if (is_degenerate()) return 1.0;
  return rng.gamma(m_) / m_;
}

double FadingSpec::moment(double nu) const {
  if (!std::isfinite(nu)) throw DomainError("FadingSpec::moment: non-finite order");
  if (is_degenerate()) return 1.0;
  if (nu <= -m_) {
    throw DivergenceError("FadingSpec::moment: E[f^nu] diverges for nu <= -m");
  }
  if (nu == 0.0) return 1.0;
  return std::exp(specfun::log_gamma(m_ + nu) - specfun::log_gamma(m_) -
                  nu * std::log(m_));
}

double FadingSpec::upper_partial_moment(double nu, double y) const {
  if (!(y >= 0.0)) throw DomainError("upper_partial_moment: y must be >= 0");
  if (is_degenerate()) return y < 1.0 ? 1.0 : 0.0;
  if (std::isinf(y)) return 0.0;
  return moment(nu) * specfun::gamma_q(m_ + nu, m_ * y);
}

}  // namespace plpf
