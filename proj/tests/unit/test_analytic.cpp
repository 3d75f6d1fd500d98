#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "plpf/analytic.hpp"
#include "plpf/error.hpp"

using namespace plpf;
using namespace plpf::analytic;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

const NetworkConfig kStd = NetworkConfig::standard();
const NetworkConfig kAlpha4{2, 4.0};
const NetworkConfig kAlpha3{2, 3.0};
const FadingSpec kRay = FadingSpec::rayleigh();
const FadingSpec kNone = FadingSpec::none();

NetworkConfig with_delta(double delta) { return {2, 2.0 / delta}; }

}  // namespace

TEST_CASE("mean measure") {
  CHECK(mean_measure(kStd, 4.0) == Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(mean_measure(kAlpha4, 9.0) == Approx(3.0 * kPi).epsilon(1e-15));
  CHECK(mean_measure(kAlpha4, 0.0) == 0.0);
  CHECK(mean_density(kAlpha4, 4.0) == Approx(kPi * 0.5 / 2.0));
  CHECK_THROWS_AS(mean_measure(kStd, -1.0), DomainError);
}

TEST_CASE("distance pdf") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int i : {1, 2, 5}) {
    const double mass = ts.integrate([&](double r) { return distance_pdf(kStd, i, r); }, 0.0,
                                     std::numeric_limits<double>::infinity());
    CHECK(mass == Approx(1.0).epsilon(1e-10));
  }
  // Mode of the first distance at 1/sqrt(2 pi).
  const double mode = 1.0 / std::sqrt(2.0 * kPi);
  CHECK(distance_pdf(kStd, 1, mode) > distance_pdf(kStd, 1, mode * 0.99));
  CHECK(distance_pdf(kStd, 1, mode) > distance_pdf(kStd, 1, mode * 1.01));
  CHECK(expected_distance(kStd, 1) == Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(distance_pdf(kStd, 0, 1.0), DomainError);
}

TEST_CASE("plp cdf and mean") {
  for (int i : {1, 2, 7}) CHECK(plp_mean(kStd, i) == Approx(i / kPi).epsilon(1e-14));
  CHECK(plp_mean(kAlpha4, 1) == Approx(2.0 / (kPi * kPi)).epsilon(1e-14));
  CHECK(plp_cdf(kAlpha4, 3, 0.0) == 0.0);
  CHECK(plp_cdf(kAlpha4, 3, 1e12) == Approx(1.0));
  CHECK(plp_cdf(kStd, 1, 0.3) == Approx(-std::expm1(-0.3 * kPi)).epsilon(1e-14));
  CHECK(plp_pdf(kStd, 2, 0.3) == Approx(kPi * kPi * 0.3 * std::exp(-0.3 * kPi)));
}

TEST_CASE("plpf cdf") {
  for (double x : {0.01, 0.2, 1.0, 5.0}) {
    CHECK(plpf_cdf(kStd, kRay, 1, x) == Approx(kPi * x / (kPi * x + 1.0)).epsilon(1e-14));
  }
  const double x = 0.4;
  CHECK(plpf_cdf(kStd, FadingSpec::nakagami(500.0), 1, x) ==
        Approx(-std::expm1(-kPi * x)).epsilon(2e-2));
  CHECK(plpf_cdf(kStd, kNone, 3, x) == plp_cdf(kStd, 3, x));
  // mpmath: E_f[P(2, pi sqrt(0.7 f))], f ~ Gamma(2, 1/2).
  CHECK(plpf_cdf(kAlpha4, FadingSpec::nakagami(2.0), 2, 0.7) ==
        Approx(0.661850774579297072).epsilon(1e-10));
}

TEST_CASE("plpf cdf closed form agrees with quadrature") {
  for (double m : {1.0, 2.0, 3.0}) {
    const auto f = FadingSpec::nakagami(m);
    for (int i : {1, 2, 5}) {
      for (double x : {0.05, 0.5, 2.0, 10.0}) {
        CHECK(plpf_cdf(kStd, f, i, x) ==
              Approx(plpf_cdf_integral(kStd, f, i, x)).epsilon(1e-8));
      }
    }
  }
  const auto m2 = FadingSpec::nakagami(2.0);
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  const double mass = gk.integrate([&](double t) { return plpf_pdf(kStd, m2, 2, t); }, 0.0, 1.5,
                                   15, 1e-13);
  CHECK(mass == Approx(plpf_cdf_integral(kStd, m2, 2, 1.5)).epsilon(1e-8));
}

TEST_CASE("plpf moments") {
  const auto m2 = FadingSpec::nakagami(2.0);
  const auto mom = plpf_moments(kStd, m2, 3);
  REQUIRE(mom.mean);
  CHECK(*mom.mean == Approx(6.0 / kPi).epsilon(1e-12));
  const auto ray = plpf_moments(kStd, kRay, 3);
  CHECK_FALSE(ray.mean);
  CHECK_FALSE(ray.variance);

  const auto g = path_gain_moments(kStd, kRay, 3);
  REQUIRE(g.second_moment);
  CHECK(*g.second_moment == Approx(kPi * kPi).epsilon(1e-12));
  REQUIRE(g.mean);
  CHECK(*g.mean == Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(*g.variance == Approx(kPi * kPi - kPi * kPi / 4.0).epsilon(1e-12));
  CHECK_FALSE(path_gain_moments(kStd, kRay, 1).mean);
  CHECK_FALSE(path_gain_moments(kStd, kRay, 2).second_moment);
}

TEST_CASE("entropies") {
  CHECK(plpf_entropy(kStd, kRay, 1) == Approx(2.0 - std::log(kPi)).epsilon(1e-13));
  CHECK(path_gain_entropy(kStd, kRay, 1) == Approx(2.0 + std::log(kPi)).epsilon(1e-13));
  double prev = path_gain_entropy(kStd, kRay, 1);
  for (int i = 2; i <= 20; ++i) {
    const double h = path_gain_entropy(kStd, kRay, i);
    CHECK(h < prev);
    prev = h;
  }
  // mpmath: entropy of x_2 / f with f ~ Gamma(2, 1/2).
  CHECK(plpf_entropy(kStd, FadingSpec::nakagami(2.0), 2) ==
        Approx(1.0899911588158235).epsilon(1e-7));
  CHECK_THROWS_AS(path_gain_entropy(NetworkConfig(3, 3.0), kRay, 1), UnsupportedError);
  CHECK_THROWS_AS(path_gain_entropy(kStd, FadingSpec::nakagami(2.0), 1), UnsupportedError);
}

TEST_CASE("reordering") {
  CHECK(reorder_probability(1, 1) == Approx(1.0 - kLn2).epsilon(1e-14));
  CHECK(reorder_probability(1, 2) == Approx(3.0 - 4.0 * kLn2).epsilon(1e-13));
  CHECK(reorder_probability(2, 2) == Approx(12.0 * kLn2 - 8.0).epsilon(1e-12));
  CHECK(reorder_probability(3, 3) == Approx(83.5 - 120.0 * kLn2).epsilon(1e-10));
  CHECK(reorder_probability(4, 4) == Approx(1120.0 * kLn2 - 776.0).epsilon(1e-8));
  CHECK(reorder_probability_integral(1, 1) == Approx(1.0 - kLn2).epsilon(1e-8));
  CHECK(reorder_probability_integral(2, 2) == Approx(12.0 * kLn2 - 8.0).epsilon(1e-8));
  CHECK(reorder_probability_integral(4, 4) == Approx(1120.0 * kLn2 - 776.0).epsilon(1e-8));
  const double p23 = reorder_probability(2, 3);
  CHECK(p23 > 0.0);
  CHECK(p23 < 1.0);
}

TEST_CASE("conditioned cdf") {
  CHECK(conditioned_plpf_cdf(kStd, kRay, 1.0, 1e9) == Approx(1.0).epsilon(1e-8));
  const double x = 1.7;
  CHECK(conditioned_plpf_cdf(kAlpha4, kRay, x, x) ==
        Approx(std::sqrt(kPi) / 2.0 * std::erf(1.0)).epsilon(1e-12));
  for (double a : {0.5, 2.0}) {
    for (double t : {0.1, 1.0, 4.0}) {
      CHECK(conditioned_plpf_cdf(kStd, kRay, a, t) ==
            Approx(conditioned_plpf_cdf_integral(kStd, kRay, a, t)).epsilon(1e-9));
    }
  }
  // mpmath: (1/Lambda(a)) int_0^a lambda(r) P(f > r/x) dr, m = 2, delta = 1/2.
  CHECK(conditioned_plpf_cdf(kAlpha4, FadingSpec::nakagami(2.0), 2.0, 1.5) ==
        Approx(0.762278643207005619).epsilon(1e-9));
}

TEST_CASE("connectivity") {
  for (const auto& f : {kRay, FadingSpec::nakagami(2.0), FadingSpec::nakagami(5.0), kNone}) {
    CHECK(expected_connected(kStd, f, 0.1) == Approx(10.0 * kPi).epsilon(1e-12));
    CHECK(connectivity_gain(kStd, f).gain == Approx(1.0).epsilon(1e-12));
  }
  for (double delta : {0.3, 0.5, 1.3}) {
    const auto cfg = with_delta(delta);
    CHECK(expected_connected(cfg, kRay, 0.7) ==
          Approx(kPi * std::pow(0.7, -delta) * std::tgamma(delta + 1.0)).epsilon(1e-12));
  }
  CHECK(connectivity_gain(kAlpha4, kRay).gain == Approx(std::sqrt(kPi) / 2.0).epsilon(1e-13));
  // mpmath: pi s^-delta Gamma(m+delta)/(Gamma(m) m^delta).
  const auto m2 = FadingSpec::nakagami(2.0);
  CHECK(expected_connected(kAlpha4, m2, 0.3) == Approx(5.39151039948742762).epsilon(1e-12));
  CHECK(isolation_probability(kAlpha4, m2, 0.3) ==
        Approx(0.00455508813455824382).epsilon(1e-10));
  for (double s : {0.2, 1.0}) {
    CHECK(expected_connected(kAlpha4, m2, s) ==
          Approx(expected_connected_integral(kAlpha4, m2, s)).epsilon(1e-8));
  }
}

TEST_CASE("gain minimum over delta") {
  double best = 0.0;
  double best_gain = 1.0;
  for (double delta = 0.40; delta <= 0.52; delta += 0.0005) {
    const double g = connectivity_gain(with_delta(delta), kRay).gain;
    if (g < best_gain) {
      best_gain = g;
      best = delta;
    }
  }
  CHECK(best == Approx(0.462).epsilon(0.005 / 0.462));
}

TEST_CASE("connected within a radius") {
  CHECK(expected_connected_within(kStd, kRay, 0.5, 1e8) == Approx(kPi / 0.5).epsilon(1e-6));
  CHECK(expected_connected_within(kAlpha4, kNone, 0.5, 1.5) ==
        Approx(kPi * std::sqrt(1.5)).epsilon(1e-13));
  CHECK(expected_connected_within(kStd, kRay, 0.5, 2.0) ==
        Approx(kPi * 2.0 * conditioned_plpf_cdf(kStd, kRay, 2.0, 2.0)).epsilon(1e-13));
}

TEST_CASE("mean connected node") {
  const auto r = mean_connected_node(kStd, kRay, 1.0);
  CHECK(r.with_fading == Approx(1.0).epsilon(1e-13));
  CHECK(r.without_fading == Approx(0.5).epsilon(1e-13));
  CHECK(r.gain == Approx(2.0).epsilon(1e-13));
  CHECK(mean_connected_node(kAlpha4, FadingSpec::nakagami(2.0), 0.5).with_fading ==
        Approx(5.0 / 6.0).epsilon(1e-13));
  CHECK(mean_connected_node(kAlpha4, kNone, 0.5).with_fading ==
        Approx(0.5 / (0.5 * 1.5)).epsilon(1e-13));
}

TEST_CASE("retransmissions") {
  CHECK(expected_connected_retransmissions(kStd, kRay, 0.4, 1) == Approx(kPi / 0.4));
  const double h6 = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6;
  CHECK(expected_connected_retransmissions(kStd, kRay, 1.0, 6) == Approx(kPi * h6).epsilon(1e-12));
  CHECK(retransmission_density(kStd, kRay, 1.0, 6, 1e-12) == Approx(kPi));
  // mpmath: int (1 - F(x)^3) lambda(x) dx, m = 2, delta = 1/2.
  CHECK(expected_connected_retransmissions(kAlpha4, FadingSpec::nakagami(2.0), 1.0, 3) ==
        Approx(3.87977596301878719).epsilon(1e-8));
  double prev = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const double e = expected_reached_decreasing_thresholds(kStd, kRay, 1.0, n);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("reach probability") {
  CHECK(broadcast_reach_probability(1, 1.0) == Approx(-std::expm1(-1.0)).epsilon(1e-14));
  CHECK(broadcast_reach_probability(500, 2.0) == Approx(0.5).epsilon(0.02));
  CHECK(broadcast_reach_probability(1, 0.0) == 1.0);
  // mpmath: (1/s) int_0^s P(f > t) dt, m = 3.
  CHECK(broadcast_reach_probability(3, 0.7) == Approx(0.880141567752716731).epsilon(1e-12));
  for (int m = 1; m <= 20; ++m) {
    for (double st = 0.05; st <= 5.0; st += 0.05) {
      const double p = broadcast_reach_probability(m, st);
      const auto b = broadcast_reach_bounds(m, st);
      CHECK(b.lower <= p + 1e-14);
      CHECK(p <= b.upper + 1e-14);
      CHECK(broadcast_reach_probability(m + 1, st) >= p - 1e-14);
    }
  }
  for (int m : {1, 2, 4}) {
    for (double st : {0.01, 0.3, 2.0}) {
      CHECK(broadcast_reach_probability(m, st) ==
            Approx(broadcast_reach_probability_integral(m, st)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(broadcast_reach_probability_integral(2.5, -1.0), DomainError);
}

TEST_CASE("epsilon threshold") {
  const auto t1 = epsilon_reachability_threshold(1, 0.05);
  CHECK(t1.sufficient == Approx(0.10).epsilon(1e-12));
  CHECK(broadcast_reach_probability(1, t1.exact) == Approx(0.95).epsilon(1e-9));
  REQUIRE(t1.quadratic);
  CHECK(*t1.quadratic == Approx(0.1 + 4.0 / 3.0 * 0.0025).epsilon(1e-14));
  CHECK(epsilon_reachability_threshold(2, 0.1).sufficient ==
        Approx(std::sqrt(0.6) / 2.0).epsilon(1e-13));
  for (int m : {1, 2, 3}) {
    for (double eps : {0.01, 0.05, 0.1}) {
      const auto t = epsilon_reachability_threshold(m, eps);
      CHECK(broadcast_reach_probability(m, t.exact) >= 1.0 - eps - 1e-12);
      CHECK(broadcast_reach_probability(m, t.sufficient) >= 1.0 - eps - 1e-12);
    }
  }
}

TEST_CASE("broadcast sum distance") {
  const auto nf = broadcast_sum_distance(kStd, kNone, 1.0);
  CHECK(nf.with_fading == Approx(2.0 * kPi / 3.0).epsilon(1e-14));
  const auto r = broadcast_sum_distance(kStd, kRay, 0.3);
  CHECK(r.gain == Approx(std::tgamma(2.5)).epsilon(1e-13));
  CHECK(r.with_fading == Approx(kPi * std::tgamma(1.5) * std::pow(0.3, -1.5)).epsilon(1e-12));
  for (double m : {1.0, 2.0, 7.0}) {
    CHECK(broadcast_sum_distance(kAlpha3, FadingSpec::nakagami(m), 0.5).gain ==
          Approx(1.0).epsilon(1e-12));
  }
  // mpmath: int x^(1/4) P(f > s x) lambda(x) dx, m = 2, d = 2, alpha = 4.
  CHECK(broadcast_sum_distance(kAlpha4, FadingSpec::nakagami(2.0), 0.5).with_fading ==
        Approx(3.36854009629447762).epsilon(1e-12));
  CHECK(broadcast_sum_distance_integral(kAlpha4, FadingSpec::nakagami(2.0), 0.5) ==
        Approx(3.36854009629447762).epsilon(1e-8));
}

TEST_CASE("transport capacity") {
  const double delta_one = 1.0 / (2.0 * kLn2);
  const NetworkConfig at_one{2, 3.0 / delta_one};
  const auto c = broadcast_transport_capacity(at_one, kNone);
  REQUIRE(c.bounded);
  CHECK(c.r_opt == Approx(1.0).epsilon(1e-9));
  CHECK(c.s_opt == Approx(1.0).epsilon(1e-9));
  CHECK(*c.capacity == Approx(2.0 * kPi / 3.0).epsilon(1e-9));
  CHECK(*c.capacity == Approx(broadcast_sum_distance(at_one, kNone, 1.0).with_fading));

  for (const auto& f : {kRay, FadingSpec::nakagami(3.0), kNone}) {
    const auto u = broadcast_transport_capacity(kAlpha3, f);
    REQUIRE(u.capacity);
    CHECK(*u.capacity == Approx(2.0 * kPi / (3.0 * kLn2)).epsilon(1e-9));
  }
  // mpmath: maximize R D(2^R - 1) for d = 2, alpha = 4, Rayleigh.
  const auto r4 = broadcast_transport_capacity(kAlpha4, kRay);
  CHECK(r4.r_opt == Approx(0.874071185616838663).epsilon(1e-10));
  CHECK(*r4.capacity == Approx(1.92989684521699955).epsilon(1e-12));
  CHECK(capacity_at_rate(kAlpha4, kRay, r4.r_opt) == Approx(*r4.capacity).epsilon(1e-14));
  REQUIRE(r4.lower_bound);
  CHECK(*r4.lower_bound <= *r4.capacity);

  const auto ub = broadcast_transport_capacity(kStd, kRay);
  CHECK_FALSE(ub.bounded);
  CHECK_FALSE(ub.capacity);
  double prev = 0.0;
  for (double rate : {1.0, 0.1, 0.01, 0.001}) {
    const double v = capacity_at_rate(kStd, kRay, rate);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("superposition bound") {
  const auto b = superposition_capacity_lower_bound(kAlpha4);
  REQUIRE(b.lower_bound);
  CHECK(*b.lower_bound == Approx(8.0 * kPi / 3.0).epsilon(1e-13));
  boost::math::quadrature::tanh_sinh<double> ts;
  const double delta_b = 0.75;
  const double near = kPi * 0.5 *
                      ts.integrate([&](double x) { return -std::pow(x, delta_b - 1.0) *
                                                          std::log2(x); },
                                   0.0, 1.0);
  CHECK(b.near_field == Approx(near).epsilon(1e-10));
  CHECK_FALSE(superposition_capacity_lower_bound(kAlpha3).lower_bound);
  CHECK(*superposition_capacity_lower_bound(NetworkConfig(2, 3.0001)).lower_bound > 1e4);
}

TEST_CASE("maximum distance") {
  CHECK(max_distance_bound(kStd, kRay, 0.1) == Approx(6.36).epsilon(0.005 / 6.36));
  CHECK(max_loss_cdf(kStd, kRay, 0.1, 0.0) ==
        Approx(std::exp(-expected_connected(kStd, kRay, 0.1))).epsilon(1e-12));
  // mpmath: int_0^inf 1 - exp(-(pi/s) exp(-s r^2)) dr.
  CHECK(mean_max_distance(kStd, kRay, 0.1) == Approx(6.26906437325083885).epsilon(1e-9));
  for (double s : {0.05, 0.1, 0.5, 1.0}) {
    CHECK(mean_max_distance(kStd, kRay, s) <= max_distance_bound(kStd, kRay, s));
  }
}

TEST_CASE("probabilistic progress") {
  for (double s : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    const auto p = probabilistic_progress(kStd, kRay, s);
    CHECK(p.continuous_optimum == Approx(1.0 / (2.0 * s)).epsilon(1e-12));
    REQUIRE(p.i_opt_rounded);
    CHECK(*p.i_opt_rounded == static_cast<int>(std::ceil(kPi / (2.0 * s))));
    CHECK(p.i_opt_scan == *p.i_opt_rounded);
  }
  CHECK(probabilistic_progress(kStd, kRay, 0.1).i_opt_scan == 16);
  CHECK(discrete_progress(kStd, kRay, 0.1, 16) > discrete_progress(kStd, kRay, 0.1, 15));
  CHECK(discrete_progress(kStd, kRay, 0.1, 16) > discrete_progress(kStd, kRay, 0.1, 17));
  CHECK(discrete_progress(kStd, kRay, 0.1, 16) ==
        Approx(discrete_progress(kStd, FadingSpec::nakagami(1.0), 0.1, 16)));
}

TEST_CASE("packets received k times") {
  for (int n : {3, 4, 9}) {
    CHECK(*expected_received_k(kStd, 1.0, 3, n) == Approx(kPi / 3.0).epsilon(1e-12));
  }
  CHECK_FALSE(expected_received_k(kStd, 1.0, 0, 3));
  const double h6 = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6;
  double sum = 0.0;
  for (int k = 1; k <= 6; ++k) sum += *expected_received_k(kStd, 0.5, k, 6);
  CHECK(sum == Approx(kPi / 0.5 * h6).epsilon(1e-12));
  CHECK(received_k_density(kStd, 1.0, 6, 6, 1e-15) == Approx(kPi).epsilon(1e-12));
  boost::math::quadrature::tanh_sinh<double> ts;
  const double mass = ts.integrate([](double x) { return received_k_pdf(kStd, 1.0, 2, 4, x); },
                                   0.0, std::numeric_limits<double>::infinity());
  CHECK(mass == Approx(1.0).epsilon(1e-8));
  const auto mom = received_k_moments(kStd, 1.0, 2, 4);
  REQUIRE(mom.mean);
  CHECK(*mom.mean > 0.0);
}

TEST_CASE("localization") {
  CHECK(localize(kStd, kRay, PathGain{2.0}) == 2);
  CHECK(localize(kStd, kRay, PathLoss{0.5}) == 2);
  // Half-open decision regions c_d/i <= g < c_d/(i-1).
  CHECK(localize(kStd, kRay, PathGain{kPi / 3.0}) == 3);
  CHECK(localize(kStd, kRay, PathGain{std::nextafter(kPi / 2.0, 0.0)}) == 3);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(kPi / 200.0, kPi);
  for (int t = 0; t < 100; ++t) {
    const double g = u(gen);
    const int expect = static_cast<int>(std::ceil(kPi / g));
    CHECK(localize(kStd, kRay, PathGain{g}) == expect);
    CHECK(localize_by_scan(kStd, kRay, PathLoss{1.0 / g}, 200) == expect);
  }
}
