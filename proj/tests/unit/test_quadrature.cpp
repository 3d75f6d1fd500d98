#include <cmath>
#include <vector>

#include "doctest.h"
#include "plpf/error.hpp"
#include "plpf/quadrature.hpp"
#include "plpf/specfun.hpp"

namespace q = plpf::quad;

TEST_CASE("finite intervals") {
  CHECK(q::integrate([](double x) { return x * x; }, 0.0, 3.0).value ==
        doctest::Approx(9.0).epsilon(1e-14));
  CHECK(q::integrate([](double x) { return std::sin(x); }, 0.0, plpf::specfun::kPi).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  // Integrable endpoint singularity.
  CHECK(q::integrate([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0)
            .value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(q::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("reversed limits flip the sign") {
  const auto f = [](double x) { return std::exp(x); };
  CHECK(q::integrate(f, 1.0, 0.0).value == doctest::Approx(-(std::exp(1.0) - 1.0)));
}

TEST_CASE("breakpoints expose a narrow peak") {
  const auto f = [](double x) { return std::exp(-1e6 * (x - 0.7) * (x - 0.7)); };
  const double exact = std::sqrt(plpf::specfun::kPi / 1e6);
  const std::vector<double> pts{0.7};
  CHECK(q::integrate(f, 0.0, 1.0, pts).value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("semi-infinite range") {
  CHECK(q::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value ==
        doctest::Approx(1.0).epsilon(1e-8));
  const q::Options tight{1e-15, 1e-13, 4000};
  CHECK(q::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, tight).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q::integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0).value ==
        doctest::Approx(1.0).epsilon(1e-10));
  const std::vector<double> pts{50.0};
  CHECK(q::integrate_to_infinity(
            [](double x) { return std::exp(-(x - 50.0) * (x - 50.0) / 2.0); }, 0.0, pts)
            .value == doctest::Approx(std::sqrt(2.0 * plpf::specfun::kPi)).epsilon(1e-10));
}

TEST_CASE("reports non-convergence") {
  q::Options opts;
  opts.max_intervals = 3;
  CHECK_THROWS_AS(q::integrate([](double x) { return std::sin(1.0 / (x + 1e-6)); }, 0.0, 1.0,
                               opts),
                  plpf::NumericError);
}
