#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "plpf/random.hpp"

using plpf::RandomStream;

TEST_CASE("child seeds depend only on base and index") {
  CHECK(plpf::derive_seed(1, 0) == plpf::derive_seed(1, 0));
  CHECK(plpf::derive_seed(1, 0) != plpf::derive_seed(1, 1));
  CHECK(plpf::derive_seed(1, 0) != plpf::derive_seed(2, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(plpf::derive_seed(42, i));
  CHECK(seen.size() == 10000);
}

TEST_CASE("streams are reproducible") {
  auto a = RandomStream::for_trial(9, 3);
  auto b = RandomStream::for_trial(9, 3);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.gamma(2.5) == b.gamma(2.5));
    CHECK(a.poisson(30.0) == b.poisson(30.0));
  }
}

TEST_CASE("uniform stays in the open unit interval") {
  RandomStream rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

namespace {
struct Moments {
  double mean = 0.0;
  double var = 0.0;
};
template <class F>
Moments sample_moments(F draw, int n) {
  double s = 0.0;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = draw();
    s += v;
    ss += v * v;
  }
  Moments m;
  m.mean = s / n;
  m.var = ss / n - m.mean * m.mean;
  return m;
}
}  // namespace

TEST_CASE("variate moments") {
  RandomStream rng(2024);
  const int n = 200000;
  const auto norm = sample_moments([&] { return rng.normal(); }, n);
  CHECK(std::abs(norm.mean) < 4.0 / std::sqrt(n));
  CHECK(norm.var == doctest::Approx(1.0).epsilon(0.02));
  const auto ex = sample_moments([&] { return rng.exponential(); }, n);
  CHECK(std::abs(ex.mean - 1.0) < 4.0 / std::sqrt(n));
  for (double shape : {0.3, 0.5, 1.0, 2.5, 10.0}) {
    const auto g = sample_moments([&] { return rng.gamma(shape); }, n);
    CHECK(std::abs(g.mean - shape) < 4.0 * std::sqrt(shape / n));
    CHECK(g.var == doctest::Approx(shape).epsilon(0.05));
  }
  for (double mean : {0.5, 3.0, 11.9, 12.0, 40.0, 1000.0}) {
    const auto p = sample_moments([&] { return static_cast<double>(rng.poisson(mean)); }, n);
    CHECK(std::abs(p.mean - mean) < 4.0 * std::sqrt(mean / n));
    CHECK(p.var == doctest::Approx(mean).epsilon(0.03));
  }
}

TEST_CASE("poisson pmf at small counts") {
  RandomStream rng(77);
  const int n = 200000;
  const double mean = 20.0;
  int zeros_or_ten = 0;
  for (int i = 0; i < n; ++i) zeros_or_ten += rng.poisson(mean) == 10 ? 1 : 0;
  const double p10 = std::exp(-mean + 10.0 * std::log(mean) - std::lgamma(11.0));
  CHECK(std::abs(zeros_or_ten / double(n) - p10) < 4.0 * std::sqrt(p10 * (1 - p10) / n));
}
