#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "gliders/error.hpp"
#include "gliders/oracle.hpp"

using namespace gliders;

TEST_CASE("closed forms") {
  CHECK(minima_comparison_probability({1, 1, 0}) == doctest::Approx(0.5));
  CHECK(minima_comparison_probability({1, 3, 0}) == doctest::Approx(1.0 / 3.0));
  CHECK(minima_comparison_probability({1e-12, 1, 0}) < 1e-5);
  CHECK_THROWS_AS(minima_comparison_probability({1, 1, 0.5}), ContractError);
  CHECK_THROWS_AS(minima_comparison_probability({0, 1, 0}), ContractError);
}

TEST_CASE("minimum density integrates to one") {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double mass = integrator.integrate([](double u) { return brownian_min_density(-u); });
  CHECK(std::abs(mass - 1.0) < 1e-8);
  CHECK(brownian_min_density(0) == doctest::Approx(2.0 / std::sqrt(2 * std::numbers::pi)));
  CHECK_THROWS_AS(brownian_min_density(0.1), ContractError);
}

TEST_CASE("walk minima follow the half-normal law") {
  const Index steps = 2500;
  const int samples = 20000;
  const double edges[] = {0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, INFINITY};
  const int bins = 9;
  std::vector<double> counts(bins, 0);
  for (int t = 0; t < samples; ++t) {
    auto cur = CounterStream(5, static_cast<std::uint64_t>(t)).cursor();
    // half-step continuity correction for the integer-valued minimum
    const double m = (0.5 - static_cast<double>(walk_minimum(cur, steps, IncrementSpec::fair()))) /
                     std::sqrt(double(steps));
    for (int b = 0; b < bins; ++b)
      if (m >= edges[b] && m < edges[b + 1]) ++counts[static_cast<std::size_t>(b)];
  }
  double chi2 = 0;
  for (int b = 0; b < bins; ++b) {
    const double p = std::erf(edges[b + 1] / std::sqrt(2.0)) - std::erf(edges[b] / std::sqrt(2.0));
    const double expected = p * samples;
    chi2 += (counts[static_cast<std::size_t>(b)] - expected) * (counts[static_cast<std::size_t>(b)] - expected) / expected;
  }
  const double p_value = boost::math::gamma_q((bins - 1) / 2.0, chi2 / 2.0);
  CAPTURE(chi2);
  CHECK(p_value > 1e-3);
}

TEST_CASE("increment validation") {
  CHECK_THROWS_AS(IncrementSpec::three_point(0).validate(), ContractError);
  CHECK_THROWS_AS(IncrementSpec::three_point(0.6).validate(), ContractError);
  CHECK(IncrementSpec::three_point(0.25).variance() == doctest::Approx(0.5));
}

TEST_CASE("discrete surrogate matches the closed form") {
  const auto fair = simulate_minima_comparison({1, 1, 0}, 1000, 20000, 1, IncrementSpec::fair());
  CHECK(std::abs(fair.probability - 0.5) < 0.015);
  const auto third = simulate_minima_comparison({1, 3, 0}, 1000, 20000, 2, IncrementSpec::fair());
  CHECK(std::abs(third.probability - 1.0 / 3.0) < 0.02);
  // scaling invariance
  const auto scaled = simulate_minima_comparison({2, 6, 0}, 1000, 20000, 3, IncrementSpec::fair());
  CHECK(std::abs(scaled.probability - third.probability) < 0.025);
  // increment independence
  const auto lazy = simulate_minima_comparison({1, 3, 0}, 1000, 20000, 2, IncrementSpec::three_point(0.25));
  CHECK(std::abs(lazy.probability - third.probability) < 0.025);
  const auto odd = simulate_minima_comparison({1, 3, 0}, 1000, 20000, 2, IncrementSpec::three_point(0.4));
  CHECK(std::abs(odd.probability - 1.0 / 3.0) < 0.02);
  CHECK_THROWS_AS(simulate_minima_comparison({1, 1, 0}, 999, 10, 1, IncrementSpec::fair()), ContractError);
}

TEST_CASE("offset discrepancy shrinks with epsilon") {
  double last = INFINITY;
  for (double eps : {0.5, 0.25, 0.1, 0.0}) {
    const auto e = simulate_minima_comparison({1, 1, eps}, 1000, 20000, 7, IncrementSpec::fair());
    const double gap = std::abs(e.probability - 0.5);
    CHECK(gap < last + 0.01);
    last = gap;
  }
  CHECK(last < 0.015);
}

TEST_CASE("kernels and worker counts agree") {
  const auto a = simulate_minima_comparison({0.5, 4, 0}, 1000, 3000, 9, IncrementSpec::fair(), {1, Kernel::serial_reference});
  const auto b = simulate_minima_comparison({0.5, 4, 0}, 1000, 3000, 9, IncrementSpec::fair(), {4, Kernel::parallel_scan});
  CHECK(a.probability == b.probability);
  std::ostringstream out;
  write_oracle_csv_header(out);
  write_oracle_csv_row(out, {0.5, 4, 0}, a);
  CHECK(out.str().rfind("y,z,epsilon,closed_form,empirical,stderr,walk_steps,trials\n0.5,4,0,", 0) == 0);
}
