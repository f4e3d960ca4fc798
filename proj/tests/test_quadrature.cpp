#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pairwave/quadrature.hpp"

using namespace pairwave;

TEST(Quadrature, KnownIntegrals) {
  const auto g = integrate([](double x) { return std::exp(-x * x); }, -10, 10, 1e-13);
  EXPECT_TRUE(g.converged);
  EXPECT_NEAR(g.value, std::sqrt(std::numbers::pi), 1e-13);
  EXPECT_GT(g.evaluations, 0u);
  const auto s = integrate([](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(s.value, std::numbers::pi, 1e-12);
}

TEST(Quadrature, HalvingToleranceNeverIncreasesError) {
  auto f = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  const double exact = 2.0 / 5.0 * std::atan(5.0);
  double previous = 1e300;
  for (double tol = 1e-3; tol >= 1e-13; tol /= 2) {
    const auto r = integrate(f, -1, 1, tol);
    ASSERT_TRUE(r.converged);
    const double err = std::abs(r.value - exact);
    EXPECT_LE(err, tol);
    EXPECT_LE(err, std::max(previous, 1e-15)) << tol;
    previous = err;
  }
}

TEST(Quadrature, BudgetExhaustionIsReported) {
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
  const auto r = integrate(wild, 0, 1, 1e-14, 210);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(require_converged(r, "wild"), NumericalError);
}

TEST(Quadrature, ComplexIntegrand) {
  const auto r = integrate_complex([](double x) { return std::polar(1.0, x); }, 0, std::numbers::pi / 2, 1e-13);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 1.0, 1e-13);
}
