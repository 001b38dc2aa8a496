#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gmmlab/quadrature.hpp"

namespace gmmlab::quadrature {
namespace {

using std::numbers::pi;

TEST(Quadrature, PolynomialsAreExact) {
  EXPECT_NEAR(integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0), 20.0 - 8.0 + 4.0, 1e-13);
  EXPECT_NEAR(integrate([](double) { return 1.0; }, 2.0, 2.0), 0.0, 0.0);
}

TEST(Quadrature, SmoothTranscendental) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, pi), 2.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0), std::sqrt(pi), 1e-12);
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(1.0 + x * x); }, 0.0, 10.0), std::asinh(10.0),
              1e-12);
}

TEST(Quadrature, KinkedIntegrandWithAndWithoutBreakpoints) {
  // max(cos x, 0.3) has kinks at +-acos(0.3).
  auto f = [](double x) { return std::max(std::cos(x), 0.3); };
  const double k = std::acos(0.3);
  const double exact = 2.0 * std::sin(k) + 0.3 * (2.0 * pi - 2.0 * k);
  const std::vector<double> cuts = {-k, k};
  EXPECT_NEAR(integrate_piecewise(f, -pi, pi, cuts, 1e-12), exact, 1e-12);
  // Without cuts the adaptive bisection still converges, just with more work.
  EXPECT_NEAR(integrate(f, -pi, pi, 1e-10), exact, 1e-9);
}

TEST(Quadrature, BreakpointsOutsideRangeAreIgnored) {
  const std::vector<double> cuts = {-10.0, 0.5, 0.5, 99.0};
  EXPECT_NEAR(integrate_piecewise([](double x) { return x; }, 0.0, 1.0, cuts), 0.5, 1e-15);
}

}  // namespace
}  // namespace gmmlab::quadrature
