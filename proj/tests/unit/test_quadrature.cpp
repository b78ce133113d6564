#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "costress/quadrature.hpp"

using namespace costress;

TEST(GaussLegendre, IntegratesPolynomialsOfDegreeTwoNMinusOne) {
  for (int n = 1; n <= 20; ++n) {
    const Rule1D r = gauss_legendre(n, 0.0, 2.0);
    ASSERT_EQ(r.size(), static_cast<std::size_t>(n));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      const double exact = std::pow(2.0, d + 1) / (d + 1);
      EXPECT_NEAR(s, exact, 1e-13 * exact) << "n=" << n << " d=" << d;
    }
  }
}

TEST(GaussLegendre, NodesSymmetricAndInside) {
  const Rule1D r = gauss_legendre(7);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.nodes[i], -1.0);
    EXPECT_LT(r.nodes[i], 1.0);
    EXPECT_NEAR(r.nodes[i], -r.nodes[r.size() - 1 - i], 1e-15);
    EXPECT_GT(r.weights[i], 0.0);
  }
  EXPECT_NEAR(r.nodes[3], 0.0, 1e-16);
}

TEST(PeriodicTrapezoid, ExactForLowTrigonometricDegree) {
  const double tau = 2.0 * std::numbers::pi;
  const Rule1D r = periodic_trapezoid(8, 0.0, tau);
  for (int k = 0; k < 8; ++k) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      c += r.weights[i] * std::cos(k * r.nodes[i]);
      s += r.weights[i] * std::sin(k * r.nodes[i]);
    }
    EXPECT_NEAR(c, k == 0 ? tau : 0.0, 1e-14);
    EXPECT_NEAR(s, 0.0, 1e-14);
  }
}

TEST(CompensatedSum, RecoversCancelledLowOrderBits) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 10; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-15, 1e-30);
}
