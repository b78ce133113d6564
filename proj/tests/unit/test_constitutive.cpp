#include <gtest/gtest.h>

#include "costress/constitutive.hpp"
#include "costress/errors.hpp"
#include "generators.hpp"

using namespace costress;
using costress::testing::for_all;
using costress::testing::Gen;
using costress::testing::max_abs;

namespace {

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

TEST(Material, RegimeLabels) {
  EXPECT_EQ(MaterialParams::for_regime("GKMT", 1, 1, 1).regime(), "GKMT");
  EXPECT_EQ(MaterialParams::for_regime("modified", 1, 1, 1).regime(), "modified");
  EXPECT_EQ(MaterialParams::for_regime("HD", 1, 1, 1).regime(), "HD");
  const MaterialParams hd = MaterialParams::for_regime("HD", 2, 3, 0.5);
  EXPECT_EQ(hd.alpha1, 0.0);
  EXPECT_EQ(hd.alpha2, 1.0);
  EXPECT_DOUBLE_EQ(hd.curvature_modulus(), 0.5);
  EXPECT_THROW(MaterialParams::for_regime("bogus", 1, 1, 1), InvalidArgument);
}

TEST(Material, ValidationRejectsInadmissibleParameters) {
  MaterialParams p;
  EXPECT_NO_THROW(p.validate());
  p.mu = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.lambda = -1.0;  // 3 lambda + 2 mu = -1
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.alpha1 = -0.1;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.lambda = -0.5;  // 3 lambda + 2 mu = 0.5 is admissible
  EXPECT_NO_THROW(p.validate());
}

TEST(LinearEnergy, HandValues) {
  const MaterialParams p;
  const LinearEnergy id = w_lin(p, Mat3::identity());
  EXPECT_DOUBLE_EQ(id.lame, 7.5);
  EXPECT_NEAR(id.dev_bulk, 7.5, 1e-14);
  EXPECT_DOUBLE_EQ(w_lin(p, anti({1.0, -2.0, 0.5})).lame, 0.0);
}

TEST(LinearEnergy, FormsAgreeAndAreNonnegative) {
  for_all(31, 1000, [](Gen& g) {
    MaterialParams p;
    p.mu = g.real(0.1, 5.0);
    p.lambda = g.real(-0.6 * p.mu, 5.0);
    const LinearEnergy e = w_lin(p, g.mat());
    EXPECT_LE(rel(e.lame, e.dev_bulk), 1e-12);
    EXPECT_GE(e.lame, 0.0);
  });
}

TEST(CurvatureEnergy, ThreeFormsAgreeOnTraceFreeInput) {
  for (const char* regime : {"GKMT", "modified", "HD"}) {
    const MaterialParams p = MaterialParams::for_regime(regime, 1.0, 1.0, 0.7);
    for_all(32, 1000, [&](Gen& g) {
      const ThirdOrder h = g.hessian();
      const Mat3 G = grad_curl_from_hess(h);
      const CurvatureEnergy e = w_curv(p, G, grad_axl_skw_from_hess(h));
      EXPECT_LE(rel(e.sym_skw, e.axl_gradient), 1e-12) << regime;
      EXPECT_LE(rel(e.sym_skw, e.devsym_skw), 1e-12) << regime;
      EXPECT_GE(e.sym_skw, 0.0);
      EXPECT_FALSE(e.trace_warning);
    });
  }
}

TEST(CurvatureEnergy, WarnsOnTraceAndDevFormDropsIt) {
  const MaterialParams p = MaterialParams::for_regime("modified", 1.0, 1.0, 1.0);
  const CurvatureEnergy e = w_curv(p, Mat3::identity());
  EXPECT_TRUE(e.trace_warning);
  EXPECT_DOUBLE_EQ(e.trace, 3.0);
  EXPECT_DOUBLE_EQ(e.devsym_skw, 0.0);
  EXPECT_GT(e.sym_skw, 0.0);
}

TEST(CurvatureEnergy, TorsionFreeExampleInTheHdRegime) {
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  const Mat3 G = kinematics(*make_torsion_free_example(), Vec3{0.4, 0.1, 0.8}).grad_curl;
  EXPECT_NEAR(w_curv(hd, G).sym_skw, 8.0, 1e-13);
  const Mat3 Gfd = grad_curl_from_hess(fd_hessian(*make_torsion_free_example(), {0.4, 0.6, 0.5}));
  EXPECT_NEAR(w_curv(hd, Gfd).sym_skw, 8.0, 1e-9);
  EXPECT_EQ(w_curv(hd, Mat3{}).sym_skw, 0.0);
}

TEST(Stresses, InvariantsOnSeededFields) {
  for (const char* regime : {"GKMT", "modified", "HD"}) {
    const MaterialParams p = MaterialParams::for_regime(regime, 1.3, 0.7, 0.5);
    for_all(33, 20, [&](Gen& g) {
      const auto f = make_polynomial(g.seed(), 4);
      const StressState s = stresses(p, *f, g.interior());
      EXPECT_TRUE(is_symmetric(s.sigma));
      EXPECT_TRUE(is_skew(s.tau_tilde));
      EXPECT_EQ(s.sigma_total, s.sigma - s.tau_tilde);
      if (p.alpha1 == 0.0) {
        EXPECT_TRUE(is_skew(s.m_tilde)) << regime;
      }
      if (p.alpha2 == 0.0) {
        EXPECT_TRUE(is_symmetric(s.m_tilde)) << regime;
        EXPECT_TRUE(is_traceless(s.m_tilde)) << regime;
      }
      if (p.alpha1 > 0.0 && p.alpha2 > 0.0) {
        EXPECT_FALSE(is_skew(s.m_tilde));
        EXPECT_FALSE(is_symmetric(s.m_tilde));
      }
    });
  }
}

TEST(Stresses, LinearFieldHasOnlyLocalStress) {
  const MaterialParams p;
  const Mat3 m{1, 2, 3, 4, 5, 6, 7, 8, 10};
  const StressState s = stresses(p, *make_affine(m, {}), {0.5, 0.5, 0.5});
  EXPECT_LE(max_abs(s.sigma - (2.0 * sym(m) + 16.0 * Mat3::identity())), 1e-14);
  EXPECT_EQ(max_abs(s.m_tilde), 0.0);
  EXPECT_EQ(max_abs(s.tau_tilde), 0.0);
}

TEST(Stresses, ConformalCoupleStressIsConstantSkewInHdRegime) {
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 0.8);
  for_all(34, 50, [&](Gen& g) {
    const ConformalParams c = g.conformal();
    const auto f = make_conformal(c);
    const Mat3 expect = hd.curvature_modulus() * 2.0 * anti(c.W_axl);
    for (int k = 0; k < 5; ++k) {
      const StressState s = stresses(hd, *f, g.interior());
      EXPECT_LE(max_abs(s.m_tilde - expect), 1e-14);
      EXPECT_LE(max_abs(s.tau_tilde), 1e-15);
    }
  });
}

TEST(Stresses, CouplestressDivergenceMatchesFiniteDifferences) {
  const MaterialParams p = MaterialParams::for_regime("GKMT", 1.0, 1.0, 1.0);
  const auto f = make_polynomial(35, 4);
  const Box box{};
  const SampledFn<Mat3> m = [&](const Vec3& y) { return stresses(p, *f, y).m_tilde; };
  for_all(35, 10, [&](Gen& g) {
    const Vec3 x = g.interior();
    Vec3 div;
    for (int j = 0; j < 3; ++j) {
      const Mat3 d = fd_partial(m, x, {j}, box);
      for (int i = 0; i < 3; ++i) div[i] += d(i, j);
    }
    const Mat3 tau = stresses(p, *f, x).tau_tilde;
    EXPECT_LE(max_abs(0.5 * anti(div) - tau), 1e-9);
  });
}

TEST(Equilibrium, ConformalFieldDivergence) {
  MaterialParams p;
  p.mu = 1.5;
  p.lambda = 0.5;
  const ConformalParams c{{0.4, -0.2, 0.9}, {0.1, 0.2, 0.3}, {1, 0, 0}, 0.3};
  const auto f = make_conformal(c);
  const Vec3 x{0.4, 0.5, 0.6};
  const Vec3 expect = (2.0 * p.mu + 3.0 * p.lambda) * c.W_axl;
  EXPECT_LE(max_abs(equilibrium_residual(p, *f, {}, x) - expect), 1e-9);
  EXPECT_LE(max_abs(total_stress_divergence_exact(p, *f, x) - expect), 1e-14);
}

TEST(Equilibrium, ExactDivergenceMatchesFiniteDifferenceOfTotalStress) {
  for (const char* regime : {"GKMT", "modified", "HD"}) {
    const MaterialParams p = MaterialParams::for_regime(regime, 1.0, 2.0, 0.6);
    for_all(36, 10, [&](Gen& g) {
      const auto f = make_polynomial(g.seed(), 4);
      const Vec3 x = g.interior();
      EXPECT_LE(max_abs(equilibrium_residual(p, *f, {}, x) - total_stress_divergence_exact(p, *f, x)),
                1e-8)
          << regime;
    });
  }
}

TEST(Equilibrium, ManufacturedLoadCancels) {
  const MaterialParams p;
  const auto u = make_polynomial(37, 4);
  const auto load = make_callable("load", [&](const Vec3& y) {
    return -total_stress_divergence_exact(p, *u, y);
  });
  for_all(37, 20, [&](Gen& g) {
    EXPECT_LE(max_abs(equilibrium_residual(p, *u, {load, nullptr}, g.interior())), 1e-6);
  });
  EXPECT_LE(max_abs(equilibrium_residual(p, *make_affine(Mat3{1, 2, 3, 4, 5, 6, 7, 8, 9}, {}),
                                         {}, {0.5, 0.5, 0.5})),
            1e-10);
}

TEST(Equilibrium, LinearInTheField) {
  const MaterialParams p;
  const FieldPtr u = make_polynomial(38, 4), v = make_polynomial(39, 3);
  const auto s = make_sum(1.0, u, 1.0, v);
  const Vec3 x{0.35, 0.55, 0.45};
  EXPECT_LE(max_abs(equilibrium_residual(p, *s, {}, x) - equilibrium_residual(p, *u, {}, x) -
                    equilibrium_residual(p, *v, {}, x)),
            1e-8);
}

TEST(Torsion, SplitOfGradCurl) {
  const auto [chi, om] = torsion_and_mean_curvature(*make_rigid({1, 2, 3}, {}), {0.5, 0.5, 0.5});
  EXPECT_EQ(max_abs(chi), 0.0);
  EXPECT_EQ(max_abs(om), 0.0);
  const ConformalParams c{{0.5, 1.0, -1.0}, {}, {}, 0.0};
  const auto [chi_c, om_c] = torsion_and_mean_curvature(*make_conformal(c), {0.2, 0.3, 0.4});
  EXPECT_LE(max_abs(chi_c), 1e-15);
  EXPECT_LE(max_abs(om_c - 2.0 * anti(c.W_axl)), 1e-15);
}
