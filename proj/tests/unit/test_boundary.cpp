#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "costress/boundary.hpp"
#include "costress/errors.hpp"
#include "generators.hpp"

using namespace costress;
using costress::testing::for_all;
using costress::testing::Gen;
using costress::testing::max_abs;

namespace {

const double kPi = std::numbers::pi;

std::vector<PatchPtr> sample_patches() {
  return {std::make_shared<BoxFace>(Box{}, 2, true), std::make_shared<BoxFace>(Box{}, 0, false),
          std::make_shared<BoxFace>(Box{{-1, 0, 0}, {1, 2, 0.5}}, 1, true), default_hemisphere(),
          std::make_shared<SphericalCap>(Vec3{0.2, 0.1, -0.3}, 0.7, 1.0)};
}

}  // namespace

TEST(Surface, FrameAndQuadratureGeometry) {
  for (const auto& patch : sample_patches()) {
    SCOPED_TRACE(patch->kind());
    double area = 0.0;
    for (const auto& q : patch->quadrature(12)) {
      const SurfacePoint& p = q.p;
      EXPECT_NEAR(norm(p.n), 1.0, 1e-14);
      EXPECT_NEAR(dot(p.n, p.xs), 0.0, 1e-14);
      EXPECT_NEAR(dot(p.n, p.xt), 0.0, 1e-14);
      EXPECT_NEAR(dot(p.gs, p.xs), 1.0, 1e-13);
      EXPECT_NEAR(dot(p.gs, p.xt), 0.0, 1e-13);
      EXPECT_NEAR(dot(p.gt, p.xt), 1.0, 1e-13);
      area += q.weight;
    }
    EXPECT_NEAR(area, patch->area(), 1e-12);
    double length = 0.0;
    for (const auto& e : patch->edge_quadrature(12)) {
      EXPECT_NEAR(norm(e.nu), 1.0, 1e-14);
      EXPECT_NEAR(dot(e.nu, e.p.n), 0.0, 1e-14);
      EXPECT_LE(max_abs(e.tau - cross(e.p.n, e.nu)), 1e-15);
      length += e.ds;
    }
    if (const auto* cap = dynamic_cast<const SphericalCap*>(patch.get())) {
      EXPECT_NEAR(length, 2 * kPi * cap->radius() * std::sin(cap->theta_max()), 1e-12);
    }
  }
}

TEST(Surface, HemisphereNormalPointsOutward) {
  const auto h = default_hemisphere();
  EXPECT_NEAR(h->area(), 2 * kPi * 0.16, 1e-15);
  const SurfacePoint p = h->at(0.3, 1.2);
  EXPECT_LE(max_abs(p.n - (1.0 / 0.4) * (p.x - h->center())), 1e-14);
  EXPECT_THROW(SphericalCap({0, 0, 0}, 1.0, 4.0), InvalidArgument);
}

TEST(SurfaceDivergence, NormalFieldProjectsAway) {
  const auto h = default_hemisphere();
  const auto n = make_affine(2.5 * Mat3::identity(), -2.5 * h->center());
  const SurfaceCheck c = surface_divergence_check(*n, *h);
  EXPECT_NEAR(c.lhs, 0.0, 1e-14);
}

TEST(SurfaceDivergence, ConstantFieldOnFlatFaceCancels) {
  const BoxFace face(Box{}, 1, false);
  const SurfaceCheck c = surface_divergence_check(*make_constant({0.3, -1.0, 2.0}), face);
  EXPECT_NEAR(c.lhs, 0.0, 1e-15);
  EXPECT_NEAR(c.rhs, 0.0, 1e-14);
}

TEST(SurfaceDivergence, SeededPolynomialsOnAllPatches) {
  for_all(41, 10, [](Gen& g) {
    const auto v = make_polynomial(g.seed(), 4);
    for (const auto& patch : sample_patches()) {
      const RefinementStudy r = refine_surface_divergence(*v, *patch, {4, 8, 16});
      EXPECT_LE(r.levels.back().gap, 1e-6) << patch->kind();
      EXPECT_TRUE(r.monotone) << patch->kind();
    }
  });
}

TEST(SurfaceDivergence, FlatFaceExactOnceOrderExceedsDegree) {
  const auto v = make_polynomial(42, 5);
  const BoxFace face(Box{}, 0, true);
  EXPECT_LE(surface_divergence_check(*v, face, 4).gap, 1e-12);
}

TEST(Stokes, SwirlFieldThroughHemisphere) {
  const auto u = make_affine(anti({0, 0, 1}), {});  // (-y, x, 0)
  for (double R : {0.4, 1.0, 2.5}) {
    const SphericalCap cap({0.1, 0.2, 0.3}, R, kPi / 2);
    const SurfaceCheck c = stokes_flux_check(*u, cap);
    EXPECT_NEAR(c.lhs, 2 * kPi * R * R, 1e-12 * R * R);
    EXPECT_NEAR(c.rhs, 2 * kPi * R * R, 1e-12 * R * R);
  }
}

TEST(Stokes, ConstantAndPolynomialFields) {
  for (const auto& patch : sample_patches()) {
    const SurfaceCheck c = stokes_flux_check(*make_constant({1, 2, 3}), *patch);
    EXPECT_NEAR(c.lhs, 0.0, 1e-15);
    EXPECT_NEAR(c.rhs, 0.0, 1e-13);
    const SurfaceCheck p = stokes_flux_check(*make_polynomial(43, 4), *patch);
    EXPECT_LE(p.gap, 1e-6);
  }
}

TEST(Tractions, ReduceToClassicalElasticityWithoutCoupleStress) {
  MaterialParams p;
  p.L_c = 0.0;
  const auto u = make_polynomial(44, 4);
  for (const auto& patch : sample_patches()) {
    for (const auto& q : patch->quadrature(3)) {
      const Vec3 sn = stresses(p, *u, q.p.x).sigma * q.p.n;
      EXPECT_LE(max_abs(classical_tractions(p, *u, q.p).t_force - sn), 1e-13);
      EXPECT_LE(max_abs(classical_tractions(p, *u, q.p).g_double), 0.0);
      EXPECT_LE(max_abs(complete_tractions(p, *u, q.p).t_force - sn), 1e-13);
      EXPECT_LE(max_abs(hd_tractions(p, *u, q.p).t_force - sn), 1e-13);
    }
    for (const auto& e : patch->edge_quadrature(3))
      EXPECT_EQ(max_abs(complete_tractions(p, *u, *patch, e).pi_jump), 0.0);
  }
}

TEST(Tractions, HdRegimeNormalMomentVanishes) {
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  for_all(45, 10, [&](Gen& g) {
    const auto u = make_polynomial(g.seed(), 4);
    for (const auto& patch : sample_patches()) {
      for (const auto& q : patch->quadrature(4)) {
        const MomentGeometry m = moment_geometry(hd, u->jet(q.p.x, 3), q.p);
        EXPECT_LE(std::abs(m.phi), 1e-14 * std::max(1.0, norm(m.m_tilde)));
        const TractionSet t = hd_tractions(hd, *u, q.p);
        EXPECT_LE(max_abs(t.g_double - m.mn), 1e-13 * std::max(1.0, norm(m.m_tilde)));
        // With phi = 0 the classical correction term drops out.
        const Vec3 plain = stresses(hd, *u, q.p.x).sigma_total * q.p.n;
        EXPECT_LE(max_abs(classical_tractions(hd, *u, q.p).t_force - plain), 1e-11);
      }
    }
  });
}

TEST(Tractions, DoubleForceIsTangential) {
  const MaterialParams p;
  const auto u = make_polynomial(46, 4);
  for (const auto& patch : sample_patches())
    for (const auto& q : patch->quadrature(4)) {
      EXPECT_NEAR(dot(classical_tractions(p, *u, q.p).g_double, q.p.n), 0.0, 1e-12);
      EXPECT_NEAR(dot(complete_tractions(p, *u, q.p).g_double, q.p.n), 0.0, 1e-12);
    }
}

TEST(Tractions, PrintedPlusSignDiffersOnlyThroughTau) {
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  const auto u = make_polynomial(47, 4);
  const SurfacePoint p = default_hemisphere()->at(0.7, 2.0);
  const StressState s = stresses(hd, *u, p.x);
  const Vec3 diff = hd_tractions(hd, *u, p, true).t_force - hd_tractions(hd, *u, p).t_force;
  EXPECT_LE(max_abs(diff - 2.0 * (s.tau_tilde * p.n)), 1e-12);
}

TEST(EdgeJump, SmoothFieldHasNoJump) {
  const MaterialParams p;
  const auto u = make_polynomial(48, 4);
  for (const auto& patch : sample_patches())
    for (const auto& e : patch->edge_quadrature(6)) {
      const EdgeJump j = edge_jump(p, *u, *patch, e);
      EXPECT_LE(norm(j.jump), 1e-8) << patch->kind();
      EXPECT_TRUE(j.converged);
    }
}

TEST(WorkIdentity, HoldsForAllRegimesAndPatches) {
  for (const char* regime : {"GKMT", "modified", "HD"}) {
    const MaterialParams p = MaterialParams::for_regime(regime, 1.0, 1.5, 0.8);
    for_all(49, 3, [&](Gen& g) {
      const auto u = make_polynomial(g.seed(), 4), du = make_polynomial(g.seed(), 4);
      for (const auto& patch : sample_patches()) {
        const WorkIdentity w = boundary_work_identity(p, *u, *du, *patch);
        EXPECT_LE(w.gap, 1e-6 * std::max(1.0, std::abs(w.direct))) << regime << " " << patch->kind();
        double sum = 0.0;
        for (const auto& t : w.terms) sum += t.value;
        EXPECT_NEAR(sum, w.decomposed, 1e-12 * std::max(1.0, std::abs(sum)));
        EXPECT_EQ(w.terms.size(), 6u);
      }
    });
  }
}

TEST(WorkIdentity, Reductions) {
  const auto u = make_polynomial(50, 4), du = make_polynomial(51, 4);
  const auto h = default_hemisphere();
  const WorkIdentity zero = boundary_work_identity(MaterialParams{}, *u, *make_zero(), *h);
  EXPECT_EQ(zero.direct, 0.0);
  EXPECT_EQ(zero.decomposed, 0.0);
  MaterialParams classical;
  classical.L_c = 0.0;
  const WorkIdentity w = boundary_work_identity(classical, *u, *du, *h);
  EXPECT_EQ(w.terms.front().name, "force");
  EXPECT_NEAR(w.direct, w.terms.front().value, 1e-13);
  for (std::size_t i = 1; i < w.terms.size(); ++i) EXPECT_EQ(w.terms[i].value, 0.0);
}

TEST(HdPostulate, ConformalFieldOnHemisphere) {
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  const auto phi = make_conformal({{2.0, 0.0, 0.0}, {}, {}, 0.0});
  const HdPostulateReport r = hd_postulate_report(hd, *phi, *default_hemisphere());
  EXPECT_LE(r.normal_moment_sup, 1e-14);
  EXPECT_TRUE(r.refuted);
  EXPECT_GE(r.ratio, 1e3);
  // Regression value of the residual term norm at quadrature order 16.
  EXPECT_NEAR(r.residual_term_norm, 14.179630807244131, 1e-9);
}

TEST(HdPostulate, NoCoupleStressGivesNothingToReport) {
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 0.0);
  const HdPostulateReport r =
      hd_postulate_report(hd, *make_polynomial(52, 4), *default_hemisphere());
  EXPECT_EQ(r.normal_moment_sup, 0.0);
  EXPECT_EQ(r.residual_term_norm, 0.0);
  EXPECT_FALSE(r.refuted);
}

TEST(HdPostulate, RequiresHdRegime) {
  EXPECT_THROW(hd_postulate_report(MaterialParams{}, *make_zero(), *default_hemisphere()),
               InvalidArgument);
}
