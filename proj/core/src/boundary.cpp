#include "costress/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "costress/errors.hpp"
#include "costress/quadrature.hpp"

namespace costress {

namespace {

// d_a P = -(d_a n (x) n + n (x) d_a n)
Mat3 projector_derivative(const Vec3& n, const Vec3& dn) { return -(outer(dn, n) + outer(n, dn)); }

Vec3 column_derivative(const Mat3& grad, const Vec3& dx) { return grad * dx; }

// Surface divergence of the tangential part of v at p.
double tangential_divergence(const Vec3& v, const Mat3& grad_v, const SurfacePoint& p) {
  const Mat3 P = tangential_projector(p.n);
  const Vec3 ds = projector_derivative(p.n, p.ns) * v + P * column_derivative(grad_v, p.xs);
  const Vec3 dt = projector_derivative(p.n, p.nt) * v + P * column_derivative(grad_v, p.xt);
  return dot(ds, p.gs) + dot(dt, p.gt);
}

// d_k m_ij stored as (i, j, k).
ThirdOrder couple_stress_gradient(const MaterialParams& params, const ThirdOrder& dG) {
  ThirdOrder dm;
  for (int k = 0; k < 3; ++k) {
    Mat3 g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = dG(i, j, k);
    const Mat3 m = couple_stress(params, g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dm(i, j, k) = m(i, j);
  }
  return dm;
}

Mat3 along(const ThirdOrder& d, const Vec3& dx) { return apply_E_v(d, dx); }

RefinementStudy refine(const std::vector<int>& orders, double floor,
                       const std::function<SurfaceCheck(int)>& check) {
  RefinementStudy r;
  for (int q : orders) {
    r.levels.push_back(check(q));
    const std::size_t n = r.levels.size();
    if (n > 1) {
      const double prev = r.levels[n - 2].gap, cur = r.levels[n - 1].gap;
      if (!(cur < prev || cur <= floor)) r.monotone = false;
    }
  }
  return r;
}

}  // namespace

SurfaceCheck surface_divergence_check(const DisplacementField& v, const SurfacePatch& patch,
                                      int order) {
  CompensatedSum lhs, rhs;
  for (const auto& q : patch.quadrature(order)) {
    const Jet j = v.jet(q.p.x, 1);
    lhs.add(q.weight * tangential_divergence(j.value, j.grad, q.p));
  }
  for (const auto& e : patch.edge_quadrature(order)) rhs.add(e.ds * dot(v.value(e.p.x), e.nu));
  return {order, lhs.value(), rhs.value(), std::abs(lhs.value() - rhs.value())};
}

SurfaceCheck stokes_flux_check(const DisplacementField& u, const SurfacePatch& patch, int order) {
  CompensatedSum flux, circ;
  for (const auto& q : patch.quadrature(order)) {
    const Jet j = u.jet(q.p.x, 1);
    flux.add(q.weight * dot(curl_from_grad(j.grad), q.p.n));
  }
  for (const auto& e : patch.edge_quadrature(order)) circ.add(e.ds * dot(u.value(e.p.x), e.tau));
  return {order, flux.value(), circ.value(), std::abs(flux.value() - circ.value())};
}

RefinementStudy refine_surface_divergence(const DisplacementField& v, const SurfacePatch& patch,
                                          const std::vector<int>& orders, double floor) {
  return refine(orders, floor, [&](int q) { return surface_divergence_check(v, patch, q); });
}

RefinementStudy refine_stokes_flux(const DisplacementField& u, const SurfacePatch& patch,
                                   const std::vector<int>& orders, double floor) {
  return refine(orders, floor, [&](int q) { return stokes_flux_check(u, patch, q); });
}

MomentGeometry moment_geometry(const MaterialParams& params, const Jet& jet,
                               const SurfacePoint& p) {
  if (jet.order < 3) throw InvalidArgument("moment_geometry: jet of order 3 required");
  MomentGeometry g;
  const Vec3& n = p.n;
  g.P = tangential_projector(n);
  g.m_tilde = couple_stress(params, grad_curl_from_hess(jet.hess));
  g.mn = g.m_tilde * n;
  g.phi = dot(g.mn, n);
  const Vec3 v = g.P * g.mn;
  g.B = anti(v);

  const ThirdOrder dm = couple_stress_gradient(params, grad_grad_curl_from_third(jet.third));
  const Vec3* dx[2] = {&p.xs, &p.xt};
  const Vec3* dn[2] = {&p.ns, &p.nt};
  const Vec3* gup[2] = {&p.gs, &p.gt};

  for (int a = 0; a < 2; ++a) {
    const Mat3 dm_a = along(dm, *dx[a]);
    const Mat3 dP = projector_derivative(n, *dn[a]);
    const double dphi = dot(dm_a * n, n) + dot(g.m_tilde * *dn[a], n) + dot(g.mn, *dn[a]);
    g.grad_s_phi += dphi * *gup[a];

    const Vec3 dv = dP * g.mn + g.P * (dm_a * n) + g.P * (g.m_tilde * *dn[a]);
    const Mat3 dBP = anti(dv) * g.P + g.B * dP;
    g.div_BP += dBP * *gup[a];
  }
  return g;
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::Classical:
      return "classical";
    case Formulation::Complete:
      return "complete";
    case Formulation::HD:
      return "HD";
  }
  return "unknown";
}

TractionSet classical_tractions(const MaterialParams& params, const DisplacementField& field,
                                const SurfacePoint& p) {
  const Jet j = field.jet(p.x, 3);
  const StressState s = stresses(params, j);
  const MomentGeometry g = moment_geometry(params, j, p);
  TractionSet t;
  t.formulation = Formulation::Classical;
  t.t_force = s.sigma_total * p.n - 0.5 * cross(p.n, g.grad_s_phi);
  t.g_double = g.P * g.mn;
  return t;
}

TractionSet complete_tractions(const MaterialParams& params, const DisplacementField& field,
                               const SurfacePoint& p) {
  const Jet j = field.jet(p.x, 3);
  const StressState s = stresses(params, j);
  const MomentGeometry g = moment_geometry(params, j, p);
  TractionSet t;
  t.formulation = Formulation::Complete;
  t.t_force = s.sigma_total * p.n - 0.5 * cross(p.n, g.grad_s_phi) - 0.5 * g.div_BP;
  t.g_double = g.P * (g.B * p.n);
  return t;
}

TractionSet complete_tractions(const MaterialParams& params, const DisplacementField& field,
                               const SurfacePatch& patch, const EdgePoint& e) {
  TractionSet t = complete_tractions(params, field, e.p);
  t.pi_jump = edge_jump(params, field, patch, e).jump;
  t.has_jump = true;
  return t;
}

TractionSet hd_tractions(const MaterialParams& params, const DisplacementField& field,
                         const SurfacePoint& p, bool printed_plus_sign) {
  const Jet j = field.jet(p.x, 3);
  const StressState s = stresses(params, j);
  const Mat3 P = tangential_projector(p.n);
  TractionSet t;
  t.formulation = Formulation::HD;
  const Mat3 total = printed_plus_sign ? s.sigma + s.tau_tilde : s.sigma_total;
  t.t_force = total * p.n;
  t.g_double = P * (s.m_tilde * p.n);
  return t;
}

EdgeJump edge_jump(const MaterialParams& params, const DisplacementField& field,
                   const SurfacePatch& patch, const EdgePoint& e, double eps_fraction) {
  EdgeJump r;
  r.eps = eps_fraction * patch.diameter();
  auto conormal_moment = [&](double offset) {
    const SurfacePoint p = patch.at(e.p.s + offset * e.dir_s, e.p.t + offset * e.dir_t);
    const MomentGeometry g = moment_geometry(params, field.jet(p.x, 3), p);
    return g.B * e.nu;
  };
  auto jump_at = [&](double h) { return conormal_moment(-h) - conormal_moment(h); };
  r.at_eps = jump_at(r.eps);
  r.at_2eps = jump_at(2.0 * r.eps);
  r.jump = 2.0 * r.at_eps - r.at_2eps;
  r.spread = norm(2.0 * r.at_eps - 3.0 * r.at_2eps + jump_at(4.0 * r.eps));
  const double scale = std::max(1.0, norm(conormal_moment(0.0)));
  r.converged = r.spread <= 1e-6 * scale;
  return r;
}

WorkIdentity boundary_work_identity(const MaterialParams& params, const DisplacementField& u,
                                    const DisplacementField& du, const SurfacePatch& patch,
                                    int order) {
  CompensatedSum direct;
  CompensatedSum t_force, t_phi, t_tang, t_normal, e_conormal, e_phi;
  for (const auto& q : patch.quadrature(order)) {
    const Jet ju = u.jet(q.p.x, 3);
    const Jet jd = du.jet(q.p.x, 1);
    const StressState s = stresses(params, ju);
    const MomentGeometry g = moment_geometry(params, ju, q.p);
    const Vec3& n = q.p.n;
    const double w = q.weight;

    const Vec3 force = s.sigma_total * n;
    const Vec3 rot = axl(skw(jd.grad));
    direct.add(-w * dot(force, jd.value));
    direct.add(-w * dot(g.mn, rot));

    t_force.add(-w * dot(force, jd.value));
    t_phi.add(0.5 * w * dot(cross(n, g.grad_s_phi), jd.value));
    t_tang.add(0.5 * w * dot(g.div_BP, jd.value));
    t_normal.add(-0.5 * w * dot(g.P * (g.B * n), jd.grad * n));
  }
  for (const auto& e : patch.edge_quadrature(order)) {
    const MomentGeometry g = moment_geometry(params, u.jet(e.p.x, 3), e.p);
    const Vec3 d = du.value(e.p.x);
    e_conormal.add(-0.5 * e.ds * dot(g.B * e.nu, d));
    e_phi.add(-0.5 * e.ds * g.phi * dot(d, e.tau));
  }

  WorkIdentity r;
  r.order = order;
  r.direct = direct.value();
  r.terms = {{"force", t_force.value()},
             {"normal_moment_gradient", t_phi.value()},
             {"tangential_divergence", t_tang.value()},
             {"normal_derivative", t_normal.value()},
             {"edge_conormal", e_conormal.value()},
             {"edge_normal_moment", e_phi.value()}};
  CompensatedSum total;
  for (const auto& t : r.terms) total.add(t.value);
  r.decomposed = total.value();
  r.gap = std::abs(r.direct - r.decomposed);
  return r;
}

HdPostulateReport hd_postulate_report(const MaterialParams& params, const DisplacementField& field,
                                      const SurfacePatch& patch, int order, double floor,
                                      double margin) {
  if (params.alpha1 != 0.0)
    throw InvalidArgument("hd_postulate_report: requires alpha1 = 0 (HD regime)");
  HdPostulateReport r;
  CompensatedSum sq;
  for (const auto& q : patch.quadrature(order)) {
    const MomentGeometry g = moment_geometry(params, field.jet(q.p.x, 3), q.p);
    r.normal_moment_sup = std::max(r.normal_moment_sup, std::abs(g.phi));
    sq.add(q.weight * dot(g.div_BP, g.div_BP));
  }
  r.residual_term_norm = std::sqrt(std::max(0.0, sq.value()));
  r.ratio = r.residual_term_norm / std::max(r.normal_moment_sup, floor);
  r.refuted = r.normal_moment_sup <= floor && r.ratio >= margin;
  return r;
}

}  // namespace costress
