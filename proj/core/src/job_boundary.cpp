#include <algorithm>
#include <cmath>
#include <numbers>

#include "costress/boundary.hpp"
#include "costress/errors.hpp"
#include "job_commands.hpp"

namespace costress::jobs {

namespace {

const std::vector<std::string> kRegimes = {"GKMT", "modified", "HD"};

std::vector<PatchPtr> patches_of(const JobConfig& cfg, bool hemisphere_only) {
  std::vector<PatchPtr> out;
  for (const auto& j : cfg.patches) out.push_back(patch_from_json(j));
  if (out.empty()) {
    if (!hemisphere_only) out.push_back(std::make_shared<BoxFace>(Box{}, 2, true));
    out.push_back(default_hemisphere());
  }
  return out;
}

int order_of(const JobConfig& cfg) {
  return cfg.quadrature_order > 0 ? cfg.quadrature_order : kDefaultQuadratureOrder;
}

std::string patch_label(std::size_t i, const SurfacePatch& p) {
  return p.kind() + "#" + std::to_string(i);
}

void push_vec(std::vector<std::string>& row, const Vec3& v) {
  for (int i = 0; i < 3; ++i) row.push_back(num(v[i]));
}

// Flux of curl u = (0, 0, 2) for u = (-x2, x1, 0).
double analytic_swirl_flux(const SurfacePatch& patch) {
  if (const auto* cap = dynamic_cast<const SphericalCap*>(&patch)) {
    const double r = cap->radius() * std::sin(cap->theta_max());
    return 2.0 * std::numbers::pi * r * r;
  }
  const auto& face = dynamic_cast<const BoxFace&>(patch);
  if (face.axis() != 2) return 0.0;
  return (face.upper() ? 2.0 : -2.0) * face.area();
}

}  // namespace

void bc_audit(const JobConfig& cfg, Recorder& rec) {
  const std::uint64_t seed = *cfg.seed;
  const int q = order_of(cfg);
  rec.set_quadrature_order(q);
  const auto patches = patches_of(cfg, false);
  const MaterialParams base = cfg.material_given ? cfg.material : MaterialParams{};
  const double ts = rec.tol("surface"), tw = rec.tol("work"), tc = rec.tol("closed_form");
  const double floor = rec.tol("refinement_floor");
  std::vector<int> orders = cfg.refinement_orders;
  if (std::find(orders.begin(), orders.end(), q) == orders.end()) orders.push_back(q);
  std::sort(orders.begin(), orders.end());

  Table refinement{"surface_refinement",
                   {"patch", "check", "order", "lhs", "rhs", "gap"},
                   {}};
  Table terms{"term_report",
              {"patch", "regime", "pair", "order", "direct", "decomposed", "gap", "force",
               "normal_moment_gradient", "tangential_divergence", "normal_derivative",
               "edge_conormal", "edge_normal_moment"},
              {}};

  const auto swirl = make_affine(anti(Vec3{0.0, 0.0, 1.0}), Vec3{});

  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const SurfacePatch& patch = *patches[pi];
    const std::string label = patch_label(pi, patch);

    const auto v = make_polynomial(derive_seed(seed, 10, pi), cfg.degree);
    const RefinementStudy sd = refine_surface_divergence(*v, patch, orders, floor);
    const RefinementStudy sf = refine_stokes_flux(*v, patch, orders, floor);
    double gap_sd = 0, gap_sf = 0;
    for (const auto& l : sd.levels) {
      refinement.rows.push_back({label, "surface_divergence", std::to_string(l.order), num(l.lhs),
                                 num(l.rhs), num(l.gap)});
      if (l.order == q) gap_sd = l.gap;
    }
    for (const auto& l : sf.levels) {
      refinement.rows.push_back({label, "stokes_flux", std::to_string(l.order), num(l.lhs),
                                 num(l.rhs), num(l.gap)});
      if (l.order == q) gap_sf = l.gap;
    }
    rec.le(label + ":surface_divergence_gap", "surface_divergence_check", gap_sd, ts);
    rec.holds(label + ":surface_divergence_monotone", "surface_divergence_check", sd.monotone);
    rec.le(label + ":stokes_flux_gap", "stokes_flux_check", gap_sf, ts);
    rec.holds(label + ":stokes_flux_monotone", "stokes_flux_check", sf.monotone);

    const SurfaceCheck sw = stokes_flux_check(*swirl, patch, q);
    const double exact = analytic_swirl_flux(patch);
    rec.le(label + ":swirl_flux_analytic", "stokes_flux_check", std::abs(sw.lhs - exact), ts);
    rec.le(label + ":swirl_circulation_analytic", "stokes_flux_check", std::abs(sw.rhs - exact),
           ts);
    const SurfaceCheck sc = stokes_flux_check(*make_constant(Vec3{0.3, -0.2, 0.9}), patch, q);
    rec.le(label + ":constant_field_flux", "stokes_flux_check",
           std::abs(sc.lhs) + std::abs(sc.rhs), tc);

    // A field whose tangential projection vanishes, or a constant on a flat face.
    FieldPtr trivial;
    if (const auto* cap = dynamic_cast<const SphericalCap*>(&patch))
      trivial = make_affine((1.0 / cap->radius()) * Mat3::identity(),
                            (-1.0 / cap->radius()) * cap->center());
    else
      trivial = make_constant(Vec3{0.7, -0.4, 0.25});
    const SurfaceCheck tv = surface_divergence_check(*trivial, patch, q);
    if (dynamic_cast<const SphericalCap*>(&patch))
      rec.le(label + ":normal_field_projects_away", "surface_divergence_check",
             std::abs(tv.lhs), tc);
    else
      rec.le(label + ":constant_field_cancels", "surface_divergence_check",
             std::abs(tv.lhs) + std::abs(tv.rhs), tc);

    // Work identity over regimes and seeded pairs.
    for (std::size_t ri = 0; ri < kRegimes.size(); ++ri) {
      const MaterialParams p =
          MaterialParams::for_regime(kRegimes[ri], base.mu, base.lambda, base.L_c);
      double worst = 0;
      for (int k = 0; k < cfg.pairs; ++k) {
        const auto u = make_polynomial(derive_seed(seed, 11, 1000 * pi + k), cfg.degree);
        const auto du = make_polynomial(derive_seed(seed, 12, 1000 * pi + k), cfg.degree);
        const WorkIdentity w = boundary_work_identity(p, *u, *du, patch, q);
        worst = std::max(worst, w.gap);
        std::vector<std::string> row{label, kRegimes[ri], std::to_string(k), std::to_string(q),
                                     num(w.direct), num(w.decomposed), num(w.gap)};
        for (const auto& term : w.terms) row.push_back(num(term.value));
        terms.rows.push_back(std::move(row));
      }
      rec.le(label + ":" + kRegimes[ri] + ":work_identity_gap", "boundary_work_identity", worst,
             tw);
    }

    // Reductions.
    const auto u = make_polynomial(derive_seed(seed, 13, pi), cfg.degree);
    const WorkIdentity zero = boundary_work_identity(base, *u, *make_zero(), patch, q);
    rec.le(label + ":zero_variation_work", "boundary_work_identity",
           std::abs(zero.direct) + std::abs(zero.decomposed), tc);
    MaterialParams classical = base;
    classical.L_c = 0.0;
    const auto du = make_polynomial(derive_seed(seed, 14, pi), cfg.degree);
    const WorkIdentity cl = boundary_work_identity(classical, *u, *du, patch, q);
    double force = 0;
    for (const auto& term : cl.terms)
      if (term.name == "force") force = term.value;
    rec.le(label + ":classical_work_is_force_work", "boundary_work_identity",
           std::abs(cl.direct - force) + std::abs(cl.decomposed - force), tw);

    // Tractions at quadrature points.
    const MaterialParams hd = MaterialParams::for_regime("HD", base.mu, base.lambda, base.L_c);
    double g_tan = 0, nm = 0, hd_g = 0, cl_red = 0;
    for (const auto& qp : patch.quadrature(q)) {
      const SurfacePoint& sp = qp.p;
      const TractionSet tc_cl = classical_tractions(base, *u, sp);
      const TractionSet tc_co = complete_tractions(base, *u, sp);
      const TractionSet th = hd_tractions(hd, *u, sp);
      const Mat3 m = stresses(hd, *u, sp.x).m_tilde;
      const double scale = std::max(1.0, norm(m));
      g_tan = std::max({g_tan, std::abs(dot(tc_cl.g_double, sp.n)) / std::max(1.0, norm(tc_cl.g_double)),
                        std::abs(dot(tc_co.g_double, sp.n)) / std::max(1.0, norm(tc_co.g_double))});
      nm = std::max(nm, std::abs(dot(m * sp.n, sp.n)) / scale);
      hd_g = std::max(hd_g, norm(th.g_double - m * sp.n) / scale);
      const Mat3 sigma = stresses(classical, *u, sp.x).sigma;
      const double s_scale = std::max(1.0, norm(sigma));
      cl_red = std::max({cl_red,
                         norm(classical_tractions(classical, *u, sp).t_force - sigma * sp.n) / s_scale,
                         norm(complete_tractions(classical, *u, sp).t_force - sigma * sp.n) / s_scale,
                         norm(hd_tractions(classical, *u, sp).t_force - sigma * sp.n) / s_scale,
                         norm(classical_tractions(classical, *u, sp).g_double) / s_scale});
    }
    rec.le(label + ":double_force_tangential", "complete_tractions", g_tan, tc);
    rec.le(label + ":hd_normal_moment_vanishes", "hd_tractions", nm, rec.tol("normal_moment"));
    rec.le(label + ":hd_double_force_is_moment", "hd_tractions", hd_g, tc);
    rec.le(label + ":tractions_without_couple_stress", "classical_tractions", cl_red, tc);

    // Independent evaluation of the classical force traction on flat faces:
    // surface gradient of the normal moment from finite differences of m_tilde.
    if (const auto* face = dynamic_cast<const BoxFace*>(&patch)) {
      const Box wide{Vec3{-10, -10, -10}, Vec3{10, 10, 10}};
      double worst = 0;
      const auto quad = patch.quadrature(4);
      for (const auto& qp : quad) {
        const SurfacePoint& sp = qp.p;
        const SampledFn<Mat3> mfield = [&](const Vec3& y) {
          return stresses(base, *u, y).m_tilde;
        };
        Vec3 grad_phi;
        for (int a = 0; a < 3; ++a) {
          if (a == face->axis()) continue;
          const Mat3 dm = fd_partial(mfield, sp.x, {a}, wide);
          grad_phi[a] = dot(dm * sp.n, sp.n);
        }
        const Vec3 expect = stresses(base, *u, sp.x).sigma_total * sp.n -
                            0.5 * cross(sp.n, grad_phi);
        const Vec3 got = classical_tractions(base, *u, sp).t_force;
        worst = std::max(worst, norm(got - expect) / std::max(1.0, norm(expect)));
      }
      rec.le(label + ":classical_traction_independent", "classical_tractions", worst,
             rec.tol("fd"));
    }

    // Edge jumps of a smooth field across the patch edge, and no jump without couple stress.
    double jump = 0, jump_cl = 0;
    bool converged = true;
    for (const auto& e : patch.edge_quadrature(q)) {
      const EdgeJump j = edge_jump(base, *u, patch, e);
      jump = std::max(jump, norm(j.jump));
      converged = converged && j.converged;
      jump_cl = std::max(jump_cl, norm(complete_tractions(classical, *u, patch, e).pi_jump));
    }
    rec.le(label + ":edge_jump_smooth_field", "complete_tractions", jump, rec.tol("jump"));
    rec.holds(label + ":edge_jump_converged", "complete_tractions", converged);
    rec.le(label + ":edge_jump_without_couple_stress", "complete_tractions", jump_cl, tc);
  }
  rec.table(std::move(refinement));
  rec.table(std::move(terms));
}

void hd_postulate(const JobConfig& cfg, Recorder& rec) {
  const int q = order_of(cfg);
  rec.set_quadrature_order(q);
  const MaterialParams p =
      cfg.material_given ? cfg.material : MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  const FieldPtr field =
      cfg.field.is_null() ? FieldPtr(make_torsion_free_example()) : field_from_json(cfg.field);
  const auto patches = patches_of(cfg, true);
  const double floor = rec.tol("normal_moment"), margin = rec.tol("postulate_margin");

  Table summary{"hd_postulate",
                {"patch", "order", "normal_moment_sup", "residual_term_norm", "ratio", "refuted"},
                {}};
  Table variants{"traction_variants",
                 {"patch", "point", "x_1", "x_2", "x_3", "hd_1", "hd_2", "hd_3", "hd_alt_1",
                  "hd_alt_2", "hd_alt_3", "classical_1", "classical_2", "classical_3",
                  "complete_1", "complete_2", "complete_3", "double_force_1", "double_force_2",
                  "double_force_3"},
                 {}};
  for (std::size_t pi = 0; pi < patches.size(); ++pi) {
    const SurfacePatch& patch = *patches[pi];
    const std::string label = patch_label(pi, patch);
    const HdPostulateReport r = hd_postulate_report(p, *field, patch, q, floor, margin);
    summary.rows.push_back({label, std::to_string(q), num(r.normal_moment_sup),
                            num(r.residual_term_norm), num(r.ratio), r.refuted ? "true" : "false"});
    rec.le(label + ":normal_moment_sup", "hd_postulate_report", r.normal_moment_sup, floor);
    rec.ge(label + ":residual_over_normal_moment", "hd_postulate_report", r.ratio, margin);
    rec.holds(label + ":postulate_refuted", "hd_postulate_report", r.refuted);

    const auto quad = patch.quadrature(q);
    const std::size_t stride = std::max<std::size_t>(1, quad.size() / 16);
    for (std::size_t k = 0; k < quad.size(); k += stride) {
      const SurfacePoint& sp = quad[k].p;
      const TractionSet hd = hd_tractions(p, *field, sp, cfg.hd_plus_sign);
      const TractionSet alt = hd_tractions(p, *field, sp, !cfg.hd_plus_sign);
      std::vector<std::string> row{label, std::to_string(k)};
      push_vec(row, sp.x);
      push_vec(row, hd.t_force);
      push_vec(row, alt.t_force);
      push_vec(row, classical_tractions(p, *field, sp).t_force);
      push_vec(row, complete_tractions(p, *field, sp).t_force);
      push_vec(row, hd.g_double);
      variants.rows.push_back(std::move(row));
    }
  }
  if (cfg.hd_plus_sign) rec.note("hd columns use (sigma + tau) n; hd_alt uses (sigma - tau) n");
  else rec.note("hd columns use (sigma - tau) n; hd_alt uses (sigma + tau) n");
  rec.table(std::move(summary));
  rec.table(std::move(variants));
}

}  // namespace costress::jobs
