#include <algorithm>
#include <cmath>
#include <limits>

#include "costress/constitutive.hpp"
#include "costress/errors.hpp"
#include "costress/index_loops.hpp"
#include "job_commands.hpp"

namespace costress::jobs {

namespace {

double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }
double dist(const Mat3& a, const Mat3& b) { return norm(a - b); }
double dist(const ThirdOrder& a, const ThirdOrder& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 27; ++i) s += (a.c[i] - b.c[i]) * (a.c[i] - b.c[i]);
  return std::sqrt(s);
}

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

ThirdOrder symmetric_hessian(SeededRng& rng) {
  ThirdOrder h = rng.third_order(-1.0, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) h(i, k, j) = h(i, j, k);
  return h;
}

MaterialParams base_material(const JobConfig& cfg) {
  return cfg.material_given ? cfg.material : MaterialParams{};
}

const std::vector<std::string> kRegimes = {"GKMT", "modified", "HD"};

}  // namespace

void verify_operators(const JobConfig& cfg, Recorder& rec) {
  SeededRng rng(*cfg.seed);
  double e_axl = 0, e_anti = 0, e_sum = 0, e_orth = 0, e_idem = 0, e_norm = 0, e_cross = 0;
  double e_loop_ex = 0, e_loop_ev = 0, e_loop_xv = 0, e_loop_anti = 0, e_loop_axl = 0,
         e_loop_cross = 0;
  double e_proj_n = 0, e_proj_sq = 0, e_proj_sym = 0, e_proj_tr = 0;
  double e_split = 0;
  int accepted_nonskew = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    const Mat3 X = rng.mat3(-1.0, 1.0);
    const Vec3 v = rng.vec3(-1.0, 1.0);
    const Vec3 w = rng.vec3(-1.0, 1.0);
    const ThirdOrder E = rng.third_order(-1.0, 1.0);
    const Vec3 n = rng.unit_vec3();

    e_axl = std::max(e_axl, dist(axl(anti(v)), v));
    e_anti = std::max(e_anti, dist(anti(axl(skw(X))), skw(X)));

    const CartanParts c = cartan_decompose(X);
    e_sum = std::max(e_sum, dist(c.devsym + c.skew + c.spherical, X));
    e_orth = std::max({e_orth, std::abs(frobenius(c.devsym, c.skew)),
                       std::abs(frobenius(c.devsym, c.spherical)),
                       std::abs(frobenius(c.skew, c.spherical))});
    const CartanParts again = cartan_decompose(c.devsym);
    e_idem = std::max({e_idem, dist(again.devsym, c.devsym), norm(again.skew),
                       norm(again.spherical)});
    e_split = std::max({e_split, dist(sym(X) + skw(X), X), std::abs(tr(dev(X))),
                        norm(skw(sym(X))), norm(sym(skw(X)))});

    const double na = frobenius(anti(v), anti(v));
    e_norm = std::max(e_norm, std::abs(na - 2.0 * dot(v, v)));
    e_cross = std::max(e_cross, dist(anti(v) * w, cross(v, w)));

    e_loop_ex = std::max(e_loop_ex, dist(contract_E_X(E, X), index_loops::contract_E_X(E, X)));
    e_loop_ev = std::max(e_loop_ev, dist(apply_E_v(E, v), index_loops::apply_E_v(E, v)));
    e_loop_xv = std::max(e_loop_xv, dist(apply_X_v(X, v), index_loops::apply_X_v(X, v)));
    e_loop_anti = std::max(e_loop_anti, dist(anti(v), index_loops::anti(v)));
    e_loop_axl = std::max(e_loop_axl, dist(axl(skw(X)), index_loops::axl(skw(X))));
    e_loop_cross = std::max(e_loop_cross, dist(cross(v, w), index_loops::cross(v, w)));

    const Mat3 P = tangential_projector(n);
    e_proj_n = std::max(e_proj_n, norm(P * n));
    e_proj_sq = std::max(e_proj_sq, dist(P * P, P));
    e_proj_sym = std::max(e_proj_sym, norm(skw(P)));
    e_proj_tr = std::max(e_proj_tr, std::abs(tr(P) - 2.0));

    // A tensor with a clear symmetric part must be refused by axl.
    const Mat3 nonskew = skw(X) + sym(X) + 0.1 * Mat3::identity();
    try {
      (void)axl(nonskew);
      ++accepted_nonskew;
    } catch (const InvalidArgument&) {
    }
  }
  const double t = rec.tol("operators");
  rec.le("axl_of_anti_round_trip", "axl/anti", e_axl, t);
  rec.le("anti_of_axl_round_trip", "axl/anti", e_anti, t);
  rec.le("sym_skw_dev_split", "sym/skw/dev/tr", e_split, t);
  rec.le("cartan_recombination", "cartan_decompose", e_sum, t);
  rec.le("cartan_orthogonality", "cartan_decompose", e_orth, t);
  rec.le("cartan_idempotence", "cartan_decompose", e_idem, t);
  rec.le("anti_norm_relation", "anti", e_norm, t);
  rec.le("anti_cross_identity", "anti", e_cross, t);
  rec.le("contract_E_X_vs_loops", "contract_E_X", e_loop_ex, t);
  rec.le("apply_E_v_vs_loops", "apply_E_v", e_loop_ev, t);
  rec.le("apply_X_v_vs_loops", "apply_X_v", e_loop_xv, t);
  rec.le("anti_vs_loops", "anti", e_loop_anti, t);
  rec.le("axl_vs_loops", "axl", e_loop_axl, t);
  rec.le("cross_vs_loops", "cross", e_loop_cross, t);
  rec.le("projector_kills_normal", "tangential_projector", e_proj_n, t);
  rec.le("projector_idempotent", "tangential_projector", e_proj_sq, t);
  rec.le("projector_symmetric", "tangential_projector", e_proj_sym, t);
  rec.le("projector_trace", "tangential_projector", e_proj_tr, t);
  rec.le("axl_rejects_nonskew", "axl", accepted_nonskew, 0.0);
  bool bad_normal_rejected = false;
  try {
    (void)tangential_projector(Vec3{1.0, 1.0, 0.0});
  } catch (const InvalidArgument&) {
    bad_normal_rejected = true;
  }
  rec.holds("projector_rejects_nonunit", "tangential_projector", bad_normal_rejected);
}

void verify_kinematics(const JobConfig& cfg, Recorder& rec) {
  const std::uint64_t seed = *cfg.seed;
  SeededRng rng(derive_seed(seed, 1, 0));
  const Box box{};
  double c_curl = 0, c_trace = 0, c_axl_grad = 0, c_tm = 0;
  double f_grad = 0, f_hess = 0, f_third = 0, f_curl = 0, f_trace = 0, f_gc = 0;
  Table t{"kinematics_fields",
          {"field", "seed", "degree", "closed_form_max_error", "fd_max_error"},
          {}};
  for (int s = 0; s < cfg.samples; ++s) {
    const std::uint64_t fs = derive_seed(seed, 2, static_cast<std::uint64_t>(s));
    const auto field = make_polynomial(fs, cfg.degree);
    double worst_c = 0, worst_f = 0;
    for (int k = 0; k < cfg.points; ++k) {
      const Vec3 x = interior_point(rng, box);
      const Jet j = field->jet(x, 3);
      const KinematicState K = kinematics(j);
      const double a = dist(K.curl_u, 2.0 * K.axl_skw_grad);
      const double b = std::abs(tr(K.grad_curl));
      const double c = dist(grad_axl_skw_from_hess(j.hess), 0.5 * K.grad_curl);
      const auto [chi, om] = torsion_and_mean_curvature(*field, x);
      const double d = dist(chi + om, K.grad_curl);
      c_curl = std::max(c_curl, a);
      c_trace = std::max(c_trace, b);
      c_axl_grad = std::max(c_axl_grad, c);
      c_tm = std::max(c_tm, d);
      worst_c = std::max({worst_c, a, b, c, d});

      const Jet fj = fd_jet(*field, x, 3);
      const KinematicState F = kinematics(fj);
      double third = 0;
      for (int i = 0; i < 3; ++i) third = std::max(third, dist(fj.third[i], j.third[i]));
      const double e1 = dist(fj.grad, j.grad), e2 = dist(fj.hess, j.hess);
      const double e3 = dist(F.curl_u, 2.0 * F.axl_skw_grad), e4 = std::abs(tr(F.grad_curl));
      const double e5 = dist(F.grad_curl, K.grad_curl);
      f_grad = std::max(f_grad, e1);
      f_hess = std::max(f_hess, e2);
      f_third = std::max(f_third, third);
      f_curl = std::max(f_curl, e3);
      f_trace = std::max(f_trace, e4);
      f_gc = std::max(f_gc, e5);
      worst_f = std::max({worst_f, e1, e2, third, e3, e4, e5});
    }
    t.rows.push_back({std::to_string(s), std::to_string(fs), std::to_string(cfg.degree),
                      num(worst_c), num(worst_f)});
  }
  const double tc = rec.tol("closed_form"), tf = rec.tol("fd");
  rec.le("curl_equals_twice_axl_skw_grad", "kinematics", c_curl, tc);
  rec.le("grad_curl_trace_free", "kinematics", c_trace, tc);
  rec.le("grad_axl_skw_is_half_grad_curl", "grad_axl_skw_from_hess", c_axl_grad, tc);
  rec.le("torsion_plus_mean_curvature", "torsion_and_mean_curvature", c_tm, tc);
  rec.le("fd_gradient_vs_closed_form", "fd_derivative_oracle", f_grad, tf);
  rec.le("fd_hessian_vs_closed_form", "fd_derivative_oracle", f_hess, tf);
  rec.le("fd_third_vs_closed_form", "fd_derivative_oracle", f_third, tf);
  rec.le("fd_curl_equals_twice_axl_skw_grad", "kinematics", f_curl, tf);
  rec.le("fd_grad_curl_trace_free", "kinematics", f_trace, tf);
  rec.le("fd_grad_curl_vs_closed_form", "kinematics", f_gc, tf);
  rec.table(std::move(t));

  double r_sym = 0, r_gc = 0, r_curl = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    const Vec3 om = rng.vec3(-1.0, 1.0);
    const auto field = make_rigid(om, rng.vec3(-1.0, 1.0));
    const Vec3 x = interior_point(rng, box);
    const KinematicState K = kinematics(*field, x);
    r_sym = std::max(r_sym, norm(K.sym_grad));
    r_gc = std::max(r_gc, norm(K.grad_curl));
    r_curl = std::max(r_curl, dist(K.curl_u, 2.0 * om));
  }
  rec.le("rigid_motion_strain_free", "kinematics", r_sym, tc);
  rec.le("rigid_motion_curvature_free", "kinematics", r_gc, tc);
  rec.le("rigid_motion_curl", "kinematics", r_curl, tc);

  const auto example = make_torsion_free_example();
  const Mat3 expected{0, 0, 0, 0, 0, -4, 0, 4, 0};
  double ex_c = 0, ex_f = 0;
  for (int k = 0; k < cfg.points; ++k) {
    const Vec3 x = interior_point(rng, box);
    ex_c = std::max(ex_c, dist(kinematics(*example, x).grad_curl, expected));
    ex_f = std::max(ex_f, dist(grad_curl_from_hess(fd_hessian(*example, x)), expected));
  }
  rec.le("example_grad_curl_closed_form", "kinematics", ex_c, tc);
  rec.le("example_grad_curl_fd", "fd_derivative_oracle", ex_f, tf);
}

void energy_report(const JobConfig& cfg, Recorder& rec) {
  const std::uint64_t seed = *cfg.seed;
  const MaterialParams base = base_material(cfg);
  const double te = rec.tol("energy_forms"), tc = rec.tol("closed_form");
  Table t{"regime_energies",
          {"regime", "mu", "lambda", "L_c", "alpha1", "alpha2", "samples",
           "max_rel_gap_curvature_forms", "min_w_curv", "max_rel_gap_linear_forms", "min_w_lin",
           "w_curv_example_field", "max_couple_stress_asymmetry"},
          {}};

  const auto poly = make_polynomial(derive_seed(seed, 3, 0), cfg.degree);
  const auto example = make_torsion_free_example();
  const Box box{};

  for (const auto& name : kRegimes) {
    const MaterialParams p = MaterialParams::for_regime(name, base.mu, base.lambda, base.L_c);
    SeededRng rng(derive_seed(seed, 4, 0));
    double gap_c = 0, min_c = std::numeric_limits<double>::infinity();
    double gap_l = 0, min_l = std::numeric_limits<double>::infinity();
    int warnings = 0;
    for (int s = 0; s < cfg.samples; ++s) {
      const ThirdOrder h = symmetric_hessian(rng);
      const Mat3 G = grad_curl_from_hess(h);
      const CurvatureEnergy w = w_curv(p, G, grad_axl_skw_from_hess(h));
      gap_c = std::max({gap_c, rel(w.sym_skw, w.axl_gradient), rel(w.sym_skw, w.devsym_skw)});
      min_c = std::min({min_c, w.sym_skw, w.axl_gradient, w.devsym_skw});
      warnings += w.trace_warning ? 1 : 0;
      const LinearEnergy l = w_lin(p, rng.mat3(-1.0, 1.0));
      gap_l = std::max(gap_l, rel(l.lame, l.dev_bulk));
      min_l = std::min({min_l, l.lame, l.dev_bulk});
    }
    rec.le(name + ":curvature_forms_agree", "w_curv", gap_c, te);
    rec.ge(name + ":w_curv_nonnegative", "w_curv", min_c, 0.0);
    rec.le(name + ":trace_warnings_on_exact_input", "w_curv", warnings, 0.0);
    rec.le(name + ":linear_forms_agree", "w_lin", gap_l, te);
    rec.ge(name + ":w_lin_nonnegative", "w_lin", min_l, 0.0);

    // Stress invariants on a seeded polynomial field.
    double sig_sym = 0, tau_skw = 0, total = 0, m_skw = 0, m_sym = 0, m_tr = 0;
    for (int k = 0; k < cfg.points; ++k) {
      const Vec3 x = interior_point(rng, box);
      const StressState st = stresses(p, *poly, x);
      const double scale = std::max(1.0, norm(st.m_tilde));
      sig_sym = std::max(sig_sym, norm(skw(st.sigma)) / std::max(1.0, norm(st.sigma)));
      tau_skw = std::max(tau_skw, norm(sym(st.tau_tilde)) / std::max(1.0, norm(st.tau_tilde)));
      total = std::max(total, dist(st.sigma_total, st.sigma - st.tau_tilde));
      m_skw = std::max(m_skw, norm(sym(st.m_tilde)) / scale);
      m_sym = std::max(m_sym, norm(skw(st.m_tilde)) / scale);
      m_tr = std::max(m_tr, std::abs(tr(st.m_tilde)) / scale);
    }
    rec.le(name + ":sigma_symmetric", "stresses", sig_sym, tc);
    rec.le(name + ":tau_skew", "stresses", tau_skw, tc);
    rec.le(name + ":sigma_total_split", "stresses", total, tc);
    if (p.alpha1 == 0.0) rec.le(name + ":m_tilde_skew", "stresses", m_skw, tc);
    if (p.alpha2 == 0.0) {
      rec.le(name + ":m_tilde_symmetric", "stresses", m_sym, tc);
      rec.le(name + ":m_tilde_traceless", "stresses", m_tr, tc);
    }

    const Vec3 x0{0.3, 0.6, 0.45};
    const double wex = w_curv(p, kinematics(*example, x0).grad_curl).sym_skw;
    t.rows.push_back({name, num(p.mu), num(p.lambda), num(p.L_c), num(p.alpha1), num(p.alpha2),
                      std::to_string(cfg.samples), num(gap_c), num(min_c), num(gap_l), num(min_l),
                      num(wex), num(m_sym)});
  }
  rec.table(std::move(t));

  const MaterialParams unit{};
  rec.le("w_lin_identity_example", "w_lin",
         std::abs(w_lin(unit, Mat3::identity()).lame - 7.5) +
             std::abs(w_lin(unit, Mat3::identity()).dev_bulk - 7.5),
         tc);
  rec.le("w_lin_rotation_zero", "w_lin", std::abs(w_lin(unit, anti({0.3, -1.2, 0.7})).lame), tc);
  rec.le("w_curv_zero_curvature", "w_curv", std::abs(w_curv(unit, Mat3{}).sym_skw), tc);
  const MaterialParams hd = MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  const Mat3 Gex = kinematics(*example, Vec3{0.2, 0.7, 0.4}).grad_curl;
  rec.le("w_curv_hd_example_is_8", "w_curv", std::abs(w_curv(hd, Gex).sym_skw - 8.0), tc);
  const Mat3 Gfd = grad_curl_from_hess(fd_hessian(*example, Vec3{0.2, 0.7, 0.4}));
  rec.le("w_curv_hd_example_fd", "w_curv", std::abs(w_curv(hd, Gfd).sym_skw - 8.0),
         rec.tol("fd"));

  // Stresses of a linear field.
  {
    SeededRng rng(derive_seed(seed, 5, 0));
    const Mat3 M = rng.mat3(-1.0, 1.0);
    const auto lin = make_affine(M, rng.vec3(-1.0, 1.0));
    const StressState st = stresses(base, *lin, interior_point(rng, box));
    const Mat3 expect = 2.0 * base.mu * sym(M) + base.lambda * tr(M) * Mat3::identity();
    rec.le("linear_field_stresses", "stresses",
           dist(st.sigma, expect) + norm(st.m_tilde) + norm(st.tau_tilde), tc);
    const Vec3 res = equilibrium_residual(base, *lin, {}, interior_point(rng, box));
    rec.le("linear_field_equilibrium", "equilibrium_residual", norm(res), rec.tol("equilibrium"));
  }

  // Equilibrium: conformal field against its hand-derived divergence, and a
  // manufactured load for a polynomial field.
  {
    SeededRng rng(derive_seed(seed, 6, 0));
    ConformalParams cp{rng.vec3(-1, 1), rng.vec3(-1, 1), rng.vec3(-1, 1), rng.uniform(-1, 1)};
    const auto phi = make_conformal(cp);
    const Vec3 expect = (2.0 * base.mu + 3.0 * base.lambda) * cp.W_axl;
    double e_fd = 0, e_exact = 0, e_manu = 0, e_lin = 0;
    const auto v = make_polynomial(derive_seed(seed, 3, 1), cfg.degree);
    const FieldPtr pv = v;
    const FieldPtr pu = poly;
    const auto sum = make_sum(1.0, pu, 1.0, pv);
    const auto load = make_callable("manufactured_load", [&](const Vec3& y) {
      return -total_stress_divergence_exact(base, *poly, y);
    });
    for (int k = 0; k < cfg.points; ++k) {
      const Vec3 x = interior_point(rng, box);
      e_fd = std::max(e_fd, dist(equilibrium_residual(base, *phi, {}, x), expect));
      e_exact = std::max(e_exact, dist(total_stress_divergence_exact(base, *phi, x), expect));
      e_manu = std::max(e_manu, norm(equilibrium_residual(base, *poly, {load, nullptr}, x)));
      const Vec3 r_uv = equilibrium_residual(base, *sum, {}, x);
      const Vec3 r_u = equilibrium_residual(base, *poly, {}, x);
      const Vec3 r_v = equilibrium_residual(base, *v, {}, x);
      e_lin = std::max(e_lin, dist(r_uv, r_u + r_v));
    }
    const double teq = rec.tol("equilibrium");
    rec.le("conformal_equilibrium_fd", "equilibrium_residual", e_fd, teq);
    rec.le("conformal_equilibrium_exact", "total_stress_divergence_exact", e_exact, tc);
    rec.le("manufactured_equilibrium", "equilibrium_residual", e_manu, teq);
    rec.le("equilibrium_linear_in_field", "equilibrium_residual", e_lin, teq);
  }
}

void conformal_demo(const JobConfig& cfg, Recorder& rec) {
  const std::uint64_t seed = *cfg.seed;
  const MaterialParams base = base_material(cfg);
  const MaterialParams hd = MaterialParams::for_regime("HD", base.mu, base.lambda, base.L_c);
  const MaterialParams mod = MaterialParams::for_regime("modified", base.mu, base.lambda, base.L_c);
  const MaterialParams gk = MaterialParams::for_regime("GKMT", base.mu, base.lambda, base.L_c);
  const double tc = rec.tol("closed_form");
  SeededRng rng(derive_seed(seed, 7, 0));
  const Box box{};

  double e_grad = 0, e_chi = 0, e_dev = 0, e_omega = 0, e_wmod = 0, e_mmod = 0, e_mhd = 0,
         e_const = 0, e_tau = 0, e_wlin = 0, e_wlin_dev = 0, e_div = 0;
  Table t{"conformal_closed_forms",
          {"sample", "W_hat_1", "W_hat_2", "W_hat_3", "p_hat", "x_1", "x_2", "x_3", "tr_grad",
           "w_lin", "w_lin_closed_form", "w_curv_HD", "w_curv_GKMT", "w_curv_modified",
           "max_abs_chi"},
          {}};
  for (int s = 0; s < cfg.samples; ++s) {
    const ConformalParams cp{rng.vec3(-1, 1), rng.vec3(-1, 1), rng.vec3(-1, 1),
                             rng.uniform(-1, 1)};
    const auto phi = make_conformal(cp);
    const Vec3& w = cp.W_axl;
    const Mat3 m_hd = hd.curvature_modulus() * hd.alpha2 * 2.0 * anti(w);
    Mat3 m_first;
    double chi_row = 0;
    for (int k = 0; k < cfg.points; ++k) {
      const Vec3 x = interior_point(rng, box);
      const KinematicState K = kinematics(*phi, x);
      const Mat3 expect_grad = (dot(w, x) + cp.p) * Mat3::identity() + anti(cross(w, x)) +
                               anti(cp.A_axl);
      e_grad = std::max(e_grad, dist(K.grad_u, expect_grad));
      chi_row = std::max(chi_row, norm(K.chi_torsion));
      e_chi = std::max(e_chi, norm(K.chi_torsion));
      e_dev = std::max(e_dev, norm(dev(K.sym_grad)));
      e_omega = std::max(e_omega, dist(K.omega_mean_curv, 2.0 * anti(w)));

      e_wmod = std::max(e_wmod, std::abs(w_curv(mod, K.grad_curl).sym_skw));
      const StressState sm = stresses(mod, *phi, x);
      e_mmod = std::max(e_mmod, norm(sm.m_tilde));
      const StressState sh = stresses(hd, *phi, x);
      e_mhd = std::max(e_mhd, dist(sh.m_tilde, m_hd));
      if (k == 0) m_first = sh.m_tilde;
      e_const = std::max(e_const, dist(sh.m_tilde, m_first));
      e_tau = std::max({e_tau, norm(sh.tau_tilde), norm(stresses(gk, *phi, x).tau_tilde)});

      const double trg = tr(K.grad_u);
      const LinearEnergy wl = w_lin(base, K.grad_u);
      const double closed = (2.0 * base.mu + 3.0 * base.lambda) / 6.0 * trg * trg;
      e_wlin = std::max(e_wlin, rel(wl.lame, closed));
      e_wlin_dev = std::max(e_wlin_dev, rel(wl.dev_bulk, closed));
      e_div = std::max(e_div, dist(total_stress_divergence_exact(base, *phi, x),
                                   (2.0 * base.mu + 3.0 * base.lambda) * w));
      if (k == 0) {
        t.rows.push_back({std::to_string(s), num(w[0]), num(w[1]), num(w[2]), num(cp.p),
                          num(x[0]), num(x[1]), num(x[2]), num(trg), num(wl.lame), num(closed),
                          num(w_curv(hd, K.grad_curl).sym_skw),
                          num(w_curv(gk, K.grad_curl).sym_skw),
                          num(w_curv(mod, K.grad_curl).sym_skw), ""});
      }
    }
    t.rows.back().back() = num(chi_row);
  }
  rec.le("gradient_closed_form", "make_conformal", e_grad, tc);
  rec.le("torsion_vanishes", "torsion_and_mean_curvature", e_chi, tc);
  rec.le("dev_sym_grad_vanishes", "kinematics", e_dev, tc);
  rec.le("mean_curvature_is_twice_W", "torsion_and_mean_curvature", e_omega, tc);
  rec.le("modified_w_curv_vanishes", "w_curv", e_wmod, tc);
  rec.le("modified_m_tilde_vanishes", "stresses", e_mmod, tc);
  rec.le("hd_m_tilde_is_constant_skew", "stresses", e_mhd, tc);
  rec.le("hd_m_tilde_constant_across_points", "stresses", e_const, tc);
  rec.le("tau_tilde_vanishes", "stresses", e_tau, tc);
  rec.le("w_lin_is_bulk_only", "w_lin", e_wlin, rec.tol("energy_forms"));
  rec.le("w_lin_dev_bulk_form", "w_lin", e_wlin_dev, rec.tol("energy_forms"));
  rec.le("divergence_of_total_stress", "total_stress_divergence_exact", e_div, tc);
  rec.table(std::move(t));

  // The inhomogeneous torsion-free example, through the finite-difference oracle only.
  const auto example = make_torsion_free_example();
  const int n_example = 50;
  double chi_fd = 0, inhom = 0;
  Mat3 grad0;
  Table ex{"torsion_free_example",
           {"point", "x_1", "x_2", "x_3", "max_abs_chi_fd", "grad_curl_12", "grad_curl_21",
            "grad_distance_from_first"},
           {}};
  for (int k = 0; k < n_example; ++k) {
    const Vec3 x = interior_point(rng, box);
    const Mat3 G = grad_curl_from_hess(fd_hessian(*example, x));
    const Mat3 g = fd_gradient(*example, x);
    if (k == 0) grad0 = g;
    double chi = 0;
    for (double c : sym(G).c) chi = std::max(chi, std::abs(c));
    chi_fd = std::max(chi_fd, chi);
    inhom = std::max(inhom, dist(g, grad0));
    ex.rows.push_back({std::to_string(k), num(x[0]), num(x[1]), num(x[2]), num(chi), num(G(1, 2)),
                       num(G(2, 1)), num(dist(g, grad0))});
  }
  rec.le("example_torsion_vanishes_fd", "fd_derivative_oracle", chi_fd, rec.tol("fd_torsion"));
  rec.gt("example_is_inhomogeneous", "fd_derivative_oracle", inhom, 1e-3);
  rec.table(std::move(ex));
}

}  // namespace costress::jobs
