#include <algorithm>
#include <cmath>
#include <limits>

#include "costress/errors.hpp"
#include "costress/galerkin.hpp"
#include "job_commands.hpp"

namespace costress::jobs {

namespace {

double rel_matrix_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

LoadData load_of(const JobConfig& cfg) {
  LoadData load;
  load.f = cfg.load.is_null() ? make_constant(Vec3{1.0, 0.5, 0.25}) : field_from_json(cfg.load);
  if (!cfg.body_couple.is_null()) load.M_body = field_from_json(cfg.body_couple);
  return load;
}

BasisSpec basis_of(const JobConfig& cfg) {
  BasisSpec b;
  b.N = cfg.basis_N;
  b.domain = cfg.basis_domain;
  return b;
}

}  // namespace

void bvp_solve(const JobConfig& cfg, Recorder& rec) {
  const std::uint64_t seed = *cfg.seed;
  const BasisSpec basis = basis_of(cfg);
  const LoadData load = load_of(cfg);
  const double tsol = rec.tol("solve"), tsym = rec.tol("symmetry");
  const int q = cfg.quadrature_order;
  rec.set_quadrature_order(q > 0 ? q : required_quadrature_order(basis));

  std::vector<std::pair<std::string, MaterialParams>> cases;
  if (cfg.material_given) {
    cases.emplace_back(cfg.material.regime(), cfg.material);
  } else {
    for (const char* r : {"GKMT", "modified", "HD"})
      cases.emplace_back(r, MaterialParams::for_regime(r, 1.0, 1.0, 0.1));
  }

  Table sol_table{"solution",
                  {"regime", "N", "unknowns", "lambda_min", "eigen_converged",
                   "relative_residual", "energy_quadrature", "energy_matrix", "load_work",
                   "l2_norm"},
                  {}};
  Table coeffs{"coefficients", {"regime", "index", "component", "value"}, {}};
  SeededRng rng(derive_seed(seed, 20, 0));

  std::vector<GalerkinSystem> systems;
  for (const auto& [name, p] : cases) {
    const GalerkinSystem sys = assemble(p, basis, load, q);
    const Eigen::MatrixXd& K = sys.stiffness;
    rec.le(name + ":stiffness_symmetric", "assemble", (K - K.transpose()).norm() / K.norm(), tsym);

    const CoercivityEvidence ce = coercivity_evidence(sys);
    rec.gt(name + ":lambda_min_positive", "coercivity_evidence", ce.lambda_min, 0.0);
    rec.holds(name + ":eigen_iteration_converged", "coercivity_evidence", ce.converged);

    const Solution s = solve(sys);
    rec.le(name + ":relative_residual", "solve", s.relative_residual, tsol);
    const Eigen::VectorXd r = K * s.coeffs - sys.load;
    rec.le(name + ":galerkin_orthogonality", "solve", r.cwiseAbs().maxCoeff() / sys.load.norm(),
           tsol);

    const double I = energy_of(p, basis, s.coeffs, load, q);
    const double Im = quadratic_energy(sys, s.coeffs);
    const double lu = sys.load.dot(s.coeffs);
    rec.le(name + ":energy_is_minus_half_load_work", "energy_of",
           std::abs(I + 0.5 * lu) / std::abs(0.5 * lu), tsol);
    rec.le(name + ":energy_quadrature_vs_matrix", "energy_of", std::abs(I - Im) / std::abs(Im),
           tsol);

    double min_increase = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd v(s.coeffs.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1.0, 1.0);
      v *= s.coeffs.norm() / v.norm();
      const double Ip = energy_of(p, basis, s.coeffs + 1e-3 * v, load, q);
      min_increase = std::min(min_increase, Ip - I);
    }
    rec.gt(name + ":discrete_minimality", "energy_of", min_increase, 0.0);

    const Solution s2 = solve(sys, 2.0 * sys.load);
    rec.le(name + ":linearity_under_load_scaling", "solve",
           (s2.coeffs - 2.0 * s.coeffs).norm() / (2.0 * s.coeffs.norm()), tsol);

    const Solution s0 = solve(sys, Eigen::VectorXd::Zero(sys.load.size()));
    rec.le(name + ":zero_load_zero_solution", "solve", s0.coeffs.norm(), 0.0);

    Eigen::VectorXd star(s.coeffs.size());
    for (Eigen::Index i = 0; i < star.size(); ++i) star[i] = rng.uniform(-1.0, 1.0);
    const Solution sm = solve(sys, K * star);
    rec.le(name + ":manufactured_round_trip", "solve", (sm.coeffs - star).norm() / star.norm(),
           tsol);

    if (p.alpha1 == p.alpha2) {
      const GalerkinSystem cc = assemble_curl_curl(p, basis, load, q);
      rec.le(name + ":curl_curl_assembly_agrees", "assemble",
             rel_matrix_gap(cc.curvature_block, sys.curvature_block), tsym);
    }

    sol_table.rows.push_back({name, std::to_string(basis.N), std::to_string(basis.size()),
                              num(ce.lambda_min), ce.converged ? "true" : "false",
                              num(s.relative_residual), num(I), num(Im), num(lu),
                              num(l2_norm(sys, s.coeffs))});
    const int n3 = basis.scalar_size();
    for (Eigen::Index i = 0; i < s.coeffs.size(); ++i)
      coeffs.rows.push_back({name, std::to_string(i), std::to_string(i / n3), num(s.coeffs[i])});
    systems.push_back(sys);
  }

  if (systems.size() > 1) {
    double elastic = 0;
    for (std::size_t i = 1; i < systems.size(); ++i)
      elastic = std::max(elastic, rel_matrix_gap(systems[i].elastic_block, systems[0].elastic_block));
    rec.le("regimes_share_elastic_block", "assemble", elastic, tsym);
  }
  if (systems.size() == 3) {
    rec.le("curvature_block_linear_in_alpha", "assemble",
           rel_matrix_gap(systems[0].curvature_block,
                          systems[1].curvature_block + systems[2].curvature_block),
           tsym);
  }

  {
    const MaterialParams p = cases.front().second;
    const int qmin = required_quadrature_order(basis);
    const GalerkinSystem lo = assemble(p, basis, load, qmin);
    const GalerkinSystem hi = assemble(p, basis, load, qmin + 4);
    rec.le("stiffness_exact_at_required_order", "assemble",
           rel_matrix_gap(lo.stiffness, hi.stiffness), tsym);
    bool refused = false;
    try {
      (void)assemble(p, basis, load, qmin - 1);
    } catch (const QuadratureOrderError& e) {
      refused = e.required_order() == qmin;
    }
    rec.holds("insufficient_quadrature_refused", "assemble", refused);
    const Eigen::VectorXd zero_load = assemble_load(basis, *make_zero(), qmin);
    rec.le("zero_force_zero_load_vector", "assemble_load", zero_load.norm(), 0.0);
  }

  Table korn{"korn", {"N", "unknowns", "korn_constant"}, {}};
  std::vector<double> cs;
  for (int n : cfg.korn_sweep) {
    BasisSpec b = basis;
    b.N = n;
    const double c = korn_constant(b);
    cs.push_back(c);
    korn.rows.push_back({std::to_string(n), std::to_string(b.size()), num(c)});
    rec.ge("korn_N" + std::to_string(n) + ":at_least_one", "korn_constant", c, 1.0);
    rec.holds("korn_N" + std::to_string(n) + ":finite", "korn_constant", std::isfinite(c));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < cs.size(); ++i)
    if (cs[i] < cs[i - 1] - 1e-10) monotone = false;
  rec.holds("korn_monotone_under_refinement", "korn_constant", monotone);
  if (cs.size() > 1)
    rec.le("korn_last_refinement_change", "korn_constant",
           std::abs(cs.back() - cs[cs.size() - 2]) / cs[cs.size() - 2], 0.05);

  rec.table(std::move(sol_table));
  rec.table(std::move(coeffs));
  rec.table(std::move(korn));
}

void cosserat_limit(const JobConfig& cfg, Recorder& rec) {
  const BasisSpec basis = basis_of(cfg);
  const LoadData load = load_of(cfg);
  const MaterialParams p =
      cfg.material_given ? cfg.material : MaterialParams::for_regime("HD", 1.0, 1.0, 1.0);
  const int q = cfg.quadrature_order;
  rec.set_quadrature_order(q > 0 ? q : required_quadrature_order(microrotation_basis(basis)));

  const CosseratSweep sweep = cosserat_sweep(p, basis, load, cfg.mu_c_values, q);
  Table t{"cosserat_sweep",
          {"mu_c", "relative_error", "observed_order", "constraint_gap", "energy",
           "constrained_energy"},
          {}};
  const double band = rec.tol("order_band");
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& r = sweep.rows[i];
    t.rows.push_back({num(r.mu_c), num(r.relative_error), i == 0 ? "" : num(r.observed_order),
                      num(r.constraint_gap), num(r.energy), num(sweep.constrained_energy)});
    if (i > 0)
      rec.le("order_mu_c_" + num(r.mu_c), "cosserat_solve", std::abs(r.observed_order - 1.0),
             band);
  }
  rec.holds("error_strictly_decreasing", "cosserat_solve", sweep.error_decreasing);
  rec.holds("energy_nondecreasing_in_mu_c", "cosserat_solve", sweep.energy_nondecreasing);
  rec.le("energy_below_constrained", "cosserat_solve",
         sweep.rows.back().energy - sweep.constrained_energy, 1e-12 * std::abs(sweep.constrained_energy));

  MaterialParams pz = p;
  pz.mu_c = cfg.mu_c_values.front();
  const CosseratSolution z =
      cosserat_solve(pz, basis, LoadData{make_zero(), nullptr}, q);
  rec.le("zero_load_zero_solution", "cosserat_solve", z.u.norm() + z.a.norm(), 0.0);

  bool degenerate_refused = false;
  try {
    pz.mu_c = 0.0;
    (void)cosserat_solve(pz, basis, load, q);
  } catch (const DegeneracyError&) {
    degenerate_refused = true;
  }
  rec.holds("zero_couple_modulus_refused", "cosserat_solve", degenerate_refused);
  rec.table(std::move(t));
}

}  // namespace costress::jobs
