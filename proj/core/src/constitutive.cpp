#include "costress/constitutive.hpp"

#include <cmath>
#include <sstream>

#include "costress/errors.hpp"

namespace costress {

void MaterialParams::validate() const {
  std::ostringstream msg;
  if (!(std::isfinite(mu) && std::isfinite(lambda) && std::isfinite(L_c) &&
        std::isfinite(alpha1) && std::isfinite(alpha2) && std::isfinite(mu_c)))
    msg << "material parameters must be finite";
  else if (!(mu > 0.0))
    msg << "mu must be positive (got " << mu << ")";
  else if (!(3.0 * lambda + 2.0 * mu > 0.0))
    msg << "3 lambda + 2 mu must be positive (got " << 3.0 * lambda + 2.0 * mu << ")";
  else if (alpha1 < 0.0 || alpha2 < 0.0)
    msg << "alpha1 and alpha2 must be nonnegative";
  else if (L_c < 0.0)
    msg << "L_c must be nonnegative";
  else if (mu_c < 0.0)
    msg << "mu_c must be nonnegative";
  else
    return;
  throw InvalidArgument(msg.str());
}

std::string MaterialParams::regime() const {
  if (L_c == 0.0 || (alpha1 == 0.0 && alpha2 == 0.0)) return "classical";
  if (alpha1 == 0.0) return "HD";
  if (alpha2 == 0.0) return "modified";
  return "GKMT";
}

MaterialParams MaterialParams::for_regime(const std::string& name, double mu, double lambda,
                                          double L_c) {
  MaterialParams p;
  p.mu = mu;
  p.lambda = lambda;
  p.L_c = L_c;
  if (name == "GKMT") {
    p.alpha1 = 1.0;
    p.alpha2 = 1.0;
  } else if (name == "modified") {
    p.alpha1 = 1.0;
    p.alpha2 = 0.0;
  } else if (name == "HD") {
    p.alpha1 = 0.0;
    p.alpha2 = 1.0;
  } else if (name == "classical") {
    p.alpha1 = 0.0;
    p.alpha2 = 0.0;
  } else {
    throw InvalidArgument("unknown regime '" + name + "' (expected GKMT, modified, HD or classical)");
  }
  return p;
}

LinearEnergy w_lin(const MaterialParams& p, const Mat3& g) {
  const Mat3 e = sym(g);
  const double t = tr(g);
  const Mat3 d = dev(e);
  return {p.mu * frobenius(e, e) + 0.5 * p.lambda * t * t,
          p.mu * frobenius(d, d) + (2.0 * p.mu + 3.0 * p.lambda) / 6.0 * t * t};
}

CurvatureEnergy w_curv(const MaterialParams& p, const Mat3& G, const Mat3& A, double trace_tol) {
  const double k = p.curvature_modulus();
  const Mat3 sG = sym(G), wG = skw(G), dG = dev(sG);
  const Mat3 sA = sym(A), wA = skw(A);
  CurvatureEnergy e;
  e.sym_skw = k * (0.25 * p.alpha1 * frobenius(sG, sG) + 0.25 * p.alpha2 * frobenius(wG, wG));
  e.axl_gradient = k * (p.alpha1 * frobenius(sA, sA) + p.alpha2 * frobenius(wA, wA));
  e.devsym_skw = k * (0.25 * p.alpha1 * frobenius(dG, dG) + 0.25 * p.alpha2 * frobenius(wG, wG));
  e.trace = tr(G);
  e.trace_warning = std::abs(e.trace) > trace_tol * std::max(1.0, norm(G));
  return e;
}

CurvatureEnergy w_curv(const MaterialParams& p, const Mat3& G, double trace_tol) {
  return w_curv(p, G, 0.5 * G, trace_tol);
}

Mat3 grad_axl_skw_from_hess(const ThirdOrder& h) {
  // d_j axl(skw grad u)_k with grad u differentiated along x_j
  Mat3 r;
  for (int j = 0; j < 3; ++j) {
    Mat3 dj;
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l) dj(i, l) = h(i, l, j);
    const Mat3 w = skw(dj);
    const Vec3 a{w(2, 1), w(0, 2), w(1, 0)};
    for (int k = 0; k < 3; ++k) r(k, j) = a[k];
  }
  return r;
}

Mat3 local_stress(const MaterialParams& p, const Mat3& g) {
  return 2.0 * p.mu * sym(g) + (p.lambda * tr(g)) * Mat3::identity();
}

Mat3 couple_stress(const MaterialParams& p, const Mat3& G) {
  return p.curvature_modulus() * (p.alpha1 * sym(G) + p.alpha2 * skw(G));
}

Vec3 couple_stress_divergence(const MaterialParams& p, const ThirdOrder& dG) {
  // Div m_i = d_j m_ij with m = k (a1 sym G + a2 skw G)
  const double k = p.curvature_modulus();
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double gij = dG(i, j, j);
      const double gji = dG(j, i, j);
      s += 0.5 * p.alpha1 * (gij + gji) + 0.5 * p.alpha2 * (gij - gji);
    }
    r[i] = k * s;
  }
  return r;
}

StressState stresses(const MaterialParams& p, const Jet& jet) {
  if (jet.order < 3) throw InvalidArgument("stresses: jet of order 3 required");
  StressState s;
  s.sigma = local_stress(p, jet.grad);
  s.m_tilde = couple_stress(p, grad_curl_from_hess(jet.hess));
  s.tau_tilde = 0.5 * anti(couple_stress_divergence(p, grad_grad_curl_from_third(jet.third)));
  s.sigma_total = s.sigma - s.tau_tilde;
  return s;
}

StressState stresses(const MaterialParams& p, const DisplacementField& field, const Vec3& x) {
  return stresses(p, field.jet(x, 3));
}

Vec3 equilibrium_residual(const MaterialParams& p, const DisplacementField& field,
                          const LoadData& load, const Vec3& x, const StepPolicy& policy) {
  const SampledFn<Mat3> total = [&](const Vec3& y) { return stresses(p, field, y).sigma_total; };
  Vec3 div;
  for (int j = 0; j < 3; ++j) {
    const Mat3 d = fd_partial(total, x, {j}, field.domain(), policy);
    for (int i = 0; i < 3; ++i) div[i] += d(i, j);
  }
  if (load.f) div += load.f->value(x);
  for (double v : div.c)
    if (!std::isfinite(v)) throw NumericDomainError("equilibrium_residual: non-finite result");
  return div;
}

Vec3 total_stress_divergence_exact(const MaterialParams& p, const DisplacementField& field,
                                   const Vec3& x) {
  if (!field.has_closed_form())
    throw InvalidArgument("total_stress_divergence_exact: closed-form field required");
  auto d = [&](int i, std::initializer_list<int> axes) {
    MultiIndex a{0, 0, 0};
    for (int ax : axes) ++a[ax];
    return field.partial(i, a, x);
  };
  const double c = p.curvature_modulus() * (p.alpha1 + p.alpha2) / 2.0;
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    double lap = 0.0, grad_div = 0.0, higher = 0.0;
    for (int j = 0; j < 3; ++j) {
      lap += d(i, {j, j});
      grad_div += d(j, {j, i});
    }
    // (curl Lap curl u)_i = eps_ijk eps_kpq d_j d_p Lap u_q
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double e1 = epsilon(i, j, k);
        if (e1 == 0.0) continue;
        for (int pp = 0; pp < 3; ++pp)
          for (int q = 0; q < 3; ++q) {
            const double e2 = epsilon(k, pp, q);
            if (e2 == 0.0) continue;
            for (int m = 0; m < 3; ++m) higher += e1 * e2 * d(q, {j, pp, m, m});
          }
      }
    r[i] = p.mu * lap + (p.mu + p.lambda) * grad_div + 0.5 * c * higher;
  }
  return r;
}

std::pair<Mat3, Mat3> torsion_and_mean_curvature(const DisplacementField& field, const Vec3& x) {
  const Mat3 G = grad_curl_from_hess(field.jet(x, 2).hess);
  return {sym(G), skw(G)};
}

}  // namespace costress
