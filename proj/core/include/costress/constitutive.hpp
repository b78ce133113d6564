#pragma once

// Isotropic indeterminate couple stress law: strain and curvature energies,
// local, couple and nonlocal stresses, and the equilibrium residual.

#include <string>
#include <utility>

#include "costress/field.hpp"
#include "costress/tensor.hpp"

namespace costress {

struct MaterialParams {
  double mu = 1.0;
  double lambda = 1.0;
  double L_c = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double mu_c = 0.0;  // Cosserat couple modulus, only read by the penalized solver

  // Throws InvalidArgument unless mu > 0, 3 lambda + 2 mu > 0, alpha1, alpha2 >= 0.
  void validate() const;

  // "GKMT" (alpha1, alpha2 > 0), "modified" (alpha2 = 0), "HD" (alpha1 = 0) or
  // "classical" when the curvature energy is switched off.
  std::string regime() const;

  // Sets (alpha1, alpha2) to (1, 1), (1, 0) or (0, 1) for the named regime.
  static MaterialParams for_regime(const std::string& name, double mu, double lambda, double L_c);

  double curvature_modulus() const { return mu * L_c * L_c; }
};

struct LinearEnergy {
  double lame;      // mu |sym X|^2 + lambda/2 tr(X)^2
  double dev_bulk;  // mu |dev sym X|^2 + (2 mu + 3 lambda)/6 tr(X)^2
};

LinearEnergy w_lin(const MaterialParams& p, const Mat3& grad_u);

struct CurvatureEnergy {
  double sym_skw;       // in terms of sym and skw of grad curl u
  double axl_gradient;  // in terms of grad axl(skw grad u)
  double devsym_skw;    // with the deviatoric projection of the symmetric part
  double trace;         // tr(grad curl u), zero for exact input
  bool trace_warning;   // |trace| exceeded the tolerance
};

// `grad_axl_skw` is grad[axl(skw grad u)]; for exact input it equals grad_curl / 2.
CurvatureEnergy w_curv(const MaterialParams& p, const Mat3& grad_curl, const Mat3& grad_axl_skw,
                       double trace_tol = 1e-10);
CurvatureEnergy w_curv(const MaterialParams& p, const Mat3& grad_curl, double trace_tol = 1e-10);

// grad[axl(skw grad u)] from the second gradient, independent of the curl route.
Mat3 grad_axl_skw_from_hess(const ThirdOrder& hess);

struct StressState {
  Mat3 sigma;        // 2 mu sym grad u + lambda tr(grad u) id
  Mat3 m_tilde;      // mu L^2 [alpha1 sym + alpha2 skw] grad curl u
  Mat3 tau_tilde;    // 1/2 anti Div m_tilde
  Mat3 sigma_total;  // sigma - tau_tilde
};

Mat3 local_stress(const MaterialParams& p, const Mat3& grad_u);
Mat3 couple_stress(const MaterialParams& p, const Mat3& grad_curl);
// Div m_tilde from d_k (grad curl u)_ij stored as (i, j, k).
Vec3 couple_stress_divergence(const MaterialParams& p, const ThirdOrder& grad_grad_curl);

StressState stresses(const MaterialParams& p, const Jet& jet3);
StressState stresses(const MaterialParams& p, const DisplacementField& field, const Vec3& x);

struct LoadData {
  FieldPtr f;       // body force density; null means zero
  FieldPtr M_body;  // body couple, axial vector; null means zero
};

// Div(sigma - tau_tilde)(x) + f(x), the divergence taken by finite differences of
// the assembled total stress field.
Vec3 equilibrium_residual(const MaterialParams& p, const DisplacementField& field,
                          const LoadData& load, const Vec3& x, const StepPolicy& policy = {});

// Div(sigma - tau_tilde) from exact fourth derivatives:
// mu Lap u + (mu + lambda) grad div u + c/2 curl Lap curl u, c = mu L^2 (alpha1 + alpha2)/2.
// Closed-form fields only.
Vec3 total_stress_divergence_exact(const MaterialParams& p, const DisplacementField& field,
                                   const Vec3& x);

// (chi, omega) = (sym, skw) of grad curl u.
std::pair<Mat3, Mat3> torsion_and_mean_curvature(const DisplacementField& field, const Vec3& x);

}  // namespace costress
