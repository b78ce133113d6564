#pragma once

// Conforming Galerkin discretization on a box with clamped tensor-product
// modes, well-posedness diagnostics, and the penalized Cosserat model.

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "costress/constitutive.hpp"
#include "costress/field.hpp"

namespace costress {

// Scalar polynomial modes on [0, 1] in monomial form.
class ModeSet1D {
 public:
  // t^2 (1 - t)^2 P_a(2t - 1), a < n: value and first derivative vanish at 0 and 1.
  static ModeSet1D clamped(int n);
  // t (1 - t) P_a(2t - 1), a < n: value vanishes at 0 and 1.
  static ModeSet1D bubble(int n);

  int size() const { return static_cast<int>(coeffs_.size()); }
  int degree() const;
  // d^k/dt^k of mode a at t.
  double eval(int a, int k, double t) const;
  const std::vector<double>& coefficients(int a) const { return coeffs_[a]; }

 private:
  std::vector<std::vector<double>> coeffs_;
};

struct BasisSpec {
  Box domain{};
  int N = 2;
  std::string family = "clamped";  // "clamped" or "bubble"

  ModeSet1D modes() const;
  int scalar_size() const { return N * N * N; }
  int size() const { return 3 * scalar_size(); }
  // Highest polynomial degree per direction of a mode.
  int mode_degree() const { return modes().degree(); }
  void validate() const;
};

// Vector field sum_k c_k phi_k for a basis; derivatives of any order are exact.
// Coefficient k = component * N^3 + (a N + b) N + c.
class GalerkinField final : public DisplacementField {
 public:
  GalerkinField(BasisSpec basis, Eigen::VectorXd coeffs);

  Vec3 value(const Vec3& x) const override;
  bool has_closed_form() const override { return true; }
  double partial(int component, const MultiIndex& alpha, const Vec3& x) const override;

  const BasisSpec& basis() const { return basis_; }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }

 private:
  BasisSpec basis_;
  ModeSet1D modes_;
  Eigen::VectorXd coeffs_;
};

struct GalerkinSystem {
  MaterialParams params;
  BasisSpec basis;
  int quadrature_order = 0;
  Eigen::MatrixXd stiffness;        // elastic + curvature
  Eigen::MatrixXd elastic_block;    // 2 mu sym.sym + lambda tr tr
  Eigen::MatrixXd curvature_block;  // mu L^2 / 2 (alpha1 sym G.sym G + alpha2 skw G.skw G)
  Eigen::MatrixXd mass;             // L2 Gram matrix
  Eigen::VectorXd load;
};

// Minimal per-direction Gauss order for exact stiffness integration.
int required_quadrature_order(const BasisSpec& basis);

// Throws QuadratureOrderError when `quadrature_order` (0 = minimal) is too low.
GalerkinSystem assemble(const MaterialParams& params, const BasisSpec& basis, const LoadData& load,
                        int quadrature_order = 0);

// Alternative assembly with a single curvature coefficient alpha = alpha1 = alpha2,
// curvature block mu L^2 alpha / 2 <curl curl u, curl curl v>. Requires alpha1 == alpha2.
GalerkinSystem assemble_curl_curl(const MaterialParams& params, const BasisSpec& basis,
                                  const LoadData& load, int quadrature_order = 0);

// l(v) = int <f, v> for every basis field.
Eigen::VectorXd assemble_load(const BasisSpec& basis, const DisplacementField& f,
                              int quadrature_order = 0);

struct Solution {
  Eigen::VectorXd coeffs;
  double relative_residual = 0.0;
};

// Cholesky solve; WellPosednessError with the smallest eigenvalue when the
// stiffness is not positive definite.
Solution solve(const GalerkinSystem& system);
Solution solve(const GalerkinSystem& system, const Eigen::VectorXd& rhs);

struct CoercivityEvidence {
  double lambda_min = 0.0;  // smallest eigenvalue of K x = lambda M x
  bool positive = false;
  bool converged = false;
  int iterations = 0;
};

// Inverse iteration with mass normalization.
CoercivityEvidence coercivity_evidence(const GalerkinSystem& system, int max_iterations = 2000,
                                       double tol = 1e-13);

// sqrt of the largest generalized eigenvalue of the (grad, grad) Gram matrix
// against the (sym grad, sym grad) Gram matrix.
double korn_constant(const BasisSpec& basis);

// I(u) = int W(grad u, grad curl u) - int <f, u>, evaluated by quadrature of the
// pointwise energy densities.
double energy_of(const MaterialParams& params, const BasisSpec& basis, const Eigen::VectorXd& coeffs,
                 const LoadData& load, int quadrature_order = 0);

// 1/2 c^T K c - b^T c from the assembled matrices.
double quadratic_energy(const GalerkinSystem& system, const Eigen::VectorXd& coeffs);

// L2 norm of the field with coefficients c.
double l2_norm(const GalerkinSystem& system, const Eigen::VectorXd& coeffs);

// ---------------------------------------------------------------------------
// Penalized Cosserat model

struct CosseratSolution {
  Eigen::VectorXd u;  // coefficients in the clamped displacement basis
  Eigen::VectorXd a;  // coefficients in the microrotation basis (axial vector)
  BasisSpec basis_u;
  BasisSpec basis_a;
  double energy = 0.0;  // 1/2 Q - l at the minimizer
};

// Microrotation space: bubble modes with N + 2 per direction, which contains
// the curl of every clamped displacement mode.
BasisSpec microrotation_basis(const BasisSpec& basis_u);

// Minimizes 1/2 int [2 mu |sym grad u|^2 + lambda tr^2 + mu_c |skw grad u - anti a|^2
// + 2 mu L^2 alpha2 |skw grad a|^2] - int <f, u> - int <M, a>.
// DegeneracyError for mu_c <= 0.
CosseratSolution cosserat_solve(const MaterialParams& params, const BasisSpec& basis_u,
                                const LoadData& load, int quadrature_order = 0);

struct CosseratSweepRow {
  double mu_c = 0.0;
  double relative_error = 0.0;   // |u_mu_c - u_constrained|_L2 / |u_constrained|_L2
  double observed_order = 0.0;   // against the previous row, per decade of mu_c
  double constraint_gap = 0.0;   // |a - axl skw grad u|_L2
  double energy = 0.0;
};

struct CosseratSweep {
  std::vector<CosseratSweepRow> rows;
  double constrained_energy = 0.0;
  bool error_decreasing = true;
  bool energy_nondecreasing = true;
};

// Compares each penalized solution with the constrained solve at alpha1 = 0.
CosseratSweep cosserat_sweep(const MaterialParams& params, const BasisSpec& basis_u,
                             const LoadData& load, const std::vector<double>& mu_c_values,
                             int quadrature_order = 0);

}  // namespace costress
