#pragma once

// Boundary identities and traction decompositions on surface patches.

#include <string>
#include <vector>

#include "costress/constitutive.hpp"
#include "costress/field.hpp"
#include "costress/surface.hpp"

namespace costress {

inline constexpr int kDefaultQuadratureOrder = 16;

struct SurfaceCheck {
  int order = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

// lhs = integral of the surface divergence of (id - n x n) v, rhs = edge integral of <v, nu>.
SurfaceCheck surface_divergence_check(const DisplacementField& v, const SurfacePatch& patch,
                                      int order = kDefaultQuadratureOrder);

// lhs = flux of curl u through the patch, rhs = circulation of u along the edge.
SurfaceCheck stokes_flux_check(const DisplacementField& u, const SurfacePatch& patch,
                               int order = kDefaultQuadratureOrder);

// Gaps over increasing orders. `monotone` holds when each gap is below the
// previous one or already under `floor`.
struct RefinementStudy {
  std::vector<SurfaceCheck> levels;
  bool monotone = true;
};

RefinementStudy refine_surface_divergence(const DisplacementField& v, const SurfacePatch& patch,
                                          const std::vector<int>& orders, double floor = 1e-12);
RefinementStudy refine_stokes_flux(const DisplacementField& u, const SurfacePatch& patch,
                                   const std::vector<int>& orders, double floor = 1e-12);

// Couple-stress quantities on the boundary, with chart derivatives taken
// through the chain rule on the exact third gradient.
struct MomentGeometry {
  Mat3 m_tilde;
  Vec3 mn;          // m_tilde n
  double phi = 0;   // <m_tilde n, n>
  Vec3 grad_s_phi;  // surface gradient of phi
  Mat3 P;           // id - n x n
  Mat3 B;           // anti(P m_tilde n)
  Vec3 div_BP;      // grad[B P] : P
};

MomentGeometry moment_geometry(const MaterialParams& params, const Jet& jet3,
                               const SurfacePoint& p);

enum class Formulation { Classical, Complete, HD };
std::string to_string(Formulation f);

struct TractionSet {
  Formulation formulation = Formulation::Classical;
  Vec3 t_force;
  Vec3 g_double;  // tangential
  Vec3 pi_jump;   // only set on edge points
  bool has_jump = false;
};

TractionSet classical_tractions(const MaterialParams& params, const DisplacementField& field,
                                const SurfacePoint& p);
TractionSet complete_tractions(const MaterialParams& params, const DisplacementField& field,
                               const SurfacePoint& p);
// Adds the edge jump at an edge point.
TractionSet complete_tractions(const MaterialParams& params, const DisplacementField& field,
                               const SurfacePatch& patch, const EdgePoint& e);
// (sigma - tau) n by default; `printed_plus_sign` evaluates (sigma + tau) n instead.
TractionSet hd_tractions(const MaterialParams& params, const DisplacementField& field,
                         const SurfacePoint& p, bool printed_plus_sign = false);

// Jump of anti[(id - n x n) m n] nu across the edge: inner one-sided value minus
// outer, sampled at geodesic offsets eps and 2 eps and extrapolated to eps -> 0.
// `converged` requires the samples at eps, 2 eps and 4 eps to lie on a line.
struct EdgeJump {
  Vec3 jump;
  Vec3 at_eps;
  Vec3 at_2eps;
  double eps = 0.0;
  double spread = 0.0;  // |2 J(eps) - 3 J(2 eps) + J(4 eps)|
  bool converged = true;
};

EdgeJump edge_jump(const MaterialParams& params, const DisplacementField& field,
                   const SurfacePatch& patch, const EdgePoint& e, double eps_fraction = 1e-4);

struct WorkTerm {
  std::string name;
  double value = 0.0;
};

struct WorkIdentity {
  int order = 0;
  double direct = 0.0;
  double decomposed = 0.0;
  double gap = 0.0;
  std::vector<WorkTerm> terms;  // sum to `decomposed`
};

// direct = -int <(sigma - tau) n, du> - int <m n, axl skw grad du>, split into
// the surface terms against du and grad du . n and the edge terms.
WorkIdentity boundary_work_identity(const MaterialParams& params, const DisplacementField& u,
                                    const DisplacementField& du, const SurfacePatch& patch,
                                    int order = kDefaultQuadratureOrder);

struct HdPostulateReport {
  double normal_moment_sup = 0.0;   // sup |<m n, n>|
  double residual_term_norm = 0.0;  // L2 norm of grad[B P] : P
  double ratio = 0.0;               // residual / max(normal_moment_sup, floor)
  bool refuted = false;             // normal moment <= floor and ratio >= margin
};

HdPostulateReport hd_postulate_report(const MaterialParams& params, const DisplacementField& field,
                                      const SurfacePatch& patch,
                                      int order = kDefaultQuadratureOrder, double floor = 1e-14,
                                      double margin = 1e3);

}  // namespace costress
