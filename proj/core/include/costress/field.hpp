#pragma once

// Displacement fields with derivatives up to third order. Built-in families
// (zero, constant, affine/rigid, seeded polynomial, conformal) carry exact
// derivatives; user callables are differentiated by finite differences.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "costress/tensor.hpp"

namespace costress {

// Axis-aligned box; the default is the closed unit cube.
struct Box {
  Vec3 lo{0.0, 0.0, 0.0};
  Vec3 hi{1.0, 1.0, 1.0};

  bool contains(const Vec3& x) const {
    for (int a = 0; a < 3; ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }
};

// Derivatives of u at one point. Entries beyond `order` are zero.
struct Jet {
  int order = 0;
  Vec3 value;
  Mat3 grad;                        // grad(i, j) = d u_i / d x_j
  ThirdOrder hess;                  // hess(i, j, k) = d2 u_i / dx_j dx_k
  std::array<ThirdOrder, 3> third;  // third[i](j, k, l) = d3 u_i / dx_j dx_k dx_l
};

using MultiIndex = std::array<int, 3>;

class DisplacementField {
 public:
  virtual ~DisplacementField() = default;

  virtual Vec3 value(const Vec3& x) const = 0;

  // True when derivatives are exact rather than finite-difference estimates.
  virtual bool has_closed_form() const = 0;

  // Exact mixed partial d^|alpha| u_i / dx^alpha; closed-form families only.
  virtual double partial(int component, const MultiIndex& alpha, const Vec3& x) const;

  // Derivatives up to `order` (0..3). Throws NumericDomainError on non-finite output.
  Jet jet(const Vec3& x, int order) const;

  const std::string& family() const { return family_; }
  const Box& domain() const { return domain_; }
  void set_domain(const Box& box) { domain_ = box; }

 protected:
  explicit DisplacementField(std::string family) : family_(std::move(family)) {}
  virtual Jet compute_jet(const Vec3& x, int order) const;

 private:
  std::string family_;
  Box domain_{};
};

using FieldPtr = std::shared_ptr<const DisplacementField>;

// How a polynomial field was built, kept for serialization.
struct PolynomialOrigin {
  std::uint64_t seed = 0;
  Mat3 matrix{};
  Vec3 offset{};
};

// Polynomial in x with one coefficient list per component.
class PolynomialField final : public DisplacementField {
 public:
  struct Term {
    MultiIndex power;
    double coeff;
  };

  using Origin = PolynomialOrigin;

  PolynomialField(std::string family, std::array<std::vector<Term>, 3> terms, int degree,
                  Origin origin = {});

  Vec3 value(const Vec3& x) const override;
  bool has_closed_form() const override { return true; }
  double partial(int component, const MultiIndex& alpha, const Vec3& x) const override;

  int degree() const { return degree_; }
  const std::array<std::vector<Term>, 3>& terms() const { return terms_; }
  const Origin& origin() const { return origin_; }

 private:
  std::array<std::vector<Term>, 3> terms_;
  int degree_;
  Origin origin_;
};

struct ConformalParams {
  Vec3 W_axl;  // axial vector of the skew tensor W
  Vec3 A_axl;  // axial vector of the skew tensor A
  Vec3 b;
  double p = 0.0;
};

// phi(x) = <w, x> x - 1/2 w |x|^2 + (p id + A) x + b, w = axl W.
class ConformalField final : public DisplacementField {
 public:
  explicit ConformalField(const ConformalParams& params);

  Vec3 value(const Vec3& x) const override;
  bool has_closed_form() const override { return true; }
  double partial(int component, const MultiIndex& alpha, const Vec3& x) const override;

  const ConformalParams& params() const { return params_; }
  // anti(W x) + A + (<w, x> + p) id
  Mat3 grad(const Vec3& x) const;

 protected:
  Jet compute_jet(const Vec3& x, int order) const override;

 private:
  ConformalParams params_;
};

// Arbitrary callable; all derivatives by finite differences.
class CallableField final : public DisplacementField {
 public:
  using Fn = std::function<Vec3(const Vec3&)>;
  CallableField(std::string name, Fn fn, Box domain = {});

  Vec3 value(const Vec3& x) const override { return fn_(x); }
  bool has_closed_form() const override { return false; }

 private:
  Fn fn_;
};

// a * u + b * v
class LinearCombinationField final : public DisplacementField {
 public:
  LinearCombinationField(double a, FieldPtr u, double b, FieldPtr v);

  Vec3 value(const Vec3& x) const override;
  bool has_closed_form() const override;
  double partial(int component, const MultiIndex& alpha, const Vec3& x) const override;

 protected:
  Jet compute_jet(const Vec3& x, int order) const override;

 private:
  double a_, b_;
  FieldPtr u_, v_;
};

FieldPtr make_zero();
FieldPtr make_constant(const Vec3& value);
FieldPtr make_affine(const Mat3& m, const Vec3& b);
// u = anti(omega) x + b
FieldPtr make_rigid(const Vec3& omega, const Vec3& b);
// Every monomial of total degree <= `degree` (max 6) gets a coefficient drawn
// uniformly from [-1, 1] by a mt19937_64 seeded with `seed`.
std::shared_ptr<const PolynomialField> make_polynomial(std::uint64_t seed, int degree);
std::shared_ptr<const ConformalField> make_conformal(const ConformalParams& params);
FieldPtr make_callable(std::string name, CallableField::Fn fn, Box domain = {});
FieldPtr make_sum(double a, FieldPtr u, double b, FieldPtr v);

// The inhomogeneous zero-torsion example (x1^2 - x2^2 - x3^2, 2 x1 x2, 2 x1 x3).
std::shared_ptr<const ConformalField> make_torsion_free_example();

// Uniform deterministic doubles from a mt19937_64 state, portable across
// standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  double uniform(double lo, double hi);
  Vec3 vec3(double lo, double hi);
  Mat3 mat3(double lo, double hi);
  ThirdOrder third_order(double lo, double hi);
  Vec3 unit_vec3();

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// ---------------------------------------------------------------------------
// Kinematics

struct KinematicState {
  Mat3 grad_u;
  Mat3 sym_grad;
  Vec3 curl_u;
  Vec3 axl_skw_grad;
  Mat3 grad_curl;      // (grad curl u)_ij = d (curl u)_i / dx_j
  Mat3 chi_torsion;    // sym grad curl u
  Mat3 omega_mean_curv;  // skw grad curl u
  ThirdOrder second_grad;
};

// curl u from the displacement gradient: (curl u)_i = eps_ijk d_j u_k.
Vec3 curl_from_grad(const Mat3& grad);
// grad curl u from the second gradient.
Mat3 grad_curl_from_hess(const ThirdOrder& hess);
// d_k (grad curl u)_ij from the third gradient, stored as (i, j, k).
ThirdOrder grad_grad_curl_from_third(const std::array<ThirdOrder, 3>& third);

KinematicState kinematics(const Jet& jet);
KinematicState kinematics(const DisplacementField& field, const Vec3& x);

// ---------------------------------------------------------------------------
// Finite-difference oracle

// Fourth-order central differences, nested per derivative direction, with one
// Richardson level (h, h/2). The step is `base(order) * (1 + |x|)` and shrinks
// near the domain boundary down to `min_fraction` of its nominal value.
struct StepPolicy {
  double base_first = 1e-3;
  double base_second = 1e-2;
  double base_third = 1e-2;
  double min_fraction = 1.0 / 64.0;

  double base(int order) const {
    return order <= 1 ? base_first : (order == 2 ? base_second : base_third);
  }
};

// Derivative along the listed axes (e.g. {0, 2} = d2/dx0 dx2) of an arbitrary
// vector-valued function sampled inside `domain`.
template <class Value>
using SampledFn = std::function<Value(const Vec3&)>;

Vec3 fd_partial(const SampledFn<Vec3>& f, const Vec3& x, const std::vector<int>& axes,
                const Box& domain, const StepPolicy& policy = {});
Mat3 fd_partial(const SampledFn<Mat3>& f, const Vec3& x, const std::vector<int>& axes,
                const Box& domain, const StepPolicy& policy = {});

Mat3 fd_gradient(const DisplacementField& field, const Vec3& x, const StepPolicy& policy = {});
ThirdOrder fd_hessian(const DisplacementField& field, const Vec3& x,
                      const StepPolicy& policy = {});
std::array<ThirdOrder, 3> fd_third(const DisplacementField& field, const Vec3& x,
                                   const StepPolicy& policy = {});
// Jet assembled purely from the oracle above.
Jet fd_jet(const DisplacementField& field, const Vec3& x, int order,
           const StepPolicy& policy = {});

}  // namespace costress
