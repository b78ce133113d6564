#include "costress/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "costress/errors.hpp"

namespace costress {

namespace {

bool finite(const Jet& j) {
  auto ok = [](const auto& arr) {
    return std::all_of(arr.begin(), arr.end(), [](double v) { return std::isfinite(v); });
  };
  if (!ok(j.value.c) || !ok(j.grad.c) || !ok(j.hess.c)) return false;
  for (const auto& t : j.third)
    if (!ok(t.c)) return false;
  return true;
}

// Fills a jet from exact partials, visiting each symmetric index set once.
Jet jet_from_partials(const DisplacementField& f, const Vec3& x, int order) {
  Jet j;
  j.order = order;
  for (int i = 0; i < 3; ++i) {
    j.value[i] = f.partial(i, {0, 0, 0}, x);
    if (order < 1) continue;
    for (int a = 0; a < 3; ++a) {
      MultiIndex al{0, 0, 0};
      ++al[a];
      j.grad(i, a) = f.partial(i, al, x);
    }
    if (order < 2) continue;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) {
        MultiIndex al{0, 0, 0};
        ++al[a];
        ++al[b];
        const double v = f.partial(i, al, x);
        j.hess(i, a, b) = v;
        j.hess(i, b, a) = v;
      }
    if (order < 3) continue;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b)
        for (int c = b; c < 3; ++c) {
          MultiIndex al{0, 0, 0};
          ++al[a];
          ++al[b];
          ++al[c];
          const double v = f.partial(i, al, x);
          const int p[3] = {a, b, c};
          // all permutations of (a, b, c)
          static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
          for (const auto& q : perm) j.third[i](p[q[0]], p[q[1]], p[q[2]]) = v;
        }
  }
  return j;
}

// d^n/dx^n of x^k evaluated at t.
double monomial_derivative(int k, int n, double t) {
  if (n > k) return 0.0;
  double c = 1.0;
  for (int m = 0; m < n; ++m) c *= static_cast<double>(k - m);
  return c * std::pow(t, k - n);
}

}  // namespace

double DisplacementField::partial(int, const MultiIndex&, const Vec3&) const {
  throw InvalidArgument("field family '" + family_ + "' has no closed-form derivatives");
}

Jet DisplacementField::compute_jet(const Vec3& x, int order) const {
  if (has_closed_form()) return jet_from_partials(*this, x, order);
  return fd_jet(*this, x, order);
}

Jet DisplacementField::jet(const Vec3& x, int order) const {
  if (order < 0 || order > 3) throw InvalidArgument("jet: order must be in 0..3");
  Jet j = compute_jet(x, order);
  if (!finite(j)) {
    std::ostringstream msg;
    msg << "field '" << family_ << "' produced a non-finite derivative at (" << x[0] << ", "
        << x[1] << ", " << x[2] << ")";
    throw NumericDomainError(msg.str());
  }
  return j;
}

// ---------------------------------------------------------------------------

PolynomialField::PolynomialField(std::string family, std::array<std::vector<Term>, 3> terms,
                                 int degree, Origin origin)
    : DisplacementField(std::move(family)),
      terms_(std::move(terms)),
      degree_(degree),
      origin_(origin) {}

Vec3 PolynomialField::value(const Vec3& x) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = partial(i, {0, 0, 0}, x);
  return r;
}

double PolynomialField::partial(int component, const MultiIndex& alpha, const Vec3& x) const {
  double s = 0.0;
  for (const auto& t : terms_[component]) {
    double v = t.coeff;
    for (int a = 0; a < 3 && v != 0.0; ++a) v *= monomial_derivative(t.power[a], alpha[a], x[a]);
    s += v;
  }
  return s;
}

// ---------------------------------------------------------------------------

ConformalField::ConformalField(const ConformalParams& params)
    : DisplacementField("conformal"), params_(params) {}

Vec3 ConformalField::value(const Vec3& x) const {
  const Vec3& w = params_.W_axl;
  return dot(w, x) * x - 0.5 * dot(x, x) * w + params_.p * x + cross(params_.A_axl, x) +
         params_.b;
}

Mat3 ConformalField::grad(const Vec3& x) const {
  const Vec3& w = params_.W_axl;
  // W.x = w x x for W = anti(w)
  return (dot(w, x) + params_.p) * Mat3::identity() + anti(cross(w, x)) + anti(params_.A_axl);
}

double ConformalField::partial(int component, const MultiIndex& alpha, const Vec3& x) const {
  const int n = alpha[0] + alpha[1] + alpha[2];
  if (n == 0) return value(x)[component];
  if (n > 2) return 0.0;
  std::array<int, 2> dirs{};
  int m = 0;
  for (int a = 0; a < 3; ++a)
    for (int r = 0; r < alpha[a]; ++r) dirs[m++] = a;
  if (n == 1) return grad(x)(component, dirs[0]);
  const Vec3& w = params_.W_axl;
  const int i = component, j = dirs[0], k = dirs[1];
  return w[j] * (i == k) + w[k] * (i == j) - w[i] * (j == k);
}

Jet ConformalField::compute_jet(const Vec3& x, int order) const {
  Jet j;
  j.order = order;
  j.value = value(x);
  if (order >= 1) j.grad = grad(x);
  if (order >= 2) {
    const Vec3& w = params_.W_axl;
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          j.hess(i, a, b) = w[a] * (i == b) + w[b] * (i == a) - w[i] * (a == b);
  }
  return j;
}

// ---------------------------------------------------------------------------

CallableField::CallableField(std::string name, Fn fn, Box domain)
    : DisplacementField(std::move(name)), fn_(std::move(fn)) {
  set_domain(domain);
}

LinearCombinationField::LinearCombinationField(double a, FieldPtr u, double b, FieldPtr v)
    : DisplacementField("sum"), a_(a), b_(b), u_(std::move(u)), v_(std::move(v)) {
  set_domain(u_->domain());
}

Vec3 LinearCombinationField::value(const Vec3& x) const {
  return a_ * u_->value(x) + b_ * v_->value(x);
}

bool LinearCombinationField::has_closed_form() const {
  return u_->has_closed_form() && v_->has_closed_form();
}

double LinearCombinationField::partial(int component, const MultiIndex& alpha,
                                       const Vec3& x) const {
  return a_ * u_->partial(component, alpha, x) + b_ * v_->partial(component, alpha, x);
}

Jet LinearCombinationField::compute_jet(const Vec3& x, int order) const {
  if (!has_closed_form()) return fd_jet(*this, x, order);
  const Jet ju = u_->jet(x, order);
  const Jet jv = v_->jet(x, order);
  Jet j;
  j.order = order;
  j.value = a_ * ju.value + b_ * jv.value;
  j.grad = a_ * ju.grad + b_ * jv.grad;
  for (int r = 0; r < 27; ++r) {
    j.hess.c[r] = a_ * ju.hess.c[r] + b_ * jv.hess.c[r];
    for (int i = 0; i < 3; ++i) j.third[i].c[r] = a_ * ju.third[i].c[r] + b_ * jv.third[i].c[r];
  }
  return j;
}

// ---------------------------------------------------------------------------

struct SeededRng::State {
  std::mt19937_64 engine;
};

SeededRng::SeededRng(std::uint64_t seed) : state_(std::make_shared<State>()) {
  state_->engine.seed(seed);
}

double SeededRng::uniform(double lo, double hi) {
  const double u01 = static_cast<double>(state_->engine() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u01;
}

Vec3 SeededRng::vec3(double lo, double hi) {
  Vec3 v;
  for (auto& c : v.c) c = uniform(lo, hi);
  return v;
}

Mat3 SeededRng::mat3(double lo, double hi) {
  Mat3 m;
  for (auto& c : m.c) c = uniform(lo, hi);
  return m;
}

ThirdOrder SeededRng::third_order(double lo, double hi) {
  ThirdOrder t;
  for (auto& c : t.c) c = uniform(lo, hi);
  return t;
}

Vec3 SeededRng::unit_vec3() {
  for (;;) {
    const Vec3 v = vec3(-1.0, 1.0);
    const double r = norm(v);
    if (r > 0.1 && r <= 1.0) return (1.0 / r) * v;
  }
}

// ---------------------------------------------------------------------------

FieldPtr make_zero() {
  return std::make_shared<PolynomialField>("zero", std::array<std::vector<PolynomialField::Term>, 3>{},
                                           0);
}

FieldPtr make_constant(const Vec3& value) {
  std::array<std::vector<PolynomialField::Term>, 3> t;
  for (int i = 0; i < 3; ++i) t[i].push_back({{0, 0, 0}, value[i]});
  return std::make_shared<PolynomialField>("constant", std::move(t), 0,
                                           PolynomialField::Origin{0, Mat3{}, value});
}

namespace {

std::shared_ptr<PolynomialField> affine_field(std::string family, const Mat3& m, const Vec3& b) {
  std::array<std::vector<PolynomialField::Term>, 3> t;
  for (int i = 0; i < 3; ++i) {
    t[i].push_back({{0, 0, 0}, b[i]});
    for (int a = 0; a < 3; ++a) {
      MultiIndex p{0, 0, 0};
      p[a] = 1;
      t[i].push_back({p, m(i, a)});
    }
  }
  return std::make_shared<PolynomialField>(std::move(family), std::move(t), 1,
                                           PolynomialField::Origin{0, m, b});
}

}  // namespace

FieldPtr make_affine(const Mat3& m, const Vec3& b) { return affine_field("affine", m, b); }

FieldPtr make_rigid(const Vec3& omega, const Vec3& b) {
  auto f = affine_field("rigid", anti(omega), b);
  return f;
}

std::shared_ptr<const PolynomialField> make_polynomial(std::uint64_t seed, int degree) {
  if (degree < 0 || degree > 6) throw InvalidArgument("make_polynomial: degree must be in 0..6");
  SeededRng rng(seed);
  std::array<std::vector<PolynomialField::Term>, 3> t;
  for (int i = 0; i < 3; ++i)
    for (int n = 0; n <= degree; ++n)
      for (int a = n; a >= 0; --a)
        for (int b = n - a; b >= 0; --b) t[i].push_back({{a, b, n - a - b}, rng.uniform(-1.0, 1.0)});
  return std::make_shared<PolynomialField>("polynomial", std::move(t), degree,
                                           PolynomialField::Origin{seed, Mat3{}, Vec3{}});
}

std::shared_ptr<const ConformalField> make_conformal(const ConformalParams& params) {
  return std::make_shared<ConformalField>(params);
}

std::shared_ptr<const ConformalField> make_torsion_free_example() {
  ConformalParams p;
  p.W_axl = {2.0, 0.0, 0.0};
  return make_conformal(p);
}

FieldPtr make_callable(std::string name, CallableField::Fn fn, Box domain) {
  return std::make_shared<CallableField>(std::move(name), std::move(fn), domain);
}

FieldPtr make_sum(double a, FieldPtr u, double b, FieldPtr v) {
  return std::make_shared<LinearCombinationField>(a, std::move(u), b, std::move(v));
}

// ---------------------------------------------------------------------------

Vec3 curl_from_grad(const Mat3& g) {
  return {g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1)};
}

Mat3 grad_curl_from_hess(const ThirdOrder& h) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double e = epsilon(i, k, l);
          if (e != 0.0) s += e * h(l, k, j);
        }
      g(i, j) = s;
    }
  return g;
}

ThirdOrder grad_grad_curl_from_third(const std::array<ThirdOrder, 3>& d3) {
  ThirdOrder g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int p = 0; p < 3; ++p)
          for (int l = 0; l < 3; ++l) {
            const double e = epsilon(i, p, l);
            if (e != 0.0) s += e * d3[l](p, j, k);
          }
        g(i, j, k) = s;
      }
  return g;
}

KinematicState kinematics(const Jet& jet) {
  KinematicState k;
  k.grad_u = jet.grad;
  k.sym_grad = sym(jet.grad);
  k.curl_u = curl_from_grad(jet.grad);
  k.axl_skw_grad = axl(skw(jet.grad));
  k.second_grad = jet.hess;
  k.grad_curl = grad_curl_from_hess(jet.hess);
  k.chi_torsion = sym(k.grad_curl);
  k.omega_mean_curv = skw(k.grad_curl);
  return k;
}

KinematicState kinematics(const DisplacementField& field, const Vec3& x) {
  return kinematics(field.jet(x, 2));
}

}  // namespace costress
