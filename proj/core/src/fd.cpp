#include <algorithm>
#include <cmath>
#include <sstream>

#include "costress/errors.hpp"
#include "costress/field.hpp"

namespace costress {

namespace {

template <class Value>
Value stencil(const SampledFn<Value>& f, Vec3 x, const int* axes, std::size_t n, double h) {
  if (n == 0) return f(x);
  const int a = axes[0];
  const double x0 = x[a];
  auto at = [&](double s) {
    x[a] = x0 + s * h;
    return stencil(f, x, axes + 1, n - 1, h);
  };
  const Value m2 = at(-2.0);
  const Value m1 = at(-1.0);
  const Value p1 = at(1.0);
  const Value p2 = at(2.0);
  Value out = 8.0 * (p1 - m1) - (p2 - m2);
  out *= 1.0 / (12.0 * h);
  return out;
}

template <class Value>
Value fd_partial_impl(const SampledFn<Value>& f, const Vec3& x, const std::vector<int>& axes,
                      const Box& domain, const StepPolicy& policy) {
  const std::size_t n = axes.size();
  if (n == 0) return f(x);
  if (n > 3) throw InvalidArgument("fd_partial: at most three derivative directions");
  const double nominal = policy.base(static_cast<int>(n)) * (1.0 + norm(x));
  if (!(nominal > 0.0)) throw InvalidArgument("fd_partial: step must be positive");

  std::array<int, 3> count{0, 0, 0};
  for (int a : axes) {
    if (a < 0 || a > 2) throw InvalidArgument("fd_partial: axis out of range");
    ++count[a];
  }
  double h = nominal;
  for (int a = 0; a < 3; ++a) {
    if (count[a] == 0) continue;
    const double room = std::min(x[a] - domain.lo[a], domain.hi[a] - x[a]);
    h = std::min(h, room / (2.0 * count[a]));
  }
  if (!(h >= policy.min_fraction * nominal)) {
    std::ostringstream msg;
    msg << "fd_partial: stencil leaves the domain at (" << x[0] << ", " << x[1] << ", " << x[2]
        << ")";
    throw InvalidArgument(msg.str());
  }
  const Value coarse = stencil(f, x, axes.data(), n, h);
  Value fine = stencil(f, x, axes.data(), n, 0.5 * h);
  Value out = 16.0 * fine - coarse;
  out *= 1.0 / 15.0;
  return out;
}

SampledFn<Vec3> sampler(const DisplacementField& field) {
  return [&field](const Vec3& y) { return field.value(y); };
}

}  // namespace

Vec3 fd_partial(const SampledFn<Vec3>& f, const Vec3& x, const std::vector<int>& axes,
                const Box& domain, const StepPolicy& policy) {
  return fd_partial_impl(f, x, axes, domain, policy);
}

Mat3 fd_partial(const SampledFn<Mat3>& f, const Vec3& x, const std::vector<int>& axes,
                const Box& domain, const StepPolicy& policy) {
  return fd_partial_impl(f, x, axes, domain, policy);
}

Mat3 fd_gradient(const DisplacementField& field, const Vec3& x, const StepPolicy& policy) {
  const auto f = sampler(field);
  Mat3 g;
  for (int j = 0; j < 3; ++j) {
    const Vec3 d = fd_partial(f, x, {j}, field.domain(), policy);
    for (int i = 0; i < 3; ++i) g(i, j) = d[i];
  }
  return g;
}

ThirdOrder fd_hessian(const DisplacementField& field, const Vec3& x, const StepPolicy& policy) {
  const auto f = sampler(field);
  ThirdOrder h;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const Vec3 d = fd_partial(f, x, {j, k}, field.domain(), policy);
      for (int i = 0; i < 3; ++i) h(i, j, k) = d[i];
    }
  return h;
}

std::array<ThirdOrder, 3> fd_third(const DisplacementField& field, const Vec3& x,
                                   const StepPolicy& policy) {
  const auto f = sampler(field);
  std::array<ThirdOrder, 3> t;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        const Vec3 d = fd_partial(f, x, {a, b, c}, field.domain(), policy);
        const int p[3] = {a, b, c};
        static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (int i = 0; i < 3; ++i)
          for (const auto& q : perm) t[i](p[q[0]], p[q[1]], p[q[2]]) = d[i];
      }
  return t;
}

Jet fd_jet(const DisplacementField& field, const Vec3& x, int order, const StepPolicy& policy) {
  Jet j;
  j.order = order;
  j.value = field.value(x);
  if (order >= 1) j.grad = fd_gradient(field, x, policy);
  if (order >= 2) j.hess = fd_hessian(field, x, policy);
  if (order >= 3) j.third = fd_third(field, x, policy);
  return j;
}

}  // namespace costress
