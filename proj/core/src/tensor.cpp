#include "costress/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "costress/errors.hpp"

namespace costress {

namespace {

// Absolute floor so the zero tensor and tiny inputs are decidable.
double scaled(double tol, const Mat3& a) { return tol * std::max(1.0, norm(a)); }

}  // namespace

bool is_symmetric(const Mat3& a, double tol) { return norm(skw(a)) <= scaled(tol, a); }

bool is_skew(const Mat3& a, double tol) { return norm(sym(a)) <= scaled(tol, a); }

bool is_traceless(const Mat3& a, double tol) { return std::abs(tr(a)) <= scaled(tol, a); }

Vec3 axl(const Mat3& a, double tol) {
  if (!is_skew(a, tol)) {
    std::ostringstream msg;
    msg << "axl: input is not skew-symmetric (|sym A| = " << norm(sym(a)) << ", |A| = " << norm(a)
        << ")";
    throw InvalidArgument(msg.str());
  }
  // Average the two entries of each pair so slightly non-skew input is projected.
  return {0.5 * (a(2, 1) - a(1, 2)), 0.5 * (a(0, 2) - a(2, 0)), 0.5 * (a(1, 0) - a(0, 1))};
}

CartanParts cartan_decompose(const Mat3& x) {
  CartanParts p;
  p.devsym = dev(sym(x));
  p.skew = skw(x);
  p.spherical = (tr(x) / 3.0) * Mat3::identity();
  return p;
}

Mat3 tangential_projector(const Vec3& n) {
  const double len = norm(n);
  if (!(std::abs(len - 1.0) <= 1e-12)) {
    std::ostringstream msg;
    msg << "tangential_projector: normal is not a unit vector (|n| = " << len << ")";
    throw InvalidArgument(msg.str());
  }
  return Mat3::identity() - outer(n, n);
}

}  // namespace costress
