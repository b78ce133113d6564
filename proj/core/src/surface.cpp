#include "costress/surface.hpp"

#include <cmath>
#include <numbers>

#include "costress/errors.hpp"
#include "costress/quadrature.hpp"

namespace costress {

void SurfacePatch::complete_frame(SurfacePoint& p) {
  const Vec3 c = cross(p.xs, p.xt);
  p.area = norm(c);
  if (!(p.area > 0.0)) throw NumericDomainError("degenerate surface chart");
  p.n = (1.0 / p.area) * c;
  const double gss = dot(p.xs, p.xs), gst = dot(p.xs, p.xt), gtt = dot(p.xt, p.xt);
  const double det = gss * gtt - gst * gst;
  p.gs = (gtt / det) * p.xs - (gst / det) * p.xt;
  p.gt = (gss / det) * p.xt - (gst / det) * p.xs;
}

// ---------------------------------------------------------------------------

BoxFace::BoxFace(const Box& box, int axis, bool upper) : box_(box), axis_(axis), upper_(upper) {
  if (axis < 0 || axis > 2) throw InvalidArgument("BoxFace: axis must be 0, 1 or 2");
  for (int a = 0; a < 3; ++a)
    if (!(box.hi[a] > box.lo[a])) throw InvalidArgument("BoxFace: empty box");
  // e_s x e_t must point outward
  sa_ = upper ? (axis + 1) % 3 : (axis + 2) % 3;
  ta_ = upper ? (axis + 2) % 3 : (axis + 1) % 3;
}

SurfacePoint BoxFace::at(double s, double t) const {
  SurfacePoint p;
  p.s = s;
  p.t = t;
  p.x[axis_] = upper_ ? box_.hi[axis_] : box_.lo[axis_];
  p.x[sa_] = s;
  p.x[ta_] = t;
  p.xs[sa_] = 1.0;
  p.xt[ta_] = 1.0;
  complete_frame(p);
  return p;
}

std::vector<SurfaceQuadPoint> BoxFace::quadrature(int order) const {
  const Rule1D rs = gauss_legendre(order, box_.lo[sa_], box_.hi[sa_]);
  const Rule1D rt = gauss_legendre(order, box_.lo[ta_], box_.hi[ta_]);
  std::vector<SurfaceQuadPoint> q;
  q.reserve(rs.size() * rt.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < rt.size(); ++j) {
      SurfaceQuadPoint qp;
      qp.p = at(rs.nodes[i], rt.nodes[j]);
      qp.weight = rs.weights[i] * rt.weights[j] * qp.p.area;
      q.push_back(qp);
    }
  return q;
}

std::vector<EdgePoint> BoxFace::edge_quadrature(int order) const {
  std::vector<EdgePoint> e;
  const double s0 = box_.lo[sa_], s1 = box_.hi[sa_], t0 = box_.lo[ta_], t1 = box_.hi[ta_];
  const Rule1D rs = gauss_legendre(order, s0, s1);
  const Rule1D rt = gauss_legendre(order, t0, t1);
  auto push = [&](double s, double t, double w, double ds_dir, double dt_dir) {
    EdgePoint ep;
    ep.p = at(s, t);
    ep.nu = ds_dir * ep.p.xs + dt_dir * ep.p.xt;
    ep.tau = cross(ep.p.n, ep.nu);
    ep.ds = w;
    ep.dir_s = ds_dir;
    ep.dir_t = dt_dir;
    e.push_back(ep);
  };
  for (std::size_t j = 0; j < rt.size(); ++j) {
    push(s0, rt.nodes[j], rt.weights[j], -1.0, 0.0);
    push(s1, rt.nodes[j], rt.weights[j], 1.0, 0.0);
  }
  for (std::size_t i = 0; i < rs.size(); ++i) {
    push(rs.nodes[i], t0, rs.weights[i], 0.0, -1.0);
    push(rs.nodes[i], t1, rs.weights[i], 0.0, 1.0);
  }
  return e;
}

double BoxFace::diameter() const {
  return std::hypot(box_.hi[sa_] - box_.lo[sa_], box_.hi[ta_] - box_.lo[ta_]);
}

double BoxFace::area() const {
  return (box_.hi[sa_] - box_.lo[sa_]) * (box_.hi[ta_] - box_.lo[ta_]);
}

// ---------------------------------------------------------------------------

SphericalCap::SphericalCap(const Vec3& center, double radius, double theta_max)
    : center_(center), radius_(radius), theta_max_(theta_max) {
  if (!(radius > 0.0)) throw InvalidArgument("SphericalCap: radius must be positive");
  if (!(theta_max > 0.0 && theta_max < std::numbers::pi))
    throw InvalidArgument("SphericalCap: theta_max must lie in (0, pi)");
}

SurfacePoint SphericalCap::at(double th, double ph) const {
  const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
  const double R = radius_;
  SurfacePoint p;
  p.s = th;
  p.t = ph;
  p.x = center_ + R * Vec3{st * cp, st * sp, ct};
  p.xs = R * Vec3{ct * cp, ct * sp, -st};
  p.xt = R * Vec3{-st * sp, st * cp, 0.0};
  complete_frame(p);
  p.ns = (1.0 / R) * p.xs;
  p.nt = (1.0 / R) * p.xt;
  return p;
}

std::vector<SurfaceQuadPoint> SphericalCap::quadrature(int order) const {
  const Rule1D rth = gauss_legendre(order, 0.0, theta_max_);
  const Rule1D rph = periodic_trapezoid(order, 0.0, 2.0 * std::numbers::pi);
  std::vector<SurfaceQuadPoint> q;
  q.reserve(rth.size() * rph.size());
  for (std::size_t i = 0; i < rth.size(); ++i)
    for (std::size_t j = 0; j < rph.size(); ++j) {
      SurfaceQuadPoint qp;
      qp.p = at(rth.nodes[i], rph.nodes[j]);
      qp.weight = rth.weights[i] * rph.weights[j] * qp.p.area;
      q.push_back(qp);
    }
  return q;
}

std::vector<EdgePoint> SphericalCap::edge_quadrature(int order) const {
  const Rule1D rph = periodic_trapezoid(order, 0.0, 2.0 * std::numbers::pi);
  std::vector<EdgePoint> e;
  for (std::size_t j = 0; j < rph.size(); ++j) {
    EdgePoint ep;
    ep.p = at(theta_max_, rph.nodes[j]);
    ep.nu = (1.0 / radius_) * ep.p.xs;
    ep.tau = cross(ep.p.n, ep.nu);
    ep.ds = rph.weights[j] * radius_ * std::sin(theta_max_);
    ep.dir_s = 1.0 / radius_;
    ep.dir_t = 0.0;
    e.push_back(ep);
  }
  return e;
}

double SphericalCap::diameter() const {
  return theta_max_ <= 0.5 * std::numbers::pi ? 2.0 * radius_ * std::sin(theta_max_)
                                              : 2.0 * radius_;
}

double SphericalCap::area() const {
  return 2.0 * std::numbers::pi * radius_ * radius_ * (1.0 - std::cos(theta_max_));
}

std::shared_ptr<const SphericalCap> default_hemisphere() {
  return std::make_shared<SphericalCap>(Vec3{0.5, 0.5, 0.5}, 0.4, 0.5 * std::numbers::pi);
}

}  // namespace costress
