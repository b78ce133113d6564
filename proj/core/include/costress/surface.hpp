#pragma once

// Parametrized boundary patches: flat box faces and spherical caps, with the
// normal frame, its chart derivatives, surface and edge quadrature.

#include <memory>
#include <string>
#include <vector>

#include "costress/field.hpp"
#include "costress/tensor.hpp"

namespace costress {

// Geometry at one chart point (s, t).
struct SurfacePoint {
  double s = 0.0, t = 0.0;
  Vec3 x;
  Vec3 xs, xt;         // tangent vectors dx/ds, dx/dt
  Vec3 n;              // outward unit normal, xs x xt / |xs x xt|
  Vec3 ns, nt;         // dn/ds, dn/dt
  Vec3 gs, gt;         // contravariant basis, <gs, xs> = 1, <gs, xt> = 0
  double area = 0.0;   // |xs x xt|
};

struct SurfaceQuadPoint {
  SurfacePoint p;
  double weight = 0.0;  // includes the area element
};

struct EdgePoint {
  SurfacePoint p;
  Vec3 nu;            // in-surface outward conormal
  Vec3 tau;           // n x nu
  double ds = 0.0;    // arc-length weight
  double dir_s = 0.0, dir_t = 0.0;  // chart velocity of unit-speed motion along nu
};

class SurfacePatch {
 public:
  virtual ~SurfacePatch() = default;

  virtual SurfacePoint at(double s, double t) const = 0;
  virtual std::vector<SurfaceQuadPoint> quadrature(int order) const = 0;
  virtual std::vector<EdgePoint> edge_quadrature(int order) const = 0;
  virtual double diameter() const = 0;
  virtual std::string kind() const = 0;
  // Exact area, used by tests.
  virtual double area() const = 0;

 protected:
  // Fills n, gs, gt and area from xs, xt.
  static void complete_frame(SurfacePoint& p);
};

using PatchPtr = std::shared_ptr<const SurfacePatch>;

// Face of an axis-aligned box: axis 0..2, `upper` selects the x_axis = hi side.
class BoxFace final : public SurfacePatch {
 public:
  BoxFace(const Box& box, int axis, bool upper);

  SurfacePoint at(double s, double t) const override;
  std::vector<SurfaceQuadPoint> quadrature(int order) const override;
  std::vector<EdgePoint> edge_quadrature(int order) const override;
  double diameter() const override;
  std::string kind() const override { return "box_face"; }
  double area() const override;

  int axis() const { return axis_; }
  bool upper() const { return upper_; }
  const Box& box() const { return box_; }

 private:
  Box box_;
  int axis_;
  bool upper_;
  int sa_, ta_;  // ambient axes of the chart coordinates
};

// x = c + R (sin th cos ph, sin th sin ph, cos th), 0 <= th <= theta_max.
class SphericalCap final : public SurfacePatch {
 public:
  SphericalCap(const Vec3& center, double radius, double theta_max);

  SurfacePoint at(double theta, double phi) const override;
  std::vector<SurfaceQuadPoint> quadrature(int order) const override;
  std::vector<EdgePoint> edge_quadrature(int order) const override;
  double diameter() const override;
  std::string kind() const override { return "spherical_cap"; }
  double area() const override;

  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }
  double theta_max() const { return theta_max_; }

 private:
  Vec3 center_;
  double radius_;
  double theta_max_;
};

// Upper hemisphere of radius 0.4 centred in the unit cube.
std::shared_ptr<const SphericalCap> default_hemisphere();

}  // namespace costress
