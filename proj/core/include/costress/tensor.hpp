#pragma once

// Fixed-size tensor algebra: 3-vectors, 3x3 tensors and third-order tensors,
// together with the sym/skw/dev/tr split, axl/anti and the contractions used
// throughout the couple stress model.

#include <array>
#include <cmath>
#include <cstddef>

namespace costress {

struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Row-major 3x3 tensor, (i, j) addresses row i, column j.
struct Mat3 {
  std::array<double, 9> c{};

  constexpr Mat3() = default;
  constexpr Mat3(double a00, double a01, double a02, double a10, double a11, double a12,
                 double a20, double a21, double a22)
      : c{a00, a01, a02, a10, a11, a12, a20, a21, a22} {}

  constexpr double& operator()(std::size_t i, std::size_t j) { return c[3 * i + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return c[3 * i + j]; }

  constexpr Vec3 row(std::size_t i) const { return {c[3 * i], c[3 * i + 1], c[3 * i + 2]}; }
  constexpr Vec3 col(std::size_t j) const { return {c[j], c[3 + j], c[6 + j]}; }

  static constexpr Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
  static constexpr Mat3 diag(double a, double b, double d) { return {a, 0, 0, 0, b, 0, 0, 0, d}; }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
constexpr Mat3 operator-(Mat3 a) { return a *= -1.0; }
constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }
constexpr Mat3 operator*(Mat3 a, double s) { return a *= s; }

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

constexpr Mat3 transpose(const Mat3& a) {
  return {a(0, 0), a(1, 0), a(2, 0), a(0, 1), a(1, 1), a(2, 1), a(0, 2), a(1, 2), a(2, 2)};
}

constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  return {a[0] * b[0], a[0] * b[1], a[0] * b[2], a[1] * b[0], a[1] * b[1],
          a[1] * b[2], a[2] * b[0], a[2] * b[1], a[2] * b[2]};
}

// Frobenius inner product <X, Y> = tr(X Y^T).
constexpr double frobenius(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 9; ++i) s += a.c[i] * b.c[i];
  return s;
}
inline double norm(const Mat3& a) { return std::sqrt(frobenius(a, a)); }

constexpr double tr(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }
constexpr Mat3 sym(const Mat3& a) { return 0.5 * (a + transpose(a)); }
constexpr Mat3 skw(const Mat3& a) { return 0.5 * (a - transpose(a)); }
constexpr Mat3 dev(const Mat3& a) { return a - (tr(a) / 3.0) * Mat3::identity(); }

// (X.v)_i = X_ij v_j
constexpr Vec3 apply_X_v(const Mat3& x, const Vec3& v) {
  return {dot(x.row(0), v), dot(x.row(1), v), dot(x.row(2), v)};
}
constexpr Vec3 operator*(const Mat3& x, const Vec3& v) { return apply_X_v(x, v); }

// Third-order tensor E_ijk stored with k fastest.
struct ThirdOrder {
  std::array<double, 27> c{};

  constexpr double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return c[9 * i + 3 * j + k];
  }
  constexpr double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c[9 * i + 3 * j + k];
  }
  // Slice E_i.. as a 3x3 tensor.
  constexpr Mat3 slice(std::size_t i) const {
    Mat3 m;
    for (std::size_t r = 0; r < 9; ++r) m.c[r] = c[9 * i + r];
    return m;
  }
  constexpr ThirdOrder& operator+=(const ThirdOrder& o) {
    for (std::size_t i = 0; i < 27; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr ThirdOrder& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend constexpr bool operator==(const ThirdOrder&, const ThirdOrder&) = default;
};

// (E:X)_i = E_ijk X_kj
constexpr Vec3 contract_E_X(const ThirdOrder& e, const Mat3& x) {
  const Mat3 xt = transpose(x);
  return {frobenius(e.slice(0), xt), frobenius(e.slice(1), xt), frobenius(e.slice(2), xt)};
}

// (E.v)_ij = E_ijk v_k
constexpr Mat3 apply_E_v(const ThirdOrder& e, const Vec3& v) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    const Mat3 s = e.slice(i);
    const Vec3 r = s * v;
    m(i, 0) = r[0];
    m(i, 1) = r[1];
    m(i, 2) = r[2];
  }
  return m;
}

// Levi-Civita symbol.
constexpr double epsilon(std::size_t i, std::size_t j, std::size_t k) {
  return static_cast<double>((static_cast<int>(i) - static_cast<int>(j)) *
                             (static_cast<int>(j) - static_cast<int>(k)) *
                             (static_cast<int>(k) - static_cast<int>(i))) /
         2.0;
}

// (anti v)_ij = -eps_ijk v_k, so that anti(v).w = v x w.
constexpr Mat3 anti(const Vec3& v) { return {0.0, -v[2], v[1], v[2], 0.0, -v[0], -v[1], v[0], 0.0}; }

// Default relative Frobenius tolerance for skewness.
inline constexpr double kSkewTolerance = 1e-12;

bool is_symmetric(const Mat3& a, double tol = kSkewTolerance);
bool is_skew(const Mat3& a, double tol = kSkewTolerance);
bool is_traceless(const Mat3& a, double tol = kSkewTolerance);

// (axl A)_k = -1/2 eps_ijk A_ij. Throws InvalidArgument when A is not skew
// within `tol` relative to its norm.
Vec3 axl(const Mat3& a, double tol = kSkewTolerance);

// Orthogonal split X = dev sym X + skw X + tr(X)/3 id.
struct CartanParts {
  Mat3 devsym;
  Mat3 skew;
  Mat3 spherical;
};

CartanParts cartan_decompose(const Mat3& x);

// id - n (x) n; n must be a unit vector to 1e-12.
Mat3 tangential_projector(const Vec3& n);

}  // namespace costress
