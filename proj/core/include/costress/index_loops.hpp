#pragma once

// Plain index-loop versions of the tensor operations. They spell out the
// component formulas literally and serve as the reference the optimized
// routines in tensor.hpp are checked against.

#include "costress/tensor.hpp"

namespace costress::index_loops {

inline Vec3 contract_E_X(const ThirdOrder& e, const Mat3& x) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i] += e(i, j, k) * x(k, j);
  return r;
}

inline Mat3 apply_E_v(const ThirdOrder& e, const Vec3& v) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r(i, j) += e(i, j, k) * v[k];
  return r;
}

inline Vec3 apply_X_v(const Mat3& x, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += x(i, j) * v[j];
  return r;
}

// (anti v)_ij = -eps_ijk v_k
inline Mat3 anti(const Vec3& v) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r(i, j) -= epsilon(i, j, k) * v[k];
  return r;
}

// (axl A)_k = -1/2 eps_ijk A_ij, no skewness check.
inline Vec3 axl(const Mat3& a) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[k] -= 0.5 * epsilon(i, j, k) * a(i, j);
  return r;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i] += epsilon(i, j, k) * a[j] * b[k];
  return r;
}

}  // namespace costress::index_loops
