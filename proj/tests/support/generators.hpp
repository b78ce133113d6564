#pragma once

// Seeded generators for property tests. Every case gets its own stream so a
// failure can be replayed from (seed, case index) alone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "costress/field.hpp"
#include "costress/tensor.hpp"

namespace costress::testing {

inline std::uint64_t case_seed(std::uint64_t seed, int index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo = -1.0, double hi = 1.0) { return rng_.uniform(lo, hi); }
  Vec3 vec(double lo = -1.0, double hi = 1.0) { return rng_.vec3(lo, hi); }
  Mat3 mat(double lo = -1.0, double hi = 1.0) { return rng_.mat3(lo, hi); }
  ThirdOrder third(double lo = -1.0, double hi = 1.0) { return rng_.third_order(lo, hi); }
  Vec3 unit() { return rng_.unit_vec3(); }
  Mat3 skew() { return costress::skw(mat()); }
  Mat3 trace_free() {
    Mat3 m = mat();
    return m - (tr(m) / 3.0) * Mat3::identity();
  }
  // Second gradient of some smooth field: symmetric in its last two slots.
  ThirdOrder hessian() {
    ThirdOrder h = third();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k) h(i, k, j) = h(i, j, k);
    return h;
  }
  // Point in the middle half of the unit cube, where finite-difference steps are not clipped.
  Vec3 interior() { return rng_.vec3(0.25, 0.75); }
  ConformalParams conformal() { return {vec(), vec(), vec(), real()}; }
  std::uint64_t seed() { return static_cast<std::uint64_t>(real(0.0, 1.0) * 9007199254740992.0); }

 private:
  SeededRng rng_;
};

// Runs `property` on `cases` independent generators; reports the failing case index.
inline void for_all(std::uint64_t seed, int cases, const std::function<void(Gen&)>& property) {
  for (int c = 0; c < cases; ++c) {
    SCOPED_TRACE("seed " + std::to_string(seed) + " case " + std::to_string(c));
    Gen g(case_seed(seed, c));
    property(g);
    if (::testing::Test::HasFatalFailure() || ::testing::Test::HasNonfatalFailure()) return;
  }
}

inline double max_abs(const Mat3& m) {
  double r = 0.0;
  for (double v : m.c) r = std::max(r, std::abs(v));
  return r;
}

inline double max_abs(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

}  // namespace costress::testing
