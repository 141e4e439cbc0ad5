#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "minkowski/isometry.hpp"
#include "minkowski/lorentz.hpp"

namespace testing_support {

using minkowski::Mat3;
using minkowski::RigidMotion;
using minkowski::Vec3L;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611ULL);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

// Rejection sampling in a box; future or past with equal odds.
inline Vec3L random_timelike(std::mt19937_64& g) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (;;) {
    const Vec3L v{d(g), d(g), d(g)};
    if (minkowski::lorentz_dot(v, v) < -1e-3) return v;
  }
}

// Orthochronous proper isometry built from the three boost families.
inline Mat3 random_pp_matrix(std::mt19937_64& g) {
  std::uniform_real_distribution<double> ang(-M_PI, M_PI), rap(-1.5, 1.5);
  return minkowski::boost_timelike(ang(g)) * minkowski::boost_spacelike(rap(g)) *
         minkowski::boost_lightlike(rap(g)) * minkowski::boost_timelike(ang(g));
}

inline RigidMotion random_pp_motion(std::mt19937_64& g) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  return RigidMotion(random_pp_matrix(g), Vec3L{d(g), d(g), d(g)});
}

inline void expect_vec_near(const Vec3L& a, const Vec3L& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace testing_support
