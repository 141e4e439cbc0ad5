#include "minkowski/error.hpp"
#include "minkowski/lorentz.hpp"
#include "support.hpp"

using namespace minkowski;
using testing_support::expect_vec_near;

TEST(LorentzDot, Examples) {
  EXPECT_EQ(lorentz_dot(kE3, kE3), -1.0);
  EXPECT_EQ(lorentz_dot(kE2 + kE3, kE2 + kE3), 0.0);
  EXPECT_EQ(lorentz_dot(Vec3L{1, 1, 1}, Vec3L{1, 1, 1}), 1.0);
}

TEST(LorentzDot, SymmetricAndBilinear) {
  auto& g = testing_support::rng();
  for (int k = 0; k < 200; ++k) {
    std::uniform_real_distribution<double> d(-5, 5);
    const Vec3L u{d(g), d(g), d(g)}, v{d(g), d(g), d(g)}, w{d(g), d(g), d(g)};
    const double a = d(g);
    EXPECT_DOUBLE_EQ(lorentz_dot(u, v), lorentz_dot(v, u));
    EXPECT_NEAR(lorentz_dot(a * u + w, v), a * lorentz_dot(u, v) + lorentz_dot(w, v), 1e-11);
  }
}

TEST(CausalClass, Vectors) {
  EXPECT_EQ(causal_class(kE1), CausalClass::Spacelike);
  EXPECT_EQ(causal_class(kE2), CausalClass::Spacelike);
  EXPECT_EQ(causal_class(kE3), CausalClass::Timelike);
  EXPECT_EQ(causal_class(kE2 + kE3), CausalClass::Lightlike);
  EXPECT_EQ(causal_class(Vec3L{}), CausalClass::Spacelike);
  EXPECT_EQ(causal_class(kE1 + kE2 + kE3), CausalClass::Spacelike);
}

TEST(CausalClass, ToleranceIsScaleInvariant) {
  const Vec3L v{3e8, 4e8, 5e8};
  EXPECT_EQ(causal_class(v), CausalClass::Lightlike);
  EXPECT_EQ(causal_class(v * 1e-9), CausalClass::Lightlike);
  EXPECT_EQ(causal_class(Vec3L{3, 4, 5 + 1e-6}), CausalClass::Timelike);
}

TEST(CausalClass, Subspaces) {
  EXPECT_EQ(causal_class(Subspace::plane(kE1, kE2)), CausalClass::Spacelike);
  EXPECT_EQ(causal_class(Subspace::plane(kE1, kE3)), CausalClass::Timelike);
  EXPECT_EQ(causal_class(Subspace::plane(kE2, kE3)), CausalClass::Timelike);
  EXPECT_EQ(causal_class(Subspace::plane(kE1, kE2 + kE3)), CausalClass::Lightlike);
  EXPECT_EQ(causal_class(Subspace::plane(kE1, kE1 + kE2 + kE3)), CausalClass::Lightlike);
  EXPECT_EQ(causal_class(Subspace::plane(kE2 + kE3, kE3)), CausalClass::Timelike);
  EXPECT_EQ(causal_class(Subspace::line(kE2 + kE3)), CausalClass::Lightlike);
  EXPECT_EQ(causal_class(Subspace::line(kE3)), CausalClass::Timelike);
}

TEST(CausalClass, DegenerateGeneratorsRejected) {
  EXPECT_THROW(Subspace::plane(kE1, 2.0 * kE1), DomainError);
  EXPECT_THROW(Subspace::line(Vec3L{}), DomainError);
}

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(norm(kE3), 1.0);
  EXPECT_DOUBLE_EQ(norm(Vec3L{0, 3, 5}), 4.0);
  EXPECT_DOUBLE_EQ(norm(kE2 + kE3), 0.0);
}

TEST(Cross, Examples) {
  expect_vec_near(cross(Vec3L{1, 2, 3}, Vec3L{1, 2, 3}), Vec3L{}, 0.0);
  expect_vec_near(cross(kE1, kE2), Vec3L{0, 0, -1}, 0.0);
  const Vec3L w{1, 2, 3};
  // Determinant of the matrix with columns E1, E2, w is w_z.
  const double det_oracle = w.z;
  EXPECT_DOUBLE_EQ(lorentz_dot(cross(kE1, kE2), w), det_oracle);
  EXPECT_DOUBLE_EQ(det3(kE1, kE2, w), det_oracle);
  EXPECT_DOUBLE_EQ(det_oracle, 3.0);
}

TEST(Cross, OrthogonalAndDeterminantIdentity) {
  std::uniform_real_distribution<double> d(-4, 4);
  auto& g = testing_support::rng();
  for (int k = 0; k < 500; ++k) {
    const Vec3L u{d(g), d(g), d(g)}, v{d(g), d(g), d(g)}, w{d(g), d(g), d(g)};
    const Vec3L c = cross(u, v);
    EXPECT_NEAR(lorentz_dot(c, u), 0.0, 1e-12 * 64);
    EXPECT_NEAR(lorentz_dot(c, v), 0.0, 1e-12 * 64);
    EXPECT_NEAR(lorentz_dot(c, w), det3(u, v, w), 1e-11);
    expect_vec_near(cross(v, u), -c, 0.0);
  }
}

TEST(Cross, VanishesExactlyOnProportionalPairs) {
  const Vec3L u{1, -2, 0.5};
  expect_vec_near(cross(u, -3.0 * u), Vec3L{}, 1e-15);
  EXPECT_GT(euclid_norm(cross(u, u + kE1)), 0.1);
}

TEST(Cross, LiesInPlaneIffLightlike) {
  // Lightlike plane: the cross product is the null direction of the plane.
  const Vec3L u = kE1, v = kE2 + kE3;
  const Vec3L c = cross(u, v);
  EXPECT_NEAR(det3(u, v, c), 0.0, 1e-15);
  // Timelike plane: it is not.
  EXPECT_GT(std::abs(det3(kE1, kE3, cross(kE1, kE3))), 0.5);
}

TEST(TimelikeCone, Examples) {
  EXPECT_TRUE(same_timelike_cone(kE3, 2.0 * kE3));
  EXPECT_FALSE(same_timelike_cone(kE3, -kE3));
  EXPECT_TRUE(same_timelike_cone(kE3, Vec3L{0, std::sinh(1.0), std::cosh(1.0)}));
  EXPECT_THROW(same_timelike_cone(kE1, kE3), DomainError);
}

TEST(HyperbolicAngle, Examples) {
  EXPECT_DOUBLE_EQ(hyperbolic_angle(kE3, kE3), 0.0);
  for (double t : {-2.0, -0.3, 0.7, 1.9})
    EXPECT_NEAR(hyperbolic_angle(Vec3L{0, std::sinh(t), std::cosh(t)}, kE3), std::abs(t), 1e-12);
  EXPECT_NEAR(hyperbolic_angle(2.0 * kE3, 5.0 * kE3), 0.0, 1e-12);
  EXPECT_THROW(hyperbolic_angle(kE3, -kE3), DomainError);
  EXPECT_THROW(hyperbolic_angle(kE1, kE3), DomainError);
}

TEST(FutureDirected, Examples) {
  EXPECT_TRUE(future_directed(kE3));
  EXPECT_FALSE(future_directed(-kE3));
  EXPECT_TRUE(future_directed(kE2 + kE3));
  EXPECT_THROW(future_directed(kE1), DomainError);
}

TEST(Properties, ReversedCauchySchwarzAndTriangle) {
  std::mt19937_64 g(7);
  for (int k = 0; k < 20000; ++k) {
    const Vec3L u = testing_support::random_timelike(g), v = testing_support::random_timelike(g);
    const double lhs = std::abs(lorentz_dot(u, v)), rhs = norm(u) * norm(v);
    EXPECT_GE(lhs, rhs * (1 - 1e-12));
    if (same_timelike_cone(u, v)) EXPECT_GE(norm(u + v), (norm(u) + norm(v)) * (1 - 1e-12));
  }
  const Vec3L u{0.3, 0.2, 2.0};
  EXPECT_NEAR(std::abs(lorentz_dot(u, 3.5 * u)), norm(u) * norm(3.5 * u), 1e-12);
  EXPECT_NEAR(norm(u + 3.5 * u), norm(u) + norm(3.5 * u), 1e-12);
}

TEST(Properties, CrossNormAndHyperbolicAngle) {
  std::mt19937_64 g(11);
  int checked = 0;
  while (checked < 1000) {
    Vec3L u = testing_support::random_timelike(g), v = testing_support::random_timelike(g);
    if (u.z < 0) u = -u;
    if (v.z < 0) v = -v;
    const double phi = hyperbolic_angle(u, v);
    const Vec3L c = cross(u, v);
    const double lhs = lorentz_dot(c, c);
    const double rhs = std::pow(norm(u) * norm(v) * std::sinh(phi), 2);
    EXPECT_NEAR(lhs, rhs, 1e-8 * (1 + rhs));
    ++checked;
  }
}

TEST(Properties, LightlikePairsDependentIffOrthogonal) {
  auto& g = testing_support::rng();
  for (int k = 0; k < 200; ++k) {
    const double a = testing_support::uniform(0, 2 * M_PI), b = testing_support::uniform(0, 2 * M_PI);
    const double s = testing_support::uniform(0.5, 3.0);
    const Vec3L u{std::cos(a), std::sin(a), 1.0}, v = s * Vec3L{std::cos(b), std::sin(b), 1.0};
    const bool dependent = euclid_norm(euclid_cross(u, v)) <= 1e-9 * euclid_norm(u) * euclid_norm(v);
    const bool orthogonal = std::abs(lorentz_dot(u, v)) <= 1e-9 * euclid_norm(u) * euclid_norm(v);
    EXPECT_EQ(dependent, orthogonal);
    EXPECT_EQ(causal_class(u), CausalClass::Lightlike);
    EXPECT_NEAR(lorentz_dot(u, s * u), 0.0, 1e-12);
  }
  (void)g;
}

TEST(Properties, PlaneCharacterFromEuclideanNormal) {
  std::uniform_real_distribution<double> d(-2, 2);
  auto& g = testing_support::rng();
  for (int k = 0; k < 500; ++k) {
    const Vec3L u{d(g), d(g), d(g)}, v{d(g), d(g), d(g)};
    const Vec3L n = euclid_cross(u, v);
    if (euclid_norm(n) < 1e-3) continue;
    const double q = lorentz_dot(n, n);
    if (std::abs(q) < 1e-6 * euclid_dot(n, n)) continue;
    const CausalClass plane = causal_class(Subspace::plane(u, v));
    EXPECT_EQ(plane, q < 0 ? CausalClass::Spacelike : CausalClass::Timelike);
  }
  EXPECT_EQ(causal_class(euclid_cross(kE1, kE2 + kE3)), CausalClass::Lightlike);
}

TEST(Properties, UnitTimelikeNormalIsStretched) {
  std::uniform_real_distribution<double> d(-2, 2);
  auto& g = testing_support::rng();
  int seen = 0;
  while (seen < 300) {
    const Vec3L u{d(g), d(g), 0.3 * d(g)}, v{d(g), d(g), 0.3 * d(g)};
    if (euclid_norm(euclid_cross(u, v)) < 1e-2) continue;
    if (causal_class(Subspace::plane(u, v)) != CausalClass::Spacelike) continue;
    const Vec3L c = cross(u, v);
    const Vec3L n = c / norm(c);
    EXPECT_NEAR(lorentz_dot(n, n), -1.0, 1e-10);
    EXPECT_GE(euclid_norm(n), 1.0 - 1e-12);
    ++seen;
  }
}
