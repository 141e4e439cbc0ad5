#include <cmath>

#include "minkowski/curves.hpp"
#include "minkowski/error.hpp"
#include "support.hpp"

using namespace minkowski;
using testing_support::expect_vec_near;

namespace {

CurveJet mixed_curve() {
  return CurveJet::analytic([](double t) { return Vec3L{std::cosh(t), t * t, std::sinh(t)}; },
                            [](double t) { return Vec3L{std::sinh(t), 2 * t, std::cosh(t)}; },
                            [](double t) { return Vec3L{std::cosh(t), 2.0, std::sinh(t)}; },
                            [](double t) { return Vec3L{std::sinh(t), 0.0, std::cosh(t)}; }, -2, 2);
}

// (r cos(w t), r sin(w t), c t)
CurveJet helix(double r, double w, double c, double t0 = -3, double t1 = 3) {
  return CurveJet::analytic(
      [=](double t) { return Vec3L{r * std::cos(w * t), r * std::sin(w * t), c * t}; },
      [=](double t) { return Vec3L{-r * w * std::sin(w * t), r * w * std::cos(w * t), c}; },
      [=](double t) { return Vec3L{-r * w * w * std::cos(w * t), -r * w * w * std::sin(w * t), 0.0}; },
      [=](double t) { return Vec3L{r * w * w * w * std::sin(w * t), -r * w * w * w * std::cos(w * t), 0.0}; }, t0,
      t1, [=](double t) { return Vec3L{r * w * w * w * w * std::cos(w * t), r * w * w * w * w * std::sin(w * t), 0.0}; });
}

// Frame derivatives by central differences of the frame fields themselves.
void expect_frenet_system(const CurveJet& jet, double s, double tol) {
  const double h = 1e-3;
  const FrenetFrame f = frenet(jet, s), fp = frenet(jet, s + h), fm = frenet(jet, s - h);
  const auto pred = frenet_system(f);
  expect_vec_near((fp.T - fm.T) / (2 * h), pred[0], tol);
  expect_vec_near((fp.N - fm.N) / (2 * h), pred[1], tol);
  expect_vec_near((fp.B - fm.B) / (2 * h), pred[2], tol);
}

}  // namespace

TEST(ClassifyCurve, MixedCausality) {
  const CurveJet c = mixed_curve();
  EXPECT_EQ(classify_curve(c, 1.0), CausalClass::Spacelike);
  EXPECT_EQ(classify_curve(c, 0.0), CausalClass::Timelike);
  EXPECT_EQ(classify_curve(c, 0.5), CausalClass::Lightlike);
  EXPECT_EQ(classify_curve(c, -0.5), CausalClass::Lightlike);
  EXPECT_THROW(classify_curve(c, 3.0), DomainError);
}

TEST(Reparam, TimelikeLine) {
  const Vec3L p{1, 2, 3}, v{0, 0, 2};
  const CurveJet line = CurveJet::analytic([=](double t) { return p + t * v; }, [=](double) { return v; },
                                           [](double) { return Vec3L{}; }, [](double) { return Vec3L{}; }, -1, 1);
  const CurveJet b = reparam_arclength(line, 0.0);
  for (double s : {-1.5, -0.2, 0.0, 0.9, 1.9}) {
    expect_vec_near(b.position(s), p + (s / 2) * v, 1e-12);
    EXPECT_NEAR(lorentz_dot(b.d1(s), b.d1(s)), -1.0, 1e-12);
  }
}

TEST(Reparam, CircleHasUnitSpeedAndLength) {
  const double r = 1.7;
  const CurveJet c = helix(r, 1.0, 0.0, 0.0, 2 * M_PI);
  const CurveJet b = reparam_arclength(c, 0.0);
  EXPECT_NEAR(b.t_max() - b.t_min(), 2 * M_PI * r, 1e-10);
  for (int k = 0; k <= 20; ++k) {
    const double s = b.t_min() + (b.t_max() - b.t_min()) * k / 20;
    EXPECT_NEAR(lorentz_dot(b.d1(s), b.d1(s)), 1.0, 1e-8);
    expect_vec_near(b.position(s), c.position(s / r), 1e-9);
  }
}

TEST(Reparam, UnitSpeedInputIsIdentity) {
  const CurveJet c = generate_constant_curvature(PlaneCase::TimelikePlaneTimelikeCurve, 1.3, 0.2, -1, 1);
  const CurveJet b = reparam_arclength(c, 0.25);
  for (double s : {-1.0, -0.3, 0.4, 0.7}) expect_vec_near(b.position(s), c.position(s + 0.25), 1e-10);
}

TEST(Reparam, CausalChangeRejected) {
  EXPECT_THROW(reparam_arclength(mixed_curve(), 0.0), DomainError);
  EXPECT_THROW(reparam_arclength(mixed_curve(), 0.5), DomainError);
}

TEST(PseudoArc, UnitHelixUnchanged) {
  const CurveJet c = helix(1, 1, 1);
  const CurveJet b = reparam_pseudo_arclength(c, 0.5);
  for (double s : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
    expect_vec_near(b.position(s), c.position(s + 0.5), 1e-9);
    EXPECT_NEAR(lorentz_dot(b.d2(s), b.d2(s)), 1.0, 1e-6);
  }
}

TEST(PseudoArc, DoubledSpeedHalvesRate) {
  const CurveJet c = helix(1, 2, 2);
  const CurveJet b = reparam_pseudo_arclength(c, 0.0);
  for (double s : {-2.0, 0.3, 1.5}) {
    expect_vec_near(b.position(s), c.position(s / 2), 1e-9);
    EXPECT_NEAR(lorentz_dot(b.d2(s), b.d2(s)), 1.0, 1e-6);
  }
}

TEST(PseudoArc, Idempotent) {
  const CurveJet b = reparam_pseudo_arclength(helix(1, 2, 2), 0.0);
  const CurveJet bb = reparam_pseudo_arclength(b, 0.0);
  for (double s : {-1.0, 0.5, 2.0}) expect_vec_near(bb.position(s), b.position(s), 1e-9);
}

TEST(PseudoArc, RejectsNonLightlike) {
  EXPECT_THROW(reparam_pseudo_arclength(helix(2, 1, 1), 0.0), DomainError);
}

TEST(Frenet, TimelikeHyperbola) {
  const double a = 1.5;
  const CurveJet c = CurveJet::analytic(
      [=](double s) { return Vec3L{0, std::cosh(a * s) / a, std::sinh(a * s) / a}; },
      [=](double s) { return Vec3L{0, std::sinh(a * s), std::cosh(a * s)}; },
      [=](double s) { return a * Vec3L{0, std::cosh(a * s), std::sinh(a * s)}; },
      [=](double s) { return a * a * Vec3L{0, std::sinh(a * s), std::cosh(a * s)}; }, -1, 1);
  for (double s : {-0.7, 0.0, 0.4}) {
    const FrenetFrame f = frenet(c, s);
    EXPECT_EQ(f.frenet_case, FrenetCase::Timelike);
    ASSERT_TRUE(f.kappa);
    EXPECT_NEAR(*f.kappa, a, 1e-10);
    EXPECT_NEAR(f.tau, 0.0, 1e-10);
    EXPECT_NEAR(lorentz_dot(f.T, f.T), -1.0, 1e-10);
    EXPECT_NEAR(lorentz_dot(f.N, f.N), 1.0, 1e-10);
    EXPECT_NEAR(lorentz_dot(f.B, f.B), 1.0, 1e-10);
    EXPECT_NEAR(lorentz_dot(f.T, f.N), 0.0, 1e-10);
    EXPECT_NEAR(lorentz_dot(f.N, f.B), 0.0, 1e-10);
  }
}

TEST(Frenet, SpacelikeCircle) {
  const double r = 2.5;
  const CurveJet c = generate_constant_curvature(PlaneCase::SpacelikePlane, 1 / r, 0.0);
  const FrenetFrame f = frenet(c, 0.3);
  EXPECT_EQ(f.frenet_case, FrenetCase::SpacelikeSpN);
  EXPECT_NEAR(*f.kappa, 1 / r, 1e-12);
  EXPECT_NEAR(f.tau, 0.0, 1e-12);
}

TEST(Frenet, LightlikeHelix) {
  const CurveJet c = helix(1, 1, 1);
  const FrenetFrame f = frenet(c, 0.8);
  EXPECT_EQ(f.frenet_case, FrenetCase::Lightlike);
  expect_vec_near(f.N, c.d2(0.8), 1e-12);
  EXPECT_NEAR(lorentz_dot(f.N, f.N), 1.0, 1e-12);
  EXPECT_NEAR(lorentz_dot(f.T, f.B), 1.0, 1e-12);
  EXPECT_NEAR(lorentz_dot(f.B, f.B), 0.0, 1e-12);
  EXPECT_NEAR(lorentz_dot(f.N, f.B), 0.0, 1e-12);
  EXPECT_FALSE(f.kappa);
}

TEST(Frenet, StraightLineRejected) {
  const CurveJet line = CurveJet::analytic([](double t) { return Vec3L{t, 0, 0}; },
                                           [](double) { return kE1; }, [](double) { return Vec3L{}; },
                                           [](double) { return Vec3L{}; }, -1, 1);
  EXPECT_THROW(frenet(line, 0.0), DomainError);
}

TEST(Frenet, SystemResidualAllCases) {
  // Timelike: helix with |c| > r w, arc-length reparametrized.
  const CurveJet tl = reparam_arclength(helix(1, 1, 2, -2, 2), 0.0);
  EXPECT_EQ(frenet(tl, 0.3).frenet_case, FrenetCase::Timelike);
  expect_frenet_system(tl, 0.3, 1e-5);
  // Spacelike with spacelike normal: helix with |c| < r w.
  const CurveJet sp = reparam_arclength(helix(2, 1, 1), 0.0);
  EXPECT_EQ(frenet(sp, 0.5).frenet_case, FrenetCase::SpacelikeSpN);
  expect_frenet_system(sp, 0.5, 1e-5);
  // Spacelike with timelike normal: (t, cosh t, sinh t)-type hyperbola twisted out of plane.
  const CurveJet tn = reparam_arclength(
      CurveJet::analytic([](double t) { return Vec3L{0.5 * t, std::sinh(t), std::cosh(t)}; },
                         [](double t) { return Vec3L{0.5, std::cosh(t), std::sinh(t)}; },
                         [](double t) { return Vec3L{0.0, std::sinh(t), std::cosh(t)}; },
                         [](double t) { return Vec3L{0.0, std::cosh(t), std::sinh(t)}; }, -1, 1),
      0.0);
  EXPECT_EQ(frenet(tn, 0.2).frenet_case, FrenetCase::SpacelikeTlN);
  expect_frenet_system(tn, 0.2, 1e-5);
  // Spacelike with lightlike normal.
  const CurveJet ln = generate_constant_curvature(PlaneCase::LightlikePlane, 0.5, 0.0, -2, 2);
  EXPECT_EQ(frenet(ln, 0.4).frenet_case, FrenetCase::SpacelikeLlN);
  expect_frenet_system(ln, 0.4, 1e-5);
  // Lightlike.
  const CurveJet ll = reparam_pseudo_arclength(helix(1, 2, 2), 0.0);
  EXPECT_EQ(frenet(ll, 0.6).frenet_case, FrenetCase::Lightlike);
  expect_frenet_system(ll, 0.6, 1e-5);
}

TEST(CurvatureTorsionGeneral, Examples) {
  const CurveJet line = CurveJet::analytic([](double t) { return Vec3L{0.2 * t, 0, t}; },
                                           [](double) { return Vec3L{0.2, 0, 1}; }, [](double) { return Vec3L{}; },
                                           [](double) { return Vec3L{}; }, -1, 1);
  EXPECT_NEAR(curvature_torsion_general(line, 0.3).kappa, 0.0, 1e-15);

  const double a = 0.8;
  const CurveJet fast = CurveJet::analytic(
      [=](double t) { return Vec3L{0, std::cosh(2 * a * t) / a, std::sinh(2 * a * t) / a}; },
      [=](double t) { return 2.0 * Vec3L{0, std::sinh(2 * a * t), std::cosh(2 * a * t)}; },
      [=](double t) { return 4 * a * Vec3L{0, std::cosh(2 * a * t), std::sinh(2 * a * t)}; },
      [=](double t) { return 8 * a * a * Vec3L{0, std::sinh(2 * a * t), std::cosh(2 * a * t)}; }, -1, 1);
  EXPECT_NEAR(curvature_torsion_general(fast, 0.4).kappa, a, 1e-10);

  // (t/2, cosh t, sinh t) against the position-only Frenet pipeline.
  const CurveJet c = CurveJet::from_position(
      [](double t) { return Vec3L{0.5 * t, std::cosh(t), std::sinh(t)}; }, -1, 1);
  for (double t0 : {-0.4, 0.0, 0.3}) {
    const CurvatureTorsion g = curvature_torsion_general(c, t0);
    const FrenetFrame f = frenet(reparam_arclength(c, t0), 0.0);
    EXPECT_NEAR(g.kappa, *f.kappa, 1e-6);
    EXPECT_NEAR(g.tau, f.tau, 1e-6);
  }
  EXPECT_THROW(curvature_torsion_general(helix(2, 1, 1), 0.0), DomainError);
}

TEST(ConstantCurvature, Generators) {
  for (double s : {-2.0, 0.0, 1.0}) {
    const FrenetFrame f = frenet(generate_constant_curvature(PlaneCase::TimelikePlaneTimelikeCurve, 2.0, 0.3), s);
    EXPECT_NEAR(*f.kappa, 2.0, 1e-8);
    const FrenetFrame g = frenet(generate_constant_curvature(PlaneCase::TimelikePlaneSpacelikeCurve, -0.7, 0.1), s);
    EXPECT_EQ(g.frenet_case, FrenetCase::SpacelikeTlN);
    EXPECT_NEAR(*g.kappa, 0.7, 1e-8);
  }
  const double r = 3.0;
  const CurveJet circle = generate_constant_curvature(PlaneCase::SpacelikePlane, 1 / r, 0.0);
  for (double s : {-4.0, 0.5, 3.3}) {
    const Vec3L p = circle.position(s);
    EXPECT_NEAR(std::hypot(p.x, p.y), r, 1e-12);
    EXPECT_EQ(p.z, 0.0);
  }
  const CurveJet par = generate_constant_curvature(PlaneCase::LightlikePlane, 0.0, 0.0);
  for (double s : {-1.0, 2.0}) expect_vec_near(par.d2(s), kE2 + kE3, 0.0);
  EXPECT_THROW(generate_constant_curvature(PlaneCase::SpacelikePlane, 0.0, 0.0), DomainError);
}

TEST(AngleCheck, HyperbolaAndLine) {
  for (double a : {1.0, 3.0}) {
    const CurveJet c = generate_constant_curvature(PlaneCase::TimelikePlaneTimelikeCurve, a, 0.0, -1, 1);
    const AngleCheck r = theorem_angle_check(c, kE3, 0.2);
    EXPECT_NEAR(r.kappa, a, 1e-10);
    EXPECT_NEAR(r.abs_dphi, a, 1e-5);
  }
  const CurveJet line = CurveJet::analytic([](double t) { return Vec3L{0, 0.3 * t, t}; },
                                           [](double) { return Vec3L{0, 0.3, 1}; }, [](double) { return Vec3L{}; },
                                           [](double) { return Vec3L{}; }, -1, 1);
  const AngleCheck r = theorem_angle_check(line, kE3, 0.0);
  EXPECT_EQ(r.kappa, 0.0);
  EXPECT_NEAR(r.abs_dphi, 0.0, 1e-5);
}

TEST(Helix, Detection) {
  const CurveJet tl = reparam_arclength(helix(1, 1, 2, -2, 2), 0.0);
  std::vector<CurvatureTorsion> kt;
  for (int k = 0; k <= 20; ++k) {
    const FrenetFrame f = frenet(tl, -1.0 + 0.1 * k);
    kt.push_back({*f.kappa, f.tau});
  }
  EXPECT_TRUE(is_helix(kt));
  std::vector<CurvatureTorsion> planar{{1.0, 0.0}, {2.0, 0.0}, {0.5, 0.0}};
  EXPECT_TRUE(is_helix(planar));
  std::mt19937_64 g(1);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (auto& s : kt) s.tau *= 1.0 + noise(g);
  EXPECT_FALSE(is_helix(kt));
}

TEST(Bertrand, Fits) {
  const double k0 = 0.8, t0 = -0.6;
  std::vector<CurvatureTorsion> cst(5, CurvatureTorsion{k0, t0});
  const auto f = bertrand_fit(cst);
  ASSERT_TRUE(f);
  EXPECT_NEAR(f->A, k0 / (k0 * k0 + t0 * t0), 1e-12);
  EXPECT_NEAR(f->B, t0 / (k0 * k0 + t0 * t0), 1e-12);

  std::vector<CurvatureTorsion> planar(4, CurvatureTorsion{2.0, 0.0});
  const auto p = bertrand_fit(planar);
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->A, 0.5, 1e-12);
  EXPECT_NEAR(p->B, 0.0, 1e-12);

  std::vector<CurvatureTorsion> none;
  for (int k = 0; k <= 10; ++k) {
    const double s = 0.1 * k;
    none.push_back({1 + s * s, s});
  }
  EXPECT_FALSE(bertrand_fit(none));

  std::vector<CurvatureTorsion> affine;
  for (int k = 0; k <= 10; ++k) {
    const double kappa = 0.5 + 0.2 * k;
    affine.push_back({kappa, (1 - 0.3 * kappa) / 0.7});
  }
  const auto a = bertrand_fit(affine);
  ASSERT_TRUE(a);
  EXPECT_NEAR(a->A, 0.3, 1e-9);
  EXPECT_NEAR(a->B, 0.7, 1e-9);
  EXPECT_FALSE(a->helix_relation);
}

TEST(Properties, RegularityOfCausalCurves) {
  const CurveJet c = mixed_curve();
  for (int k = 0; k <= 40; ++k) {
    const double t = -2 + 0.1 * k;
    if (classify_curve(c, t) != CausalClass::Spacelike) EXPECT_GT(euclid_norm(c.d1(t)), 1e-6);
  }
}

TEST(Properties, TorsionVanishesIffPlanar) {
  const std::vector<CurveJet> planar{
      generate_constant_curvature(PlaneCase::SpacelikePlane, 0.7, 0.0),
      generate_constant_curvature(PlaneCase::TimelikePlaneTimelikeCurve, 1.2, 0.0, -1, 1),
      generate_constant_curvature(PlaneCase::TimelikePlaneSpacelikeCurve, 0.9, 0.0, -1, 1)};
  const std::vector<CurveJet> twisted{reparam_arclength(helix(2, 1, 1), 0.0),
                                      reparam_arclength(helix(1, 1, 2, -2, 2), 0.0)};
  for (const auto& c : planar)
    for (double s : {-0.5, 0.5}) {
      EXPECT_NEAR(det3(c.d1(s), c.d2(s), c.d3(s)), 0.0, 1e-12);
      EXPECT_NEAR(frenet(c, s).tau, 0.0, 1e-10);
    }
  for (const auto& c : twisted)
    for (double s : {-0.5, 0.5}) {
      EXPECT_GT(std::abs(det3(c.d1(s), c.d2(s), c.d3(s))), 1e-3);
      EXPECT_GT(std::abs(frenet(c, s).tau), 1e-3);
    }
}

TEST(Properties, RigidMotionInvariance) {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> d(-0.6, 0.6);
  int done = 0;
  while (done < 25) {
    const double a1 = d(g), a2 = d(g), b1 = d(g), w = 1.0 + std::abs(d(g));
    const CurveJet base = CurveJet::analytic(
        [=](double t) { return Vec3L{a1 * std::sin(w * t) + a2 * t * t, b1 * std::cos(t) + 0.3 * t, 3 * t}; },
        [=](double t) { return Vec3L{a1 * w * std::cos(w * t) + 2 * a2 * t, -b1 * std::sin(t) + 0.3, 3.0}; },
        [=](double t) { return Vec3L{-a1 * w * w * std::sin(w * t) + 2 * a2, -b1 * std::cos(t), 0.0}; },
        [=](double t) { return Vec3L{-a1 * w * w * w * std::cos(w * t), b1 * std::sin(t), 0.0}; }, -1, 1);
    const RigidMotion m = testing_support::random_pp_motion(g);
    try {
      const CurveJet c1 = reparam_arclength(base, 0.0);
      const CurveJet c2 = reparam_arclength(base.transformed(m), 0.0);
      for (double s : {-0.3, 0.0, 0.3}) {
        const FrenetFrame f1 = frenet(c1, s), f2 = frenet(c2, s);
        EXPECT_NEAR(*f1.kappa, *f2.kappa, 1e-6);
        EXPECT_NEAR(std::abs(f1.tau), std::abs(f2.tau), 1e-6);
      }
      ++done;
    } catch (const DomainError&) {
    }
  }
}
