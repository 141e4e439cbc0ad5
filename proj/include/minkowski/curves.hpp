#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "minkowski/isometry.hpp"
#include "minkowski/lorentz.hpp"

namespace minkowski {

using CurveFn = std::function<Vec3L(double)>;

// A curve with evaluators for its position and first derivatives. Missing
// derivatives are produced by Richardson-extrapolated central differences.
class CurveJet {
 public:
  static CurveJet analytic(CurveFn pos, CurveFn d1, CurveFn d2, CurveFn d3, double t_min, double t_max,
                           CurveFn d4 = {});
  // h_fd <= 0 selects 1e-4 * (t_max - t_min).
  static CurveJet from_position(CurveFn pos, double t_min, double t_max, double h_fd = 0.0);

  Vec3L position(double t) const { return pos_(t); }
  Vec3L d1(double t) const;
  Vec3L d2(double t) const;
  Vec3L d3(double t) const;
  Vec3L d4(double t) const;

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double fd_step() const { return h_fd_; }
  bool contains(double t) const { return t >= t_min_ && t <= t_max_; }
  bool has_analytic_derivatives() const { return static_cast<bool>(d1_); }

  // The image curve under a rigid motion, keeping the same parameter.
  CurveJet transformed(const RigidMotion& m) const;

 private:
  CurveJet() = default;
  CurveFn pos_, d1_, d2_, d3_, d4_;
  double t_min_ = 0.0, t_max_ = 1.0, h_fd_ = 1e-4;
};

// Richardson-extrapolated central difference of order 1..4 of f at t.
Vec3L fd_derivative(const CurveFn& f, double t, double h, int order);
double fd_derivative(const std::function<double(double)>& f, double t, double h);

CausalClass classify_curve(const CurveJet& jet, double t);

// Unit-speed reparametrization with s = 0 at t0.
CurveJet reparam_arclength(const CurveJet& jet, double t0);
// Pseudo-arc-length (|beta''| = 1) reparametrization of a lightlike curve.
CurveJet reparam_pseudo_arclength(const CurveJet& jet, double t0);

enum class FrenetCase { Timelike, SpacelikeSpN, SpacelikeTlN, SpacelikeLlN, Lightlike };
std::string_view to_string(FrenetCase c);

struct FrenetFrame {
  Vec3L T, N, B;
  FrenetCase frenet_case = FrenetCase::Timelike;
  std::optional<double> kappa;
  double tau = 0.0;
};

FrenetFrame frenet(const CurveJet& jet, double s);

// Frenet matrix coefficients: returns (T', N', B') predicted from the frame.
std::array<Vec3L, 3> frenet_system(const FrenetFrame& f);

struct CurvatureTorsion {
  double kappa = 0.0;
  double tau = 0.0;
};

CurvatureTorsion curvature_torsion_general(const CurveJet& jet, double t);

enum class PlaneCase { SpacelikePlane, TimelikePlaneSpacelikeCurve, TimelikePlaneTimelikeCurve, LightlikePlane };

// Unit-speed planar curve of constant curvature |a| (for LightlikePlane, a is
// the parabola coefficient and b is unused).
CurveJet generate_constant_curvature(PlaneCase plane_case, double a, double b, double s_min = -5.0,
                                     double s_max = 5.0);

struct AngleCheck {
  double kappa = 0.0;
  double abs_dphi = 0.0;
};

AngleCheck theorem_angle_check(const CurveJet& jet, const Vec3L& v, double s);

bool is_helix(std::span<const CurvatureTorsion> samples);

struct BertrandFit {
  double A = 0.0;
  double B = 0.0;
  double max_residual = 0.0;
  // The samples also satisfy a nontrivial relation A k + B t = 0.
  bool helix_relation = false;
};

std::optional<BertrandFit> bertrand_fit(std::span<const CurvatureTorsion> samples);

}  // namespace minkowski
