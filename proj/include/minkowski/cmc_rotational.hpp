#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "minkowski/surfaces.hpp"

namespace minkowski {

struct ProfileODEParams {
  double H = 0.0;
  double c = 0.0, d = 0.0;
  double r0 = 1.0, rp0 = 2.0;
  double a0 = 0.0, b0 = 0.0;
  double s0 = 0.0, s1 = 1.0;
  double h = 1e-3;
};

struct ProfileSolution {
  ProfileODEParams params;
  bool riemann = false;
  std::vector<double> s, r, rp, a, b;
  double max_residual = 0.0;
  bool spacelike_violation = false;
  bool truncated = false;
  std::string note;
};

// Guard band of the integrator for r'^2 - 1 (or its Riemann analogue) and r.
inline constexpr double kProfileGuard = 1e-6;

struct CatenoidSample {
  double r = 0.0;
  double residual = 0.0;
};

CatenoidSample catenoid_profile(double s);
// X(s, v) = (sinh s cos v, sinh s sin v, s)
SurfaceChart catenoid_chart(ParamRect domain);

// r'' solved from the rotational mean-curvature identity.
double rotational_second_derivative(double H, double r, double rp);
// H - (-1 + r'^2 - r r'') / (2 r (r'^2 - 1)^(3/2))
double rotational_identity_residual(double H, double r, double rp, double rpp);

ProfileSolution integrate_rotational(const ProfileODEParams& p);
ProfileSolution integrate_riemann(const ProfileODEParams& p);

// min over v of W / r^2 for X = (a + r cos v, b + r sin v, u), given r', a', b'.
double min_w_over_r2(double rp, double ap, double bp);
// Sampled version over n equally spaced angles.
double sampled_min_w(double r, double rp, double ap, double bp, int n = 64);

// Chart X(u, v) = (a(u) + r(u) cos v, b(u) + r(u) sin v, u) over the profile
// samples. Off-node values come from one integrator sub-step.
SurfaceChart profile_chart(const ProfileSolution& sol, double v0 = 0.0, double v1 = 6.283185307179586);

struct HyperbolicCap {
  double r = 1.0, R = 1.0;
  bool translated = false;
  SurfaceChart chart;
  double boundary_radius = 1.0;
  double boundary_height = 0.0;  // height of the boundary circle in this chart
  double cap_height = 0.0;       // vertex to boundary plane
};

// Graph of sqrt(r^2 + x^2 + y^2) over the disk of radius R (chart rectangle is
// the bounding square); translated so the boundary lies in z = 0 on request.
HyperbolicCap hyperbolic_cap_chart(double r, double R, bool translate = false);

struct RadiusJet {
  double r, r1, r2;
};

// X = c0 + sqrt(4 + r^2) T(u) + r (cos v N(u) + sin v B) over the unit-speed
// timelike hyperbola of curvature kappa with frame T, N, B.
SurfaceChart hyperbolic_foliation_chart(double kappa, std::function<RadiusJet(double)> radius, const Vec3L& c0,
                                        ParamRect domain);

}  // namespace minkowski
