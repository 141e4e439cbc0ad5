#include "minkowski/cmc_rotational.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "minkowski/error.hpp"

namespace minkowski {

namespace {

using State = std::array<double, 4>;  // r, r', a, b

struct Rhs {
  double H, c, d;
  bool riemann;

  double rpp(double r, double rp) const {
    if (riemann) return (-1.0 + (c * c + d * d) * r * r * r * r + rp * rp) / r;
    return rotational_second_derivative(H, r, rp);
  }
  State operator()(const State& y) const { return {y[1], rpp(y[0], y[1]), c * y[0] * y[0], d * y[0] * y[0]}; }
};

State axpy(const State& y, double h, const State& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

State rk4_step(const Rhs& f, const State& y, double h) {
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * h, k1));
  const State k3 = f(axpy(y, 0.5 * h, k2));
  const State k4 = f(axpy(y, h, k3));
  State out;
  for (int i = 0; i < 4; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Distance of the state to the guard set; <= kProfileGuard stops integration.
double guard_margin(const Rhs& f, const State& y) {
  if (f.riemann) {
    const double r2 = y[0] * y[0];
    return std::min(min_w_over_r2(y[1], f.c * r2, f.d * r2), y[0]);
  }
  return std::min(y[1] * y[1] - 1.0, y[0]);
}

bool finite(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double x) { return std::isfinite(x); });
}

ProfileSolution integrate(const ProfileODEParams& p, bool riemann) {
  if (!(p.h > 0)) throw DomainError("profile integration: step must be positive");
  if (!(p.r0 > 0)) throw DomainError("profile integration: initial radius must be positive");
  if (p.s1 == p.s0) throw DomainError("profile integration: empty span");
  const Rhs f{p.H, p.c, p.d, riemann};
  State y{p.r0, p.rp0, p.a0, p.b0};
  if (!(guard_margin(f, y) > kProfileGuard))
    throw DomainError(riemann ? "integrate_riemann: initial data not spacelike (W <= 0 for some v)"
                              : "integrate_rotational: initial data requires |r'| > 1");
  const long n = std::max(1L, std::lround(std::abs(p.s1 - p.s0) / p.h));
  const double h = (p.s1 - p.s0) / static_cast<double>(n);

  ProfileSolution sol;
  sol.params = p;
  sol.params.h = std::abs(h);
  sol.riemann = riemann;
  auto record = [&](double s, const State& st) {
    sol.s.push_back(s);
    sol.r.push_back(st[0]);
    sol.rp.push_back(st[1]);
    sol.a.push_back(st[2]);
    sol.b.push_back(st[3]);
    const double rpp = f.rpp(st[0], st[1]);
    double res;
    if (riemann) {
      const double r2 = st[0] * st[0];
      res = -1.0 + (p.c * p.c + p.d * p.d) * r2 * r2 + st[1] * st[1] - st[0] * rpp;
      if (sampled_min_w(st[0], st[1], p.c * r2, p.d * r2) <= 0.0) sol.spacelike_violation = true;
    } else {
      res = rotational_identity_residual(p.H, st[0], st[1], rpp);
    }
    sol.max_residual = std::max(sol.max_residual, std::abs(res));
  };
  record(p.s0, y);
  for (long k = 0; k < n; ++k) {
    const State next = rk4_step(f, y, h);
    if (!finite(next) || !(guard_margin(f, next) > kProfileGuard)) {
      sol.truncated = true;
      sol.note = "integration stopped at the guard band (r'^2 -> 1 or r -> 0)";
      break;
    }
    y = next;
    record(p.s0 + h * static_cast<double>(k + 1), y);
  }
  return sol;
}

}  // namespace

CatenoidSample catenoid_profile(double s) {
  if (!(s > 0)) throw DomainError("catenoid_profile: s must be positive");
  const double r = std::sinh(s), rp = std::cosh(s), rpp = std::sinh(s);
  return {r, -1.0 + rp * rp - r * rpp};
}

SurfaceChart catenoid_chart(ParamRect domain) {
  return SurfaceChart::analytic(
      [](double s, double v) {
        const double sh = std::sinh(s), ch = std::cosh(s), c = std::cos(v), n = std::sin(v);
        return ChartJet{{sh * c, sh * n, s},   {ch * c, ch * n, 1.0},   {-sh * n, sh * c, 0.0},
                        {sh * c, sh * n, 0.0}, {-ch * n, ch * c, 0.0}, {-sh * c, -sh * n, 0.0}};
      },
      domain);
}

double rotational_second_derivative(double H, double r, double rp) {
  const double w = rp * rp - 1.0;
  return (w - 2.0 * H * r * w * std::sqrt(w)) / r;
}

double rotational_identity_residual(double H, double r, double rp, double rpp) {
  const double w = -1.0 + rp * rp;
  return H - (-1.0 + rp * rp - r * rpp) / (2.0 * r * std::pow(w, 1.5));
}

ProfileSolution integrate_rotational(const ProfileODEParams& p) {
  if (p.c != 0.0 || p.d != 0.0) throw DomainError("integrate_rotational: center drift must be zero");
  if (!(std::abs(p.rp0) > 1.0)) throw DomainError("integrate_rotational: initial data requires |r'| > 1");
  return integrate(p, false);
}

ProfileSolution integrate_riemann(const ProfileODEParams& p) {
  if (p.H != 0.0) throw DomainError("integrate_riemann: only the minimal case is supported");
  return integrate(p, true);
}

double min_w_over_r2(double rp, double ap, double bp) {
  const double rho = std::hypot(ap, bp);
  double m = 0.0;
  if (rp - rho > 0)
    m = (rp - rho) * (rp - rho);
  else if (rp + rho < 0)
    m = (rp + rho) * (rp + rho);
  return m - 1.0;
}

double sampled_min_w(double r, double rp, double ap, double bp, int n) {
  double m = INFINITY;
  for (int k = 0; k < n; ++k) {
    const double v = 2.0 * M_PI * k / n;
    const double q = ap * std::cos(v) + bp * std::sin(v) + rp;
    m = std::min(m, r * r * (q * q - 1.0));
  }
  return m;
}

SurfaceChart profile_chart(const ProfileSolution& sol, double v0, double v1) {
  if (sol.s.size() < 2) throw DomainError("profile_chart: solution has fewer than two samples");
  auto data = std::make_shared<const ProfileSolution>(sol);
  const Rhs f{sol.params.H, sol.params.c, sol.params.d, sol.riemann};
  auto jet = [data, f](double u, double v) {
    const auto& s = data->s;
    const double h = s[1] - s[0];
    const long last = static_cast<long>(s.size()) - 1;
    const long k = std::clamp(std::lround((u - s[0]) / h), 0L, last);
    State y{data->r[k], data->rp[k], data->a[k], data->b[k]};
    const double delta = u - s[k];
    if (delta != 0.0) y = rk4_step(f, y, delta);
    const State dy = f(y);
    const double r = y[0], rp = y[1], rpp = dy[1];
    const double ap = dy[2], bp = dy[3];
    const double app = 2.0 * f.c * r * rp, bpp = 2.0 * f.d * r * rp;
    const double c = std::cos(v), n = std::sin(v);
    return ChartJet{{y[2] + r * c, y[3] + r * n, u},
                    {ap + rp * c, bp + rp * n, 1.0},
                    {-r * n, r * c, 0.0},
                    {app + rpp * c, bpp + rpp * n, 0.0},
                    {-rp * n, rp * c, 0.0},
                    {-r * c, -r * n, 0.0}};
  };
  return SurfaceChart::analytic(jet, ParamRect{sol.s.front(), sol.s.back(), v0, v1});
}

HyperbolicCap hyperbolic_cap_chart(double r, double R, bool translate) {
  if (!(r > 0) || !(R > 0)) throw DomainError("hyperbolic_cap_chart: r and R must be positive");
  HyperbolicCap cap{r, R, translate, hyperbolic_plane_chart(r, {}, ParamRect{-R, R, -R, R}), R, 0.0, 0.0};
  const double rim = std::sqrt(r * r + R * R);
  cap.cap_height = rim - r;
  cap.boundary_height = rim;
  if (translate) {
    cap.chart = hyperbolic_plane_chart(r, {0.0, 0.0, -rim}, ParamRect{-R, R, -R, R});
    cap.boundary_height = 0.0;
  }
  return cap;
}

SurfaceChart hyperbolic_foliation_chart(double kappa, std::function<RadiusJet(double)> radius, const Vec3L& c0,
                                        ParamRect domain) {
  if (!(kappa > 0)) throw DomainError("hyperbolic_foliation_chart: curvature must be positive");
  if (!radius) throw DomainError("hyperbolic_foliation_chart: missing radius function");
  return SurfaceChart::analytic(
      [=](double u, double v) {
        // Frame of (0, cosh(k u), sinh(k u)) / k: T' = k N, N' = k T, B constant.
        const Vec3L T{0.0, std::sinh(kappa * u), std::cosh(kappa * u)};
        const Vec3L N{0.0, std::cosh(kappa * u), std::sinh(kappa * u)};
        const Vec3L B = cross(T, N);
        const RadiusJet q = radius(u);
        const double rho = std::sqrt(4.0 + q.r * q.r);
        const double rho1 = q.r * q.r1 / rho;
        const double rho2 = (q.r1 * q.r1 + q.r * q.r2) / rho - q.r * q.r * q.r1 * q.r1 / (rho * rho * rho);
        const double c = std::cos(v), s = std::sin(v), k = kappa;
        ChartJet j;
        j.X = c0 + rho * T + q.r * (c * N + s * B);
        j.Xu = (rho1 + k * q.r * c) * T + (rho * k + q.r1 * c) * N + (q.r1 * s) * B;
        j.Xv = (-q.r * s) * N + (q.r * c) * B;
        j.Xuu = (rho2 + 2.0 * k * q.r1 * c + k * k * rho) * T + (2.0 * k * rho1 + (k * k * q.r + q.r2) * c) * N +
                (q.r2 * s) * B;
        j.Xuv = (-k * q.r * s) * T + (-q.r1 * s) * N + (q.r1 * c) * B;
        j.Xvv = (-q.r * c) * N + (-q.r * s) * B;
        return j;
      },
      domain);
}

}  // namespace minkowski
