#include "minkowski/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "minkowski/error.hpp"

namespace minkowski {

namespace {

constexpr double kDegenerateTol = 1e-10;
constexpr double kUmbilicTol = 1e-8;

Vec3L richardson(const std::function<Vec3L(double)>& stencil, double h) {
  return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

}  // namespace

SurfaceChart SurfaceChart::analytic(ChartJetFn jet, ParamRect domain) {
  if (!jet) throw DomainError("SurfaceChart: missing evaluator");
  return SurfaceChart(std::move(jet), domain);
}

SurfaceChart SurfaceChart::from_position(SurfaceFn X, ParamRect domain, double h) {
  if (!X) throw DomainError("SurfaceChart: missing evaluator");
  if (h <= 0) h = 1e-4 * std::max(domain.u1 - domain.u0, domain.v1 - domain.v0);
  const double h2 = 10.0 * h;
  auto jet = [X, h, h2](double u, double v) {
    ChartJet j;
    j.X = X(u, v);
    j.Xu = richardson([&](double k) { return (X(u + k, v) - X(u - k, v)) / (2 * k); }, h);
    j.Xv = richardson([&](double k) { return (X(u, v + k) - X(u, v - k)) / (2 * k); }, h);
    j.Xuu = richardson([&](double k) { return (X(u + k, v) - 2.0 * j.X + X(u - k, v)) / (k * k); }, h2);
    j.Xvv = richardson([&](double k) { return (X(u, v + k) - 2.0 * j.X + X(u, v - k)) / (k * k); }, h2);
    j.Xuv = richardson(
        [&](double k) { return (X(u + k, v + k) - X(u + k, v - k) - X(u - k, v + k) + X(u - k, v - k)) / (4 * k * k); },
        h2);
    return j;
  };
  return SurfaceChart(jet, domain);
}

SurfaceChart SurfaceChart::transformed(const RigidMotion& m) const {
  auto jet = [m, f = jet_](double u, double v) {
    ChartJet j = f(u, v);
    return ChartJet{m.apply_point(j.X),      m.apply_vector(j.Xu),  m.apply_vector(j.Xv),
                    m.apply_vector(j.Xuu), m.apply_vector(j.Xuv), m.apply_vector(j.Xvv)};
  };
  return SurfaceChart(jet, domain_);
}

FirstForm first_form(const ChartJet& j) {
  FirstForm I{lorentz_dot(j.Xu, j.Xu), lorentz_dot(j.Xu, j.Xv), lorentz_dot(j.Xv, j.Xv)};
  const double scale = euclid_dot(j.Xu, j.Xu) * euclid_dot(j.Xv, j.Xv);
  if (scale == 0.0) throw DomainError("first_form: chart is not an immersion at this point");
  const double W = I.W();
  if (std::abs(W) <= kDegenerateTol * scale)
    I.type = CausalClass::Lightlike;
  else
    I.type = W > 0 ? CausalClass::Spacelike : CausalClass::Timelike;
  return I;
}

FirstForm first_form(const SurfaceChart& chart, double u, double v) { return first_form(chart.jet(u, v)); }

Vec3L gauss_map(const ChartJet& j) {
  const FirstForm I = first_form(j);
  if (I.type == CausalClass::Lightlike) throw DomainError("gauss_map: lightlike point has no unit normal");
  const Vec3L n = cross(j.Xu, j.Xv);
  Vec3L N = n / std::sqrt(std::abs(lorentz_dot(n, n)));
  if (I.type == CausalClass::Spacelike && N.z < 0) N = -N;
  return N;
}

Vec3L gauss_map(const SurfaceChart& chart, double u, double v) { return gauss_map(chart.jet(u, v)); }

SecondForm second_form(const SurfaceChart& chart, double u, double v) {
  const ChartJet j = chart.jet(u, v);
  const Vec3L N = gauss_map(j);
  return {lorentz_dot(N, j.Xuu), lorentz_dot(N, j.Xuv), lorentz_dot(N, j.Xvv)};
}

CurvatureData shape_and_curvatures(const ChartJet& j) {
  const FirstForm I = first_form(j);
  if (I.type == CausalClass::Lightlike) throw DomainError("shape_and_curvatures: lightlike point");
  const Vec3L N = gauss_map(j);
  const double e = lorentz_dot(N, j.Xuu), f = lorentz_dot(N, j.Xuv), g = lorentz_dot(N, j.Xvv);
  const double W = I.W();
  CurvatureData c;
  c.type = I.type;
  c.shape = {(I.G * e - I.F * f) / W, (I.G * f - I.F * g) / W, (I.E * f - I.F * e) / W, (I.E * g - I.F * f) / W};
  const double tr = c.shape[0] + c.shape[3];
  const double det = c.shape[0] * c.shape[3] - c.shape[1] * c.shape[2];
  c.H = -0.5 * tr;
  c.K = I.type == CausalClass::Spacelike ? -det : det;
  const double disc4 = 0.25 * tr * tr - det;
  const double tol = kUmbilicTol * (1.0 + c.H * c.H);
  const double half = 0.5 * tr;
  if (I.type == CausalClass::Spacelike) {
    const double root = std::sqrt(std::max(0.0, disc4));
    c.principal = std::make_pair(half + root, half - root);
    c.diagonalizable = true;
    c.umbilic = disc4 <= tol;
  } else {
    const double a = c.shape[0] - half, b = c.shape[1], cc = c.shape[2], d = c.shape[3] - half;
    const double dev2 = std::max({a * a, b * b, cc * cc, d * d});
    c.umbilic = dev2 <= tol;
    if (disc4 > tol) {
      const double root = std::sqrt(disc4);
      c.principal = std::make_pair(half + root, half - root);
      c.diagonalizable = true;
    } else if (disc4 < -tol) {
      c.diagonalizable = false;
    } else {
      c.principal = std::make_pair(half, half);
      c.diagonalizable = c.umbilic;
    }
  }
  return c;
}

CurvatureData shape_and_curvatures(const SurfaceChart& chart, double u, double v) {
  return shape_and_curvatures(chart.jet(u, v));
}

std::string_view to_string(SurfaceKind::Kind k) {
  switch (k) {
    case SurfaceKind::Kind::Plane:
      return "Plane";
    case SurfaceKind::Kind::HyperbolicPlane:
      return "HyperbolicPlane";
    case SurfaceKind::Kind::DeSitter:
      return "DeSitter";
    case SurfaceKind::Kind::Other:
      return "Other";
  }
  return "?";
}

SurfaceKind classify_totally_umbilical(const SurfaceChart& chart, int n) {
  if (n < 2) throw DomainError("classify_totally_umbilical: need at least a 2 x 2 sample grid");
  const ParamRect& d = chart.domain();
  struct Sample {
    Vec3L X, N;
    double H;
  };
  std::vector<Sample> s;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double u = d.u0 + (d.u1 - d.u0) * i / (n - 1);
      const double v = d.v0 + (d.v1 - d.v0) * k / (n - 1);
      const ChartJet j = chart.jet(u, v);
      const CurvatureData c = shape_and_curvatures(j);
      if (!c.umbilic) throw DomainError("classify_totally_umbilical: sample point is not umbilic");
      s.push_back({j.X, gauss_map(j), c.H});
    }
  double hmax = 0.0;
  for (const auto& p : s) hmax = std::max(hmax, std::abs(p.H));
  SurfaceKind out;
  if (hmax <= 1e-8) {
    out.kind = SurfaceKind::Kind::Plane;
    out.normal = s.front().N;
    out.offset = lorentz_dot(out.normal, s.front().X);
    for (const auto& p : s) {
      out.max_residual = std::max(out.max_residual, euclid_norm(p.N - out.normal));
      out.max_residual = std::max(out.max_residual, std::abs(lorentz_dot(out.normal, p.X) - out.offset));
    }
    if (out.max_residual > 1e-6) throw DomainError("classify_totally_umbilical: normal is not constant");
    return out;
  }
  // X - N/H is the common center of a pseudo-sphere of radius 1/|H|.
  Vec3L mean;
  for (const auto& p : s) mean += p.X - p.N / p.H;
  mean = mean / static_cast<double>(s.size());
  double q = 0.0;
  for (const auto& p : s) {
    const Vec3L c = p.X - p.N / p.H;
    out.max_residual = std::max(out.max_residual, euclid_norm(c - mean) / (1.0 + euclid_norm(mean)));
    q += lorentz_dot(p.X - mean, p.X - mean);
  }
  if (out.max_residual > 1e-6) throw DomainError("classify_totally_umbilical: inconsistent center");
  out.center = mean;
  out.r = std::sqrt(std::abs(q / static_cast<double>(s.size())));
  out.kind = q < 0 ? SurfaceKind::Kind::HyperbolicPlane : SurfaceKind::Kind::DeSitter;
  return out;
}

double mean_curvature_foliated(const SurfaceChart& chart, double u, double v) {
  const ChartJet j = chart.jet(u, v);
  const FirstForm I = first_form(j);
  if (I.type != CausalClass::Spacelike) throw DomainError("mean_curvature_foliated: point is not spacelike");
  const double P = I.E * det3(j.Xu, j.Xv, j.Xvv) - 2.0 * I.F * det3(j.Xu, j.Xv, j.Xuv) +
                   I.G * det3(j.Xu, j.Xv, j.Xuu);
  const double W = I.W();
  return P / (2.0 * W * std::sqrt(W));
}

double mean_curvature_foliated_reconciled(const SurfaceChart& chart, double u, double v) {
  const double h_fol = mean_curvature_foliated(chart, u, v);
  const ChartJet j = chart.jet(u, v);
  // The identity measures H with the opposite sign of the normal Xu x Xv.
  const double h = cross(j.Xu, j.Xv).z > 0 ? -h_fol : h_fol;
  const double ref = shape_and_curvatures(j).H;
  if (std::abs(h - ref) > 1e-8 * (1.0 + std::abs(ref)))
    throw DomainError("mean_curvature_foliated: determinant identity disagrees with the shape operator");
  return h;
}

double laplace_beltrami(const SurfaceChart& chart, const ParamGrid& grid, std::span<const double> field, int i,
                        int j) {
  if (field.size() != static_cast<std::size_t>(grid.nu) * static_cast<std::size_t>(grid.nv))
    throw DomainError("laplace_beltrami: field size does not match grid");
  if (i <= 0 || j <= 0 || i >= grid.nu - 1 || j >= grid.nv - 1)
    throw DomainError("laplace_beltrami: boundary grid point");
  struct Coef {
    double uu, uv, vv, sqrtW;
  };
  auto coef = [&](double u, double v) {
    const FirstForm I = first_form(chart, u, v);
    const double W = I.W();
    if (I.type == CausalClass::Lightlike) throw DomainError("laplace_beltrami: degenerate metric");
    const double s = std::sqrt(std::abs(W)) / W;
    return Coef{s * I.G, -s * I.F, s * I.E, std::sqrt(std::abs(W))};
  };
  auto F = [&](int a, int b) { return field[grid.index(a, b)]; };
  const double hu = grid.hu, hv = grid.hv;
  const double u = grid.u(i), v = grid.v(j);
  const Coef e = coef(u + 0.5 * hu, v), w = coef(u - 0.5 * hu, v);
  const Coef n = coef(u, v + 0.5 * hv), s = coef(u, v - 0.5 * hv);
  const Coef ue = coef(u + hu, v), uw = coef(u - hu, v), vn = coef(u, v + hv), vs = coef(u, v - hv);
  const double t_uu = (e.uu * (F(i + 1, j) - F(i, j)) - w.uu * (F(i, j) - F(i - 1, j))) / (hu * hu);
  const double t_vv = (n.vv * (F(i, j + 1) - F(i, j)) - s.vv * (F(i, j) - F(i, j - 1))) / (hv * hv);
  const double t_uv = (ue.uv * (F(i + 1, j + 1) - F(i + 1, j - 1)) - uw.uv * (F(i - 1, j + 1) - F(i - 1, j - 1))) /
                      (4.0 * hu * hv);
  const double t_vu = (vn.uv * (F(i + 1, j + 1) - F(i - 1, j + 1)) - vs.uv * (F(i + 1, j - 1) - F(i - 1, j - 1))) /
                      (4.0 * hu * hv);
  return (t_uu + t_vv + t_uv + t_vu) / coef(u, v).sqrtW;
}

SurfaceChart plane_chart(const Vec3L& origin, const Vec3L& a, const Vec3L& b, ParamRect domain) {
  return SurfaceChart::analytic(
      [=](double u, double v) { return ChartJet{origin + u * a + v * b, a, b, {}, {}, {}}; }, domain);
}

SurfaceChart hyperbolic_plane_chart(double r, const Vec3L& center, ParamRect domain) {
  if (!(r > 0)) throw DomainError("hyperbolic_plane_chart: radius must be positive");
  const double r2 = r * r;
  GraphFunction g;
  g.f = [r2](double x, double y) { return std::sqrt(r2 + x * x + y * y); };
  g.fx = [r2](double x, double y) { return x / std::sqrt(r2 + x * x + y * y); };
  g.fy = [r2](double x, double y) { return y / std::sqrt(r2 + x * x + y * y); };
  g.fxx = [r2](double x, double y) { return (r2 + y * y) / std::pow(r2 + x * x + y * y, 1.5); };
  g.fxy = [r2](double x, double y) { return -x * y / std::pow(r2 + x * x + y * y, 1.5); };
  g.fyy = [r2](double x, double y) { return (r2 + x * x) / std::pow(r2 + x * x + y * y, 1.5); };
  return graph_chart(g, domain).transformed(RigidMotion(Mat3::identity(), center));
}

SurfaceChart hyperbolic_plane_polar_chart(double r, const Vec3L& center, ParamRect domain) {
  if (!(r > 0)) throw DomainError("hyperbolic_plane_polar_chart: radius must be positive");
  return SurfaceChart::analytic(
      [=](double u, double v) {
        const double ch = std::cosh(u), sh = std::sinh(u), c = std::cos(v), s = std::sin(v);
        return ChartJet{center + r * Vec3L{sh * c, sh * s, ch}, r * Vec3L{ch * c, ch * s, sh},
                        r * Vec3L{-sh * s, sh * c, 0.0},       r * Vec3L{sh * c, sh * s, ch},
                        r * Vec3L{-ch * s, ch * c, 0.0},       r * Vec3L{-sh * c, -sh * s, 0.0}};
      },
      domain);
}

SurfaceChart de_sitter_chart(double r, const Vec3L& center, ParamRect domain) {
  if (!(r > 0)) throw DomainError("de_sitter_chart: radius must be positive");
  return SurfaceChart::analytic(
      [=](double u, double v) {
        const double ch = std::cosh(v), sh = std::sinh(v), c = std::cos(u), s = std::sin(u);
        return ChartJet{center + r * Vec3L{ch * c, ch * s, sh}, r * Vec3L{-ch * s, ch * c, 0.0},
                        r * Vec3L{sh * c, sh * s, ch},         r * Vec3L{-ch * c, -ch * s, 0.0},
                        r * Vec3L{-sh * s, sh * c, 0.0},       r * Vec3L{ch * c, ch * s, sh}};
      },
      domain);
}

SurfaceChart light_cone_chart(ParamRect domain) {
  return SurfaceChart::analytic(
      [](double u, double v) {
        const double c = std::cos(v), s = std::sin(v);
        return ChartJet{u * Vec3L{c, s, 1.0}, {c, s, 1.0}, u * Vec3L{-s, c, 0.0}, {}, {-s, c, 0.0},
                        -u * Vec3L{c, s, 0.0}};
      },
      domain);
}

SurfaceChart graph_chart(const GraphFunction& fn, ParamRect domain) {
  if (!fn.f || !fn.fx || !fn.fy || !fn.fxx || !fn.fxy || !fn.fyy) throw DomainError("graph_chart: missing derivative");
  return SurfaceChart::analytic(
      [fn](double x, double y) {
        return ChartJet{{x, y, fn.f(x, y)},        {1.0, 0.0, fn.fx(x, y)},  {0.0, 1.0, fn.fy(x, y)},
                        {0.0, 0.0, fn.fxx(x, y)}, {0.0, 0.0, fn.fxy(x, y)}, {0.0, 0.0, fn.fyy(x, y)}};
      },
      domain);
}

SurfaceChart graph_chart(std::function<double(double, double)> f, ParamRect domain, double h) {
  if (!f) throw DomainError("graph_chart: missing function");
  return SurfaceChart::from_position([f](double x, double y) { return Vec3L{x, y, f(x, y)}; }, domain, h);
}

SurfaceChart null_scroll_chart(const CurveJet& alpha, double t0, double t1) {
  return SurfaceChart::analytic(
      [alpha](double s, double t) {
        const FrenetFrame fr = frenet(alpha, s);
        if (fr.frenet_case != FrenetCase::Lightlike) throw DomainError("null_scroll_chart: base curve is not lightlike");
        const double tau = fr.tau;
        // tau' = <alpha'''', B> + <alpha''', B'> with B' = -tau N.
        const Vec3L a3 = alpha.d3(s);
        const double dtau = lorentz_dot(alpha.d4(s), fr.B) - tau * lorentz_dot(a3, fr.N);
        ChartJet j;
        j.X = alpha.position(s) + t * fr.B;
        j.Xu = fr.T - (t * tau) * fr.N;
        j.Xv = fr.B;
        j.Xuu = (-t * tau * tau) * fr.T + (1.0 - t * dtau) * fr.N + (t * tau) * fr.B;
        j.Xuv = -tau * fr.N;
        return j;
      },
      ParamRect{alpha.t_min(), alpha.t_max(), t0, t1});
}

}  // namespace minkowski
