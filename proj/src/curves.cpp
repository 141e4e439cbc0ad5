#include "minkowski/curves.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "minkowski/error.hpp"

namespace minkowski {

namespace {

// Step multipliers for derivative orders 1..4: higher orders amplify rounding.
constexpr std::array<double, 5> kOrderStep{0.0, 1.0, 10.0, 50.0, 100.0};

Vec3L central_stencil(const CurveFn& f, double t, double h, int order) {
  switch (order) {
    case 1:
      return (f(t + h) - f(t - h)) / (2.0 * h);
    case 2:
      return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    case 3:
      return (f(t + 2 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(t + 2 * h) - 4.0 * f(t + h) + 6.0 * f(t) - 4.0 * f(t - h) + f(t - 2 * h)) / (h * h * h * h);
    default:
      throw DomainError("fd_derivative: unsupported order");
  }
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGLx{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                     -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                     0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGLw{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss_integral(const F& g, double a, double b) {
  const double m = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += kGLw[i] * g(m + r * kGLx[i]);
  return s * r;
}

// Speed g(t) = ds/dt of a reparametrization, with its first two derivatives.
struct Speed {
  double g, g1, g2;
};

struct Reparam {
  CurveJet base;
  std::function<Speed(double)> speed;
  std::vector<double> t_nodes, s_nodes;

  double s_of_t_in(std::size_t k, double t) const {
    return s_nodes[k] + gauss_integral([&](double x) { return speed(x).g; }, t_nodes[k], t);
  }

  double phi(double s) const {
    const auto it = std::upper_bound(s_nodes.begin(), s_nodes.end(), s);
    std::size_t k = it == s_nodes.begin() ? 0 : static_cast<std::size_t>(it - s_nodes.begin()) - 1;
    k = std::min(k, s_nodes.size() - 2);
    const double w = (s - s_nodes[k]) / (s_nodes[k + 1] - s_nodes[k]);
    double t = t_nodes[k] + w * (t_nodes[k + 1] - t_nodes[k]);
    for (int it2 = 0; it2 < 30; ++it2) {
      const double dt = (s_of_t_in(k, t) - s) / speed(t).g;
      t -= dt;
      if (std::abs(dt) <= 4e-16 * (1.0 + std::abs(t))) break;
    }
    return t;
  }
};

CurveJet make_reparam(std::shared_ptr<const Reparam> rp) {
  auto pos = [rp](double s) { return rp->base.position(rp->phi(s)); };
  auto d1 = [rp](double s) {
    const double t = rp->phi(s);
    return rp->base.d1(t) / rp->speed(t).g;
  };
  auto d2 = [rp](double s) {
    const double t = rp->phi(s);
    const Speed sp = rp->speed(t);
    const double p1 = 1.0 / sp.g, p2 = -sp.g1 / (sp.g * sp.g * sp.g);
    return rp->base.d2(t) * (p1 * p1) + rp->base.d1(t) * p2;
  };
  auto d3 = [rp](double s) {
    const double t = rp->phi(s);
    const Speed sp = rp->speed(t);
    const double g = sp.g;
    const double p1 = 1.0 / g, p2 = -sp.g1 / (g * g * g);
    const double p3 = -sp.g2 / (g * g * g * g) + 3.0 * sp.g1 * sp.g1 / (g * g * g * g * g);
    return rp->base.d3(t) * (p1 * p1 * p1) + rp->base.d2(t) * (3.0 * p1 * p2) + rp->base.d1(t) * p3;
  };
  return CurveJet::analytic(pos, d1, d2, d3, rp->s_nodes.front(), rp->s_nodes.back());
}

std::shared_ptr<Reparam> build_table(const CurveJet& jet, double t0, std::function<Speed(double)> speed) {
  if (!jet.contains(t0)) throw DomainError("reparametrization: t0 outside the curve domain");
  auto rp = std::make_shared<Reparam>(Reparam{jet, std::move(speed), {}, {}});
  constexpr int kIntervals = 1024;
  const double a = jet.t_min(), b = jet.t_max();
  rp->t_nodes.resize(kIntervals + 1);
  rp->s_nodes.resize(kIntervals + 1);
  for (int k = 0; k <= kIntervals; ++k) rp->t_nodes[k] = a + (b - a) * k / kIntervals;
  rp->s_nodes[0] = 0.0;
  auto g = [&](double x) { return rp->speed(x).g; };
  for (int k = 0; k < kIntervals; ++k)
    rp->s_nodes[k + 1] = rp->s_nodes[k] + gauss_integral(g, rp->t_nodes[k], rp->t_nodes[k + 1]);
  const auto it = std::upper_bound(rp->t_nodes.begin(), rp->t_nodes.end(), t0);
  std::size_t k0 = std::min<std::size_t>(static_cast<std::size_t>(it - rp->t_nodes.begin()) - 1, kIntervals - 1);
  const double s0 = rp->s_of_t_in(k0, t0);
  for (auto& s : rp->s_nodes) s -= s0;
  return rp;
}

}  // namespace

Vec3L fd_derivative(const CurveFn& f, double t, double h, int order) {
  const Vec3L coarse = central_stencil(f, t, h, order);
  const Vec3L fine = central_stencil(f, t, 0.5 * h, order);
  return (4.0 * fine - coarse) / 3.0;
}

double fd_derivative(const std::function<double(double)>& f, double t, double h) {
  const double coarse = (f(t + h) - f(t - h)) / (2.0 * h);
  const double fine = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
  return (4.0 * fine - coarse) / 3.0;
}

CurveJet CurveJet::analytic(CurveFn pos, CurveFn d1, CurveFn d2, CurveFn d3, double t_min, double t_max,
                            CurveFn d4) {
  if (!pos || !d1 || !d2 || !d3) throw DomainError("CurveJet: missing evaluator");
  if (!(t_max > t_min)) throw DomainError("CurveJet: empty domain");
  CurveJet j;
  j.pos_ = std::move(pos);
  j.d1_ = std::move(d1);
  j.d2_ = std::move(d2);
  j.d3_ = std::move(d3);
  j.d4_ = std::move(d4);
  j.t_min_ = t_min;
  j.t_max_ = t_max;
  j.h_fd_ = 1e-4 * (t_max - t_min);
  return j;
}

CurveJet CurveJet::from_position(CurveFn pos, double t_min, double t_max, double h_fd) {
  if (!pos) throw DomainError("CurveJet: missing evaluator");
  if (!(t_max > t_min)) throw DomainError("CurveJet: empty domain");
  CurveJet j;
  j.pos_ = std::move(pos);
  j.t_min_ = t_min;
  j.t_max_ = t_max;
  j.h_fd_ = h_fd > 0 ? h_fd : 1e-4 * (t_max - t_min);
  return j;
}

Vec3L CurveJet::d1(double t) const { return d1_ ? d1_(t) : fd_derivative(pos_, t, h_fd_ * kOrderStep[1], 1); }

Vec3L CurveJet::d2(double t) const {
  if (d2_) return d2_(t);
  if (d1_) return fd_derivative(d1_, t, h_fd_ * kOrderStep[1], 1);
  return fd_derivative(pos_, t, h_fd_ * kOrderStep[2], 2);
}

Vec3L CurveJet::d3(double t) const {
  if (d3_) return d3_(t);
  if (d2_) return fd_derivative(d2_, t, h_fd_ * kOrderStep[1], 1);
  if (d1_) return fd_derivative(d1_, t, h_fd_ * kOrderStep[2], 2);
  return fd_derivative(pos_, t, h_fd_ * kOrderStep[3], 3);
}

Vec3L CurveJet::d4(double t) const {
  if (d4_) return d4_(t);
  if (d3_) return fd_derivative(d3_, t, h_fd_ * kOrderStep[1], 1);
  return fd_derivative(pos_, t, h_fd_ * kOrderStep[4], 4);
}

CurveJet CurveJet::transformed(const RigidMotion& m) const {
  CurveJet j = *this;
  j.pos_ = [m, f = pos_](double t) { return m.apply_point(f(t)); };
  auto wrap = [&m](const CurveFn& f) -> CurveFn {
    if (!f) return {};
    return [m, f](double t) { return m.apply_vector(f(t)); };
  };
  j.d1_ = wrap(d1_);
  j.d2_ = wrap(d2_);
  j.d3_ = wrap(d3_);
  j.d4_ = wrap(d4_);
  return j;
}

CausalClass classify_curve(const CurveJet& jet, double t) {
  if (!jet.contains(t)) throw DomainError("classify_curve: parameter outside domain");
  return causal_class(jet.d1(t));
}

CurveJet reparam_arclength(const CurveJet& jet, double t0) {
  const Vec3L v0 = jet.d1(t0);
  const CausalClass c0 = causal_class(v0);
  if (c0 == CausalClass::Lightlike || euclid_dot(v0, v0) == 0.0)
    throw DomainError("reparam_arclength: curve is not spacelike or timelike at t0");
  const double eps = c0 == CausalClass::Spacelike ? 1.0 : -1.0;
  auto speed = [jet, eps](double t) {
    const Vec3L a1 = jet.d1(t), a2 = jet.d2(t), a3 = jet.d3(t);
    const double g = std::sqrt(std::max(0.0, eps * lorentz_dot(a1, a1)));
    const double g1 = eps * lorentz_dot(a1, a2) / g;
    const double g2 = (eps * (lorentz_dot(a2, a2) + lorentz_dot(a1, a3)) - g1 * g1) / g;
    return Speed{g, g1, g2};
  };
  auto rp = build_table(jet, t0, speed);
  for (double t : rp->t_nodes) {
    const Vec3L a1 = jet.d1(t);
    if (!(eps * lorentz_dot(a1, a1) > 1e-10 * (1.0 + euclid_dot(a1, a1))))
      throw DomainError("reparam_arclength: causal type changes within the curve domain");
  }
  return make_reparam(rp);
}

CurveJet reparam_pseudo_arclength(const CurveJet& jet, double t0) {
  {
    const Vec3L a1 = jet.d1(t0);
    if (causal_class(a1) != CausalClass::Lightlike || euclid_dot(a1, a1) == 0.0)
      throw DomainError("reparam_pseudo_arclength: curve is not lightlike at t0");
  }
  auto speed = [jet](double t) {
    const Vec3L a2 = jet.d2(t), a3 = jet.d3(t), a4 = jet.d4(t);
    const double p = lorentz_dot(a2, a2);
    const double p1 = 2.0 * lorentz_dot(a2, a3);
    const double p2 = 2.0 * (lorentz_dot(a3, a3) + lorentz_dot(a2, a4));
    const double q = std::pow(p, 0.75);
    return Speed{std::pow(p, 0.25), p1 / (4.0 * q), p2 / (4.0 * q) - 3.0 * p1 * p1 / (16.0 * q * p)};
  };
  for (int k = 0; k <= 64; ++k) {
    const double t = jet.t_min() + (jet.t_max() - jet.t_min()) * k / 64;
    const Vec3L a2 = jet.d2(t);
    if (!(lorentz_dot(a2, a2) > 1e-10 * (1.0 + euclid_dot(a2, a2))))
      throw DomainError("reparam_pseudo_arclength: second derivative is lightlike or zero");
  }
  return make_reparam(build_table(jet, t0, speed));
}

std::string_view to_string(FrenetCase c) {
  switch (c) {
    case FrenetCase::Timelike:
      return "Timelike";
    case FrenetCase::SpacelikeSpN:
      return "SpacelikeSpN";
    case FrenetCase::SpacelikeTlN:
      return "SpacelikeTlN";
    case FrenetCase::SpacelikeLlN:
      return "SpacelikeLlN";
    case FrenetCase::Lightlike:
      return "Lightlike";
  }
  return "?";
}

namespace {

constexpr double kUnitTol = 1e-6;
constexpr double kCaseTol = 1e-9;
constexpr double kAmbiguousBand = 1e-6;

// The null vector B orthogonal to the unit spacelike `unit_orth` with
// <pair, B> = 1, where `pair` is null and also orthogonal to `unit_orth`.
Vec3L null_partner(const Vec3L& pair, const Vec3L& unit_orth) {
  const double oo = lorentz_dot(unit_orth, unit_orth);
  const Vec3L w = kE3 - (lorentz_dot(kE3, unit_orth) / oo) * unit_orth;
  const double c = lorentz_dot(pair, w);
  return w / c - (lorentz_dot(w, w) / (2.0 * c * c)) * pair;
}

}  // namespace

FrenetFrame frenet(const CurveJet& jet, double s) {
  if (!jet.contains(s)) throw DomainError("frenet: parameter outside domain");
  const Vec3L T = jet.d1(s), A = jet.d2(s), J = jet.d3(s);
  const double tt = lorentz_dot(T, T);
  const double te = euclid_dot(T, T);
  const double ae = euclid_dot(A, A);
  if (std::sqrt(ae) <= kCaseTol) throw DomainError("frenet: acceleration vanishes (straight line)");
  FrenetFrame f;
  f.T = T;

  if (std::abs(tt) <= kUnitTol * (1.0 + te)) {
    const double aa = lorentz_dot(A, A);
    if (std::abs(aa - 1.0) > kUnitTol) throw DomainError("frenet: lightlike curve not pseudo-arc-length parametrized");
    f.frenet_case = FrenetCase::Lightlike;
    f.N = A;
    f.B = null_partner(T, A);
    f.tau = lorentz_dot(J, f.B);
    return f;
  }
  if (std::abs(std::abs(tt) - 1.0) > kUnitTol) throw DomainError("frenet: curve not arc-length parametrized");

  if (tt < 0) {
    const double kappa = norm(A);
    f.frenet_case = FrenetCase::Timelike;
    f.kappa = kappa;
    f.N = A / kappa;
    f.B = cross(T, f.N);
    f.tau = lorentz_dot(J, f.B) / kappa;
    return f;
  }

  const double rel = lorentz_dot(A, A) / ae;
  if (std::abs(rel) <= kCaseTol) {
    f.frenet_case = FrenetCase::SpacelikeLlN;
    f.N = A;
    f.B = null_partner(A, T);
    f.tau = lorentz_dot(J, f.B);
    return f;
  }
  if (std::abs(rel) < kAmbiguousBand) throw DomainError("frenet: causal type of T' is ambiguous at tolerance");
  const double kappa = norm(A);
  f.kappa = kappa;
  f.N = A / kappa;
  f.B = cross(T, f.N);
  if (rel > 0) {
    f.frenet_case = FrenetCase::SpacelikeSpN;
    f.tau = -lorentz_dot(J, f.B) / kappa;
  } else {
    f.frenet_case = FrenetCase::SpacelikeTlN;
    f.tau = lorentz_dot(J, f.B) / kappa;
  }
  return f;
}

std::array<Vec3L, 3> frenet_system(const FrenetFrame& f) {
  const double k = f.kappa.value_or(0.0), t = f.tau;
  switch (f.frenet_case) {
    case FrenetCase::Timelike:
      return {k * f.N, k * f.T + t * f.B, -t * f.N};
    case FrenetCase::SpacelikeSpN:
      return {k * f.N, -k * f.T + t * f.B, t * f.N};
    case FrenetCase::SpacelikeTlN:
      return {k * f.N, k * f.T + t * f.B, t * f.N};
    case FrenetCase::SpacelikeLlN:
      return {f.N, t * f.N, -f.T - t * f.B};
    case FrenetCase::Lightlike:
      return {f.N, t * f.T - f.B, -t * f.N};
  }
  return {};
}

CurvatureTorsion curvature_torsion_general(const CurveJet& jet, double t) {
  const Vec3L a1 = jet.d1(t), a2 = jet.d2(t), a3 = jet.d3(t);
  if (causal_class(a1) != CausalClass::Timelike)
    throw DomainError("curvature_torsion_general: curve is not timelike at t");
  const Vec3L c = cross(a1, a2);
  const double c2 = std::abs(lorentz_dot(c, c));
  const double speed = std::sqrt(-lorentz_dot(a1, a1));
  CurvatureTorsion out;
  out.kappa = std::sqrt(c2) / (speed * speed * speed);
  if (c2 > 1e-24 * euclid_dot(a1, a1) * euclid_dot(a1, a1)) out.tau = det3(a1, a2, a3) / c2;
  return out;
}

CurveJet generate_constant_curvature(PlaneCase plane_case, double a, double b, double s_min, double s_max) {
  if (plane_case != PlaneCase::LightlikePlane && a == 0.0)
    throw DomainError("generate_constant_curvature: curvature parameter must be nonzero");
  switch (plane_case) {
    case PlaneCase::SpacelikePlane: {
      const double r = 1.0 / std::abs(a);
      auto ang = [=](double s) { return s / r + b; };
      return CurveJet::analytic(
          [=](double s) { return Vec3L{r * std::cos(ang(s)), r * std::sin(ang(s)), 0.0}; },
          [=](double s) { return Vec3L{-std::sin(ang(s)), std::cos(ang(s)), 0.0}; },
          [=](double s) { return Vec3L{-std::cos(ang(s)) / r, -std::sin(ang(s)) / r, 0.0}; },
          [=](double s) { return Vec3L{std::sin(ang(s)) / (r * r), -std::cos(ang(s)) / (r * r), 0.0}; }, s_min,
          s_max, [=](double s) { return Vec3L{std::cos(ang(s)), std::sin(ang(s)), 0.0} / (r * r * r); });
    }
    case PlaneCase::TimelikePlaneSpacelikeCurve:
      return CurveJet::analytic(
          [=](double s) { return Vec3L{0.0, std::sinh(a * s + b), std::cosh(a * s + b)} / a; },
          [=](double s) { return Vec3L{0.0, std::cosh(a * s + b), std::sinh(a * s + b)}; },
          [=](double s) { return a * Vec3L{0.0, std::sinh(a * s + b), std::cosh(a * s + b)}; },
          [=](double s) { return (a * a) * Vec3L{0.0, std::cosh(a * s + b), std::sinh(a * s + b)}; }, s_min, s_max,
          [=](double s) { return (a * a * a) * Vec3L{0.0, std::sinh(a * s + b), std::cosh(a * s + b)}; });
    case PlaneCase::TimelikePlaneTimelikeCurve:
      return CurveJet::analytic(
          [=](double s) { return Vec3L{0.0, std::cosh(a * s + b), std::sinh(a * s + b)} / a; },
          [=](double s) { return Vec3L{0.0, std::sinh(a * s + b), std::cosh(a * s + b)}; },
          [=](double s) { return a * Vec3L{0.0, std::cosh(a * s + b), std::sinh(a * s + b)}; },
          [=](double s) { return (a * a) * Vec3L{0.0, std::sinh(a * s + b), std::cosh(a * s + b)}; }, s_min, s_max,
          [=](double s) { return (a * a * a) * Vec3L{0.0, std::cosh(a * s + b), std::sinh(a * s + b)}; });
    case PlaneCase::LightlikePlane: {
      const double c = a;
      return CurveJet::analytic([=](double s) { return Vec3L{s, c * s + 0.5 * s * s, c * s + 0.5 * s * s}; },
                                [=](double s) { return Vec3L{1.0, c + s, c + s}; },
                                [](double) { return Vec3L{0.0, 1.0, 1.0}; }, [](double) { return Vec3L{}; }, s_min,
                                s_max, [](double) { return Vec3L{}; });
    }
  }
  throw DomainError("generate_constant_curvature: unknown plane case");
}

AngleCheck theorem_angle_check(const CurveJet& jet, const Vec3L& v, double s) {
  if (causal_class(v) != CausalClass::Timelike || !future_directed(v))
    throw DomainError("theorem_angle_check: reference vector must be future timelike");
  auto phi = [&](double x) {
    Vec3L T = jet.d1(x);
    if (T.z < 0) T = -T;
    return hyperbolic_angle(T, v);
  };
  AngleCheck out;
  out.kappa = norm(jet.d2(s));
  out.abs_dphi = std::abs(fd_derivative(std::function<double(double)>(phi), s, jet.fd_step()));
  return out;
}

bool is_helix(std::span<const CurvatureTorsion> samples) {
  if (samples.empty()) throw DomainError("is_helix: no samples");
  std::vector<double> r;
  r.reserve(samples.size());
  for (const auto& kt : samples) {
    if (!(kt.kappa > 0)) throw DomainError("is_helix: curvature must be positive");
    r.push_back(kt.tau / kt.kappa);
  }
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  double var = 0.0;
  for (double x : r) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(r.size()));
  return sd / (1.0 + std::abs(mean)) <= 1e-6;
}

std::optional<BertrandFit> bertrand_fit(std::span<const CurvatureTorsion> samples) {
  if (samples.size() < 3) throw DomainError("bertrand_fit: at least three samples required");
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd m(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, 0) = samples[i].kappa;
    m(i, 1) = samples[i].tau;
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::Vector2d x = m.completeOrthogonalDecomposition().solve(ones);
  const double res = (m * x - ones).cwiseAbs().maxCoeff();
  if (!(res <= 1e-6)) return std::nullopt;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto sv = svd.singularValues();
  return BertrandFit{x(0), x(1), res, sv(1) <= 1e-9 * sv(0)};
}

}  // namespace minkowski
