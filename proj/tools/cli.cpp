#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "minkowski/cmc_graph.hpp"
#include "minkowski/cmc_rotational.hpp"
#include "minkowski/curves.hpp"
#include "minkowski/error.hpp"
#include "minkowski/io.hpp"
#include "minkowski/isometry.hpp"
#include "minkowski/mesh.hpp"
#include "minkowski/surfaces.hpp"

namespace minkowski::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& s) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  if (b < e && *b == '+') ++b;
  const auto res = std::from_chars(b, e, x);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(x)) throw UsageError("malformed number: '" + s + "'");
  return x;
}

std::vector<double> parse_list(const std::string& s, char sep) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(parse_double(item));
  return out;
}

Vec3L parse_vec(const std::string& s) {
  const auto v = parse_list(s, ',');
  if (v.size() != 3) throw UsageError("expected three comma-separated numbers: '" + s + "'");
  return {v[0], v[1], v[2]};
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto v = parse_list(s, ':');
  if (v.size() != 2) throw UsageError("expected a range a:b, got '" + s + "'");
  return {v[0], v[1]};
}

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
Json vec_json(const Vec3L& v) { return Json::array({num(v.x), num(v.y), num(v.z)}); }

std::string digest(const std::vector<std::string>& args) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& a : args) {
    for (unsigned char c : a) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open output file '" + path + "'");
  return f;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw UsageError("at least two samples are required");
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[k] = a + (b - a) * k / (n - 1);
  return t;
}

struct Context {
  Json outputs = Json::object();
  Json warnings = Json::array();
  bool failed = false;
};

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string vec;
  std::vector<std::string> span;
};

void cmd_classify(const ClassifyArgs& a, Context& ctx) {
  if (a.vec.empty() == a.span.empty()) throw UsageError("classify needs exactly one of --vec or --span");
  if (!a.vec.empty()) {
    const Vec3L v = parse_vec(a.vec);
    const CausalClass c = causal_class(v);
    ctx.outputs["causal_class"] = to_string(c);
    ctx.outputs["lorentz_square"] = num(lorentz_dot(v, v));
    ctx.outputs["norm"] = num(norm(v));
    if (c != CausalClass::Spacelike) ctx.outputs["future_directed"] = future_directed(v);
    return;
  }
  if (a.span.size() > 2) throw UsageError("a subspace has one or two generators");
  const Subspace s = a.span.size() == 1 ? Subspace::line(parse_vec(a.span[0]))
                                        : Subspace::plane(parse_vec(a.span[0]), parse_vec(a.span[1]));
  ctx.outputs["dimension"] = s.dim();
  ctx.outputs["causal_class"] = to_string(causal_class(s));
  Json g = Json::array();
  for (double x : s.gram()) g.push_back(num(x));
  ctx.outputs["gram"] = g;
}

// ---------------------------------------------------------------- orbit

struct OrbitArgs {
  std::string axis = "timelike", p0 = "1,0,5", range = "0:6.283185307179586", csv;
  int samples = 64;
};

void cmd_orbit(const OrbitArgs& a, Context& ctx) {
  CausalClass axis;
  if (a.axis == "timelike")
    axis = CausalClass::Timelike;
  else if (a.axis == "spacelike")
    axis = CausalClass::Spacelike;
  else if (a.axis == "lightlike")
    axis = CausalClass::Lightlike;
  else
    throw UsageError("--axis must be timelike, spacelike or lightlike");
  const Vec3L p0 = parse_vec(a.p0);
  const auto [t0, t1] = parse_range(a.range);
  const auto t = linspace(t0, t1, a.samples);
  const auto pts = orbit(axis, p0, t);
  double res = 0.0;
  std::string relation;
  for (const auto& p : pts) {
    switch (axis) {
      case CausalClass::Timelike:
        relation = "x^2+y^2 = x0^2+y0^2, z = z0";
        res = std::max({res, std::abs(p.x * p.x + p.y * p.y - p0.x * p0.x - p0.y * p0.y), std::abs(p.z - p0.z)});
        break;
      case CausalClass::Spacelike:
        relation = "y^2-z^2 = y0^2-z0^2, x = x0";
        res = std::max({res, std::abs(p.y * p.y - p.z * p.z - p0.y * p0.y + p0.z * p0.z), std::abs(p.x - p0.x)});
        break;
      case CausalClass::Lightlike:
        if (std::abs(p0.y + p0.z) <= 1e-12 * (1.0 + std::abs(p0.y)) && p0.y != 0.0) {
          relation = "Y = y + x^2/(4y) - X^2/(4y)";
          res = std::max(res, std::abs(p.y - (p0.y + p0.x * p0.x / (4 * p0.y) - p.x * p.x / (4 * p0.y))));
        } else {
          relation = "<p,p> and <p,E2+E3> preserved";
          res = std::max({res, std::abs(lorentz_dot(p, p) - lorentz_dot(p0, p0)),
                          std::abs(lorentz_dot(p - p0, Vec3L{0, 1, 1}))});
        }
        break;
    }
  }
  ctx.outputs["samples"] = a.samples;
  ctx.outputs["relation"] = relation;
  ctx.outputs["max_relation_residual"] = num(res);
  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    write_polyline_csv(f, t, pts);
  }
}

// ---------------------------------------------------------------- curve

struct CurveArgs {
  std::string family = "helix", range = "-2:2", csv;
  double a = 1.0, b = 0.0, r = 1.0;
  int samples = 101;
};

void cmd_curve(const CurveArgs& a, Context& ctx) {
  const auto [t0, t1] = parse_range(a.range);
  if (!(t1 > t0)) throw UsageError("--range must be increasing");
  CurveJet jet = CurveJet::from_position([](double) { return Vec3L{}; }, 0, 1);
  bool frenet_available = true;
  const std::string& fam = a.family;
  if (fam == "circle") {
    jet = generate_constant_curvature(PlaneCase::SpacelikePlane, a.a, a.b, t0, t1);
  } else if (fam == "timelike-hyperbola") {
    jet = generate_constant_curvature(PlaneCase::TimelikePlaneTimelikeCurve, a.a, a.b, t0, t1);
  } else if (fam == "spacelike-hyperbola") {
    jet = generate_constant_curvature(PlaneCase::TimelikePlaneSpacelikeCurve, a.a, a.b, t0, t1);
  } else if (fam == "null-parabola") {
    jet = generate_constant_curvature(PlaneCase::LightlikePlane, a.a, 0.0, t0, t1);
  } else if (fam == "helix") {
    // (r cos t, r sin t, a t); causal type from r versus |a|.
    const double r = a.r, h = a.a;
    jet = CurveJet::analytic([=](double t) { return Vec3L{r * std::cos(t), r * std::sin(t), h * t}; },
                             [=](double t) { return Vec3L{-r * std::sin(t), r * std::cos(t), h}; },
                             [=](double t) { return Vec3L{-r * std::cos(t), -r * std::sin(t), 0.0}; },
                             [=](double t) { return Vec3L{r * std::sin(t), -r * std::cos(t), 0.0}; }, t0, t1,
                             [=](double t) { return Vec3L{r * std::cos(t), r * std::sin(t), 0.0}; });
    const double mid = 0.5 * (t0 + t1);
    const CausalClass c = classify_curve(jet, mid);
    jet = c == CausalClass::Lightlike ? reparam_pseudo_arclength(jet, mid) : reparam_arclength(jet, mid);
  } else if (fam == "mixed") {
    jet = CurveJet::analytic([](double t) { return Vec3L{std::cosh(t), t * t, std::sinh(t)}; },
                             [](double t) { return Vec3L{std::sinh(t), 2 * t, std::cosh(t)}; },
                             [](double t) { return Vec3L{std::cosh(t), 2.0, std::sinh(t)}; },
                             [](double t) { return Vec3L{std::sinh(t), 0.0, std::cosh(t)}; }, t0, t1);
    frenet_available = false;
  } else {
    throw UsageError("unknown --family '" + fam + "'");
  }
  const auto t = linspace(jet.t_min(), jet.t_max(), a.samples);
  std::vector<Vec3L> pts;
  std::vector<double> kappa, tau;
  std::vector<CurvatureTorsion> kt;
  Json classes = Json::object();
  std::string frenet_case;
  for (double s : t) {
    pts.push_back(jet.position(s));
    const std::string c(to_string(classify_curve(jet, s)));
    classes[c] = classes.value(c, 0) + 1;
    if (frenet_available) {
      const FrenetFrame fr = frenet(jet, s);
      frenet_case = to_string(fr.frenet_case);
      kappa.push_back(fr.kappa.value_or(std::nan("")));
      tau.push_back(fr.tau);
      if (fr.kappa) kt.push_back({*fr.kappa, fr.tau});
    }
  }
  ctx.outputs["family"] = fam;
  ctx.outputs["parameter_range"] = Json::array({num(jet.t_min()), num(jet.t_max())});
  ctx.outputs["causal_classes"] = classes;
  if (frenet_available) {
    ctx.outputs["frenet_case"] = frenet_case;
    if (!kt.empty()) {
      double kmin = INFINITY, kmax = -INFINITY, tmin = INFINITY, tmax = -INFINITY;
      for (const auto& s : kt) {
        kmin = std::min(kmin, s.kappa);
        kmax = std::max(kmax, s.kappa);
        tmin = std::min(tmin, s.tau);
        tmax = std::max(tmax, s.tau);
      }
      ctx.outputs["kappa_range"] = Json::array({num(kmin), num(kmax)});
      ctx.outputs["tau_range"] = Json::array({num(tmin), num(tmax)});
      ctx.outputs["is_helix"] = kmin > 0 ? Json(is_helix(kt)) : Json(nullptr);
      if (kt.size() >= 3) {
        const auto fit = bertrand_fit(kt);
        ctx.outputs["bertrand"] =
            fit ? Json{{"A", num(fit->A)}, {"B", num(fit->B)}, {"max_residual", num(fit->max_residual)},
                       {"helix_relation", fit->helix_relation}}
                : Json(nullptr);
      }
    } else {
      double tmin = INFINITY, tmax = -INFINITY;
      for (double x : tau) {
        tmin = std::min(tmin, x);
        tmax = std::max(tmax, x);
      }
      ctx.outputs["tau_range"] = Json::array({num(tmin), num(tmax)});
    }
  }
  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    write_polyline_csv(f, t, pts, kappa, tau);
  }
}

// ---------------------------------------------------------------- surfaces

struct SurfaceArgs {
  std::string kind = "hyperbolic", center = "0,0,0", mesh, csv;
  double r = 1.0;
  int grid = 33;
};

SurfaceChart catalog_chart(const std::string& kind, double r, const Vec3L& center, bool& curvature) {
  curvature = true;
  if (kind == "plane") return plane_chart(center, kE1, kE2, {-1, 1, -1, 1});
  if (kind == "hyperbolic") return hyperbolic_plane_chart(r, center, {-r, r, -r, r});
  if (kind == "desitter") return de_sitter_chart(r, center, {0.0, 6.283185307179586, -1.0, 1.0});
  if (kind == "catenoid") return catenoid_chart({0.5, 2.0, 0.0, 6.283185307179586});
  if (kind == "null-scroll") {
    const CurveJet helix = CurveJet::analytic(
        [](double s) { return Vec3L{std::cos(s), std::sin(s), s}; },
        [](double s) { return Vec3L{-std::sin(s), std::cos(s), 1.0}; },
        [](double s) { return Vec3L{-std::cos(s), -std::sin(s), 0.0}; },
        [](double s) { return Vec3L{std::sin(s), -std::cos(s), 0.0}; }, -3.0, 3.0,
        [](double s) { return Vec3L{std::cos(s), std::sin(s), 0.0}; });
    return null_scroll_chart(helix, -1.0, 1.0);
  }
  if (kind == "light-cone") {
    curvature = false;
    return light_cone_chart({0.1, 2.0, 0.0, 6.283185307179586});
  }
  throw UsageError("unknown --kind '" + kind + "'");
}

void report_mesh(const SurfaceMesh& m, Context& ctx) {
  ctx.outputs["vertices"] = m.vertices.size();
  ctx.outputs["faces"] = m.faces.size();
  if (!m.has_curvature) return;
  double hmin = INFINITY, hmax = -INFINITY, kmin = INFINITY, kmax = -INFINITY, habs = 0.0;
  std::size_t umb = 0;
  for (std::size_t i = 0; i < m.H.size(); ++i) {
    hmin = std::min(hmin, m.H[i]);
    hmax = std::max(hmax, m.H[i]);
    kmin = std::min(kmin, m.K[i]);
    kmax = std::max(kmax, m.K[i]);
    habs = std::max(habs, std::abs(m.H[i]));
    umb += m.umbilic[i] ? 1 : 0;
  }
  ctx.outputs["H_range"] = Json::array({num(hmin), num(hmax)});
  ctx.outputs["K_range"] = Json::array({num(kmin), num(kmax)});
  ctx.outputs["H_abs_max"] = num(habs);
  ctx.outputs["umbilic_fraction"] = num(static_cast<double>(umb) / static_cast<double>(m.H.size()));
}

void export_mesh(const SurfaceMesh& m, const std::string& obj, const std::string& csv) {
  if (!obj.empty()) {
    auto f = open_output(obj);
    write_obj(f, m);
  }
  if (!csv.empty()) {
    auto f = open_output(csv);
    write_mesh_csv(f, m);
  }
}

void cmd_surface(const SurfaceArgs& a, Context& ctx) {
  bool curvature = true;
  const SurfaceChart chart = catalog_chart(a.kind, a.r, parse_vec(a.center), curvature);
  const ParamRect& d = chart.domain();
  const FirstForm I = first_form(chart, 0.5 * (d.u0 + d.u1), 0.5 * (d.v0 + d.v1));
  ctx.outputs["kind"] = a.kind;
  ctx.outputs["causal_type"] = to_string(I.type);
  TessellationOptions opt;
  opt.nu = a.grid;
  opt.nv = a.grid;
  opt.with_curvature = curvature;
  opt.periodic_v = a.kind == "catenoid" || a.kind == "light-cone";
  if (a.kind == "desitter") {
    opt.nu = a.grid;
    opt.with_curvature = true;
  }
  const SurfaceMesh m = tessellate(chart, opt);
  report_mesh(m, ctx);
  if (curvature) {
    const CurvatureData c = shape_and_curvatures(chart, 0.5 * (d.u0 + d.u1), 0.5 * (d.v0 + d.v1));
    ctx.outputs["diagonalizable_at_center"] = c.diagonalizable;
  }
  export_mesh(m, a.mesh, a.csv);
}

struct UmbilicArgs {
  std::string kind = "hyperbolic", center = "0,0,0";
  double r = 1.0;
};

void cmd_umbilic(const UmbilicArgs& a, Context& ctx) {
  const Vec3L c = parse_vec(a.center);
  SurfaceChart chart = plane_chart(c, kE1, kE2, {-1, 1, -1, 1});
  if (a.kind == "hyperbolic")
    chart = hyperbolic_plane_polar_chart(a.r, c, {0.2, 1.2, 0.0, 3.0});
  else if (a.kind == "desitter")
    chart = de_sitter_chart(a.r, c, {0.0, 3.0, -1.0, 1.0});
  else if (a.kind == "null-scroll" || a.kind == "catenoid") {
    bool curv;
    chart = catalog_chart(a.kind, a.r, c, curv);
  } else if (a.kind != "plane")
    throw UsageError("unknown --kind '" + a.kind + "'");
  const SurfaceKind k = classify_totally_umbilical(chart);
  ctx.outputs["kind"] = to_string(k.kind);
  if (k.kind == SurfaceKind::Kind::Plane) {
    ctx.outputs["normal"] = vec_json(k.normal);
    ctx.outputs["offset"] = num(k.offset);
  } else {
    ctx.outputs["r"] = num(k.r);
    ctx.outputs["center"] = vec_json(k.center);
  }
  ctx.outputs["max_residual"] = num(k.max_residual);
}

// ---------------------------------------------------------------- rotational

struct ProfileArgs {
  bool catenoid = false;
  double H = 0.0, c = 0.0, d = 0.0, r0 = NAN, rp0 = NAN, step = 1e-3;
  std::string span = "0.5:3", mesh, csv, surface_csv;
  int nv = 48, nu = 121;
};

double measured_h_max(const SurfaceChart& chart, double target, int nu, int nv) {
  const ParamRect& d = chart.domain();
  double m = 0.0;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const double u = d.u0 + (d.u1 - d.u0) * i / (nu - 1);
      const double v = d.v0 + (d.v1 - d.v0) * j / nv;
      m = std::max(m, std::abs(shape_and_curvatures(chart, u, v).H - target));
    }
  return m;
}

void write_profile(const ProfileSolution& s, const std::string& path) {
  auto f = open_output(path);
  f << "s,r,rp,a,b\n";
  for (std::size_t i = 0; i < s.s.size(); ++i) write_csv_row(f, {s.s[i], s.r[i], s.rp[i], s.a[i], s.b[i]});
}

void report_profile(const ProfileSolution& sol, const ProfileArgs& a, Context& ctx) {
  ctx.outputs["samples"] = sol.s.size();
  ctx.outputs["span_reached"] = Json::array({num(sol.s.front()), num(sol.s.back())});
  ctx.outputs["max_ode_residual"] = num(sol.max_residual);
  ctx.outputs["truncated"] = sol.truncated;
  ctx.outputs["spacelike_violation"] = sol.spacelike_violation;
  if (sol.truncated) ctx.warnings.push_back(sol.note);
  if (sol.spacelike_violation) ctx.warnings.push_back("W <= 0 at some sampled angle");
  const SurfaceChart chart = profile_chart(sol);
  ctx.outputs["measured_H_deviation_max"] = num(measured_h_max(chart, sol.params.H, 41, 16));
  if (!a.csv.empty()) write_profile(sol, a.csv);
  if (!a.mesh.empty() || !a.surface_csv.empty()) {
    TessellationOptions opt;
    opt.nu = a.nu;
    opt.nv = a.nv;
    opt.periodic_v = true;
    const SurfaceMesh m = tessellate(chart, opt);
    ctx.outputs["mesh_vertices"] = m.vertices.size();
    double habs = 0.0;
    for (double h : m.H) habs = std::max(habs, std::abs(h - sol.params.H));
    ctx.outputs["mesh_H_deviation_max"] = num(habs);
    export_mesh(m, a.mesh, a.surface_csv);
  }
}

void cmd_rotational(const ProfileArgs& a, Context& ctx) {
  const auto [s0, s1] = parse_range(a.span);
  ProfileODEParams p;
  p.s0 = s0;
  p.s1 = s1;
  p.h = a.step;
  if (a.catenoid) {
    if (std::isfinite(a.r0) || std::isfinite(a.rp0) || a.H != 0.0)
      throw UsageError("--catenoid fixes H, r0 and rp0");
    p.H = 0.0;
    p.r0 = std::sinh(s0);
    p.rp0 = std::cosh(s0);
  } else {
    if (!std::isfinite(a.r0) || !std::isfinite(a.rp0)) throw UsageError("--r0 and --rp0 are required");
    p.H = a.H;
    p.r0 = a.r0;
    p.rp0 = a.rp0;
  }
  const ProfileSolution sol = integrate_rotational(p);
  if (a.catenoid) {
    double err = 0.0;
    for (std::size_t i = 0; i < sol.s.size(); ++i) err = std::max(err, std::abs(sol.r[i] - std::sinh(sol.s[i])));
    ctx.outputs["max_error_vs_sinh"] = num(err);
  }
  report_profile(sol, a, ctx);
}

void cmd_riemann(const ProfileArgs& a, Context& ctx) {
  const auto [s0, s1] = parse_range(a.span);
  ProfileODEParams p;
  p.s0 = s0;
  p.s1 = s1;
  p.h = a.step;
  p.c = a.c;
  p.d = a.d;
  p.r0 = std::isfinite(a.r0) ? a.r0 : std::sinh(s0);
  p.rp0 = std::isfinite(a.rp0) ? a.rp0 : std::cosh(s0);
  const ProfileSolution sol = integrate_riemann(p);
  double drift = 0.0;
  for (std::size_t i = 1; i + 1 < sol.s.size(); ++i) {
    const double ap = (sol.a[i + 1] - sol.a[i - 1]) / (sol.s[i + 1] - sol.s[i - 1]);
    drift = std::max(drift, std::abs(ap / (sol.r[i] * sol.r[i]) - p.c));
  }
  ctx.outputs["center_drift_fd_deviation"] = num(drift);
  report_profile(sol, a, ctx);
}

struct CapArgs {
  double r = 1.0, R = 1.0;
  bool translate = false;
  std::string mesh, csv;
  int grid = 41;
};

void cmd_cap(const CapArgs& a, Context& ctx) {
  const HyperbolicCap cap = hyperbolic_cap_chart(a.r, a.R, a.translate);
  ctx.outputs["boundary_height"] = num(cap.boundary_height);
  ctx.outputs["cap_height"] = num(cap.cap_height);
  ctx.outputs["expected_H"] = num(1.0 / a.r);
  TessellationOptions opt;
  opt.nu = a.grid;
  opt.nv = a.grid;
  opt.param_map = square_to_disk(a.R);
  const SurfaceMesh m = tessellate(cap.chart, opt);
  report_mesh(m, ctx);
  export_mesh(m, a.mesh, a.csv);
}

// ---------------------------------------------------------------- dirichlet

struct DirichletArgs {
  double disk = NAN, H = 1.0, h = 0.02, dH = 0.1, tol = 1e-10, guard = 0.01;
  std::string polygon, ambient = "lorentz", csv;
};

std::vector<Point2> read_polygon(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open polygon file '" + path + "'");
  std::vector<Point2> v;
  std::string line;
  while (std::getline(f, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::istringstream is(line);
    std::string xs, ys;
    if (!(is >> xs)) continue;
    if (xs[0] == '#') continue;
    if (!(is >> ys)) throw UsageError("polygon line needs two coordinates: '" + line + "'");
    v.push_back({parse_double(xs), parse_double(ys)});
  }
  return v;
}

void cmd_dirichlet(const DirichletArgs& a, Context& ctx) {
  if (std::isfinite(a.disk) == !a.polygon.empty()) throw UsageError("dirichlet needs exactly one of --disk or --polygon");
  SolverConfig cfg;
  if (a.ambient == "lorentz")
    cfg.ambient = Ambient::Lorentzian;
  else if (a.ambient == "euclid")
    cfg.ambient = Ambient::Euclidean;
  else
    throw UsageError("--ambient must be lorentz or euclid");
  cfg.H = a.H;
  cfg.dH = a.dH;
  cfg.newton_tol = a.tol;
  cfg.delta_guard = a.guard;
  const GridDomain dom = std::isfinite(a.disk) ? GridDomain::disk(a.disk, a.h) : GridDomain::polygon(read_polygon(a.polygon), a.h);
  const GraphSolution sol = solve_dirichlet(dom, cfg);
  ctx.outputs["nodes"] = dom.size();
  ctx.outputs["residual_max"] = num(sol.residual_max);
  ctx.outputs["Du_max"] = num(sol.Du_max);
  ctx.outputs["iters"] = sol.newton_iters;
  ctx.outputs["continuation_steps"] = sol.continuation_steps;
  const HeightBoundReport hb = height_bound_report(sol, a.H, cfg.ambient, dom);
  Json bounds;
  bounds["height"] = {{"applicable", hb.applicable}, {"max_abs_u", num(hb.max_abs_u)}, {"bound", num(hb.bound)},
                      {"margin", num(hb.margin)}, {"ok", hb.ok}, {"note", hb.note}};
  if (!hb.ok) ctx.warnings.push_back("height bound violated");
  if (cfg.ambient == Ambient::Lorentzian) {
    const GradientReport g = gradient_boundary_check(sol, dom);
    bounds["gradient"] = {{"interior_max", num(g.interior_max)}, {"boundary_max", num(g.boundary_max)},
                          {"slack", num(g.slack)}, {"ok", g.ok}, {"below_convex_slope", g.below_convex_slope}};
    if (!g.ok) ctx.warnings.push_back("interior gradient exceeds the boundary maximum");
    if (!g.below_convex_slope) ctx.warnings.push_back("gradient exceeds sqrt(2)/2");
  }
  ctx.outputs["bounds"] = bounds;
  if (std::isfinite(a.disk) && a.H != 0.0) {
    // Exact rotational solutions: translated hyperbolic cap or spherical cap.
    const double R = a.disk, ih = 1.0 / std::abs(a.H), sg = a.H > 0 ? 1.0 : -1.0;
    double err = 0.0;
    for (int p = 0; p < dom.size(); ++p) {
      const auto& n = dom.nodes()[p];
      const double rho2 = n.x * n.x + n.y * n.y;
      const double exact = cfg.ambient == Ambient::Lorentzian
                               ? sg * (std::sqrt(ih * ih + rho2) - std::sqrt(ih * ih + R * R))
                               : sg * (std::sqrt(ih * ih - R * R) - std::sqrt(ih * ih - rho2));
      err = std::max(err, std::abs(sol.u[p] - exact));
    }
    ctx.outputs["error_vs_exact_cap"] = num(err);
  }
  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    write_solution_csv(f, dom, sol);
  }
}

// ---------------------------------------------------------------- verify

Json verify_laplacian() {
  const SurfaceChart chart = hyperbolic_plane_polar_chart(1.0, {}, {0.3, 1.3, 0.0, 1.0});
  const Vec3L a{0.3, -0.5, 1.0};
  std::vector<double> e1, e2;
  for (int n : {11, 21, 41}) {
    ParamGrid g{0.3, 0.0, 1.0 / (n - 1), 1.0 / (n - 1), n, n};
    std::vector<double> fx(static_cast<std::size_t>(n * n)), fn(fx.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        fx[g.index(i, j)] = lorentz_dot(chart.position(g.u(i), g.v(j)), a);
        fn[g.index(i, j)] = lorentz_dot(gauss_map(chart, g.u(i), g.v(j)), a);
      }
    double r1 = 0.0, r2 = 0.0;
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j) {
        const CurvatureData c = shape_and_curvatures(chart, g.u(i), g.v(j));
        const double na = fn[g.index(i, j)];
        r1 = std::max(r1, std::abs(laplace_beltrami(chart, g, fx, i, j) - 2.0 * c.H * na));
        r2 = std::max(r2, std::abs(laplace_beltrami(chart, g, fn, i, j) - (4 * c.H * c.H + 2 * c.K) * na));
      }
    e1.push_back(r1);
    e2.push_back(r2);
  }
  const double o1 = std::log2(e1[1] / e1[2]), o2 = std::log2(e2[1] / e2[2]);
  const bool pass = std::abs(o1 - 2.0) <= 0.3 && std::abs(o2 - 2.0) <= 0.3;
  return {{"position_residuals", e1}, {"normal_residuals", e2}, {"order_position", num(o1)},
          {"order_normal", num(o2)}, {"pass", pass}};
}

Json verify_first_variation() {
  const double R = 1.0;
  const HyperbolicCap cap = hyperbolic_cap_chart(1.0, R);
  TessellationOptions opt;
  opt.nu = 71;
  opt.nv = 71;
  opt.param_map = square_to_disk(R);
  const SurfaceMesh m = tessellate(cap.chart, opt);
  std::vector<double> f(m.vertices.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = m.vertices[i].x, y = m.vertices[i].y;
    const double w = 1.0 - (x * x + y * y) / (R * R);
    f[i] = m.boundary[i] ? 0.0 : w * w * (1.0 + 0.5 * x);
  }
  const FirstVariation fv = first_variation_check(m, f, 1e-4, 1.0);
  const double ea = std::abs(fv.dA_numeric - fv.dA_formula) / std::abs(fv.dA_formula);
  const double ev = std::abs(fv.dV_numeric - fv.dV_formula) / std::abs(fv.dV_formula);
  return {{"triangles", m.faces.size()},       {"dA_numeric", num(fv.dA_numeric)}, {"dA_formula", num(fv.dA_formula)},
          {"dV_numeric", num(fv.dV_numeric)}, {"dV_formula", num(fv.dV_formula)}, {"dJ_numeric", num(fv.dJ_numeric)},
          {"dJ_formula", num(fv.dJ_formula)}, {"relative_error_area", num(ea)}, {"relative_error_volume", num(ev)},
          {"pass", ea <= 0.02 && ev <= 0.02}};
}

Json verify_foliated() {
  Json out = Json::object();
  bool pass = true;
  auto check = [&](const std::string& name, const SurfaceChart& chart, double expected) {
    const ParamRect& d = chart.domain();
    double dev = 0.0;
    try {
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          const double u = d.u0 + (d.u1 - d.u0) * (i + 0.5) / 5, v = d.v0 + (d.v1 - d.v0) * (j + 0.5) / 5;
          dev = std::max(dev, std::abs(mean_curvature_foliated_reconciled(chart, u, v) - expected));
        }
    } catch (const DomainError&) {
      dev = INFINITY;
    }
    const bool ok = dev <= 1e-6;
    pass = pass && ok;
    out[name] = {{"max_deviation", num(dev)}, {"pass", ok}};
  };
  check("hyperbolic_plane", hyperbolic_plane_chart(1.0, {}, {-1, 1, -1, 1}), 1.0);
  check("catenoid", catenoid_chart({0.5, 2.0, 0.0, 6.0}), 0.0);
  ProfileODEParams p;
  p.c = 0.3;
  p.s0 = 0.5;
  p.s1 = 1.5;
  p.r0 = std::sinh(0.5);
  p.rp0 = std::cosh(0.5) + 0.5;
  check("riemann", profile_chart(integrate_riemann(p)), 0.0);
  out["pass"] = pass;
  return out;
}

void cmd_verify(Context& ctx) {
  const Json lap = verify_laplacian();
  const Json fv = verify_first_variation();
  const Json fol = verify_foliated();
  ctx.outputs["laplacian_identities"] = lap;
  ctx.outputs["first_variation"] = fv;
  ctx.outputs["foliated_identity"] = fol;
  const bool pass = lap["pass"].get<bool>() && fv["pass"].get<bool>() && fol["pass"].get<bool>();
  ctx.outputs["pass"] = pass;
  ctx.failed = !pass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of Lorentz-Minkowski 3-space", "minkowski"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  app.add_option("--report", report_path, "Write the JSON report to this file instead of stdout");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Causal character of a vector or subspace");
  classify->add_option("--vec", ca.vec, "Vector x,y,z");
  classify->add_option("--span", ca.span, "Subspace generator x,y,z (one or two)")->take_all();

  OrbitArgs oa;
  auto* orb = app.add_subcommand("orbit", "Boost orbit samples");
  orb->add_option("--axis", oa.axis, "timelike | spacelike | lightlike");
  orb->add_option("--p0", oa.p0, "Starting point x,y,z");
  orb->add_option("--range", oa.range, "Parameter range a:b");
  orb->add_option("--samples", oa.samples)->check(CLI::Range(2, 10000000));
  orb->add_option("--csv", oa.csv, "Polyline CSV output");

  CurveArgs cu;
  auto* curve = app.add_subcommand("curve", "Frenet analysis of a curve family");
  curve->add_option("--family", cu.family,
                    "circle | timelike-hyperbola | spacelike-hyperbola | null-parabola | helix | mixed");
  curve->add_option("--a", cu.a, "Curvature, parabola or pitch parameter");
  curve->add_option("--b", cu.b, "Phase parameter");
  curve->add_option("--r", cu.r, "Helix radius");
  curve->add_option("--range", cu.range, "Parameter range a:b");
  curve->add_option("--samples", cu.samples)->check(CLI::Range(2, 10000000));
  curve->add_option("--csv", cu.csv, "Polyline CSV output with kappa, tau");

  SurfaceArgs sa;
  auto* surf = app.add_subcommand("surface", "Curvature of a catalog surface");
  surf->add_option("--kind", sa.kind, "plane | hyperbolic | desitter | catenoid | null-scroll | light-cone");
  surf->add_option("--r", sa.r, "Radius")->check(CLI::PositiveNumber);
  surf->add_option("--center", sa.center, "Center x,y,z");
  surf->add_option("--grid", sa.grid)->check(CLI::Range(3, 100000));
  surf->add_option("--mesh", sa.mesh, "OBJ mesh output");
  surf->add_option("--csv", sa.csv, "Per-vertex CSV output");

  UmbilicArgs ua;
  auto* umb = app.add_subcommand("umbilic", "Classify a totally umbilical surface");
  umb->add_option("--kind", ua.kind, "plane | hyperbolic | desitter");
  umb->add_option("--r", ua.r, "Radius")->check(CLI::PositiveNumber);
  umb->add_option("--center", ua.center, "Center x,y,z");

  ProfileArgs ra;
  auto* rot = app.add_subcommand("rotational", "Rotational constant mean curvature profile");
  rot->add_flag("--catenoid", ra.catenoid, "Catenoid initial data r = sinh s");
  rot->add_option("--H", ra.H, "Mean curvature");
  rot->add_option("--r0", ra.r0);
  rot->add_option("--rp0", ra.rp0);
  rot->add_option("--span", ra.span, "Integration span s0:s1");
  rot->add_option("--step", ra.step)->check(CLI::PositiveNumber);
  rot->add_option("--mesh", ra.mesh, "OBJ mesh output");
  rot->add_option("--mesh-csv", ra.surface_csv, "Per-vertex CSV output");
  rot->add_option("--csv", ra.csv, "Profile CSV output");

  ProfileArgs ma;
  auto* rie = app.add_subcommand("riemann", "Minimal surface foliated by circles");
  rie->add_option("--c", ma.c);
  rie->add_option("--d", ma.d);
  rie->add_option("--r0", ma.r0);
  rie->add_option("--rp0", ma.rp0);
  rie->add_option("--span", ma.span, "Integration span s0:s1");
  rie->add_option("--step", ma.step)->check(CLI::PositiveNumber);
  rie->add_option("--mesh", ma.mesh, "OBJ mesh output");
  rie->add_option("--mesh-csv", ma.surface_csv, "Per-vertex CSV output");
  rie->add_option("--csv", ma.csv, "Profile CSV output");

  CapArgs pa;
  auto* cap = app.add_subcommand("cap", "Hyperbolic cap");
  cap->add_option("--r", pa.r)->check(CLI::PositiveNumber);
  cap->add_option("--R", pa.R)->check(CLI::PositiveNumber);
  cap->add_flag("--translate", pa.translate, "Move the boundary circle to z = 0");
  cap->add_option("--grid", pa.grid)->check(CLI::Range(3, 100000));
  cap->add_option("--mesh", pa.mesh, "OBJ mesh output");
  cap->add_option("--csv", pa.csv, "Per-vertex CSV output");

  DirichletArgs da;
  auto* dir = app.add_subcommand("dirichlet", "Constant mean curvature graph with zero boundary values");
  dir->set_help_flag("--help", "Print this help message and exit");
  dir->add_option("--disk", da.disk, "Disk radius")->check(CLI::PositiveNumber);
  dir->add_option("--polygon", da.polygon, "File with convex polygon vertices, one 'x y' per line");
  dir->add_option("--H", da.H, "Mean curvature");
  dir->add_option("--ambient", da.ambient, "lorentz | euclid");
  dir->add_option("--h", da.h, "Grid spacing")->check(CLI::PositiveNumber);
  dir->add_option("--dH", da.dH, "Continuation step")->check(CLI::PositiveNumber);
  dir->add_option("--tol", da.tol, "Newton tolerance")->check(CLI::PositiveNumber);
  dir->add_option("--guard", da.guard, "Spacelike guard delta");
  dir->add_option("--csv", da.csv, "Solution CSV output");

  auto* ver = app.add_subcommand("verify", "Cross-module identity suite");

  std::vector<std::string> argv_store{"minkowski"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  Context ctx;
  std::string command;
  try {
    if (classify->parsed()) {
      command = "classify";
      cmd_classify(ca, ctx);
    } else if (orb->parsed()) {
      command = "orbit";
      cmd_orbit(oa, ctx);
    } else if (curve->parsed()) {
      command = "curve";
      cmd_curve(cu, ctx);
    } else if (surf->parsed()) {
      command = "surface";
      cmd_surface(sa, ctx);
    } else if (umb->parsed()) {
      command = "umbilic";
      cmd_umbilic(ua, ctx);
    } else if (rot->parsed()) {
      command = "rotational";
      cmd_rotational(ra, ctx);
    } else if (rie->parsed()) {
      command = "riemann";
      cmd_riemann(ma, ctx);
    } else if (cap->parsed()) {
      command = "cap";
      cmd_cap(pa, ctx);
    } else if (dir->parsed()) {
      command = "dirichlet";
      cmd_dirichlet(da, ctx);
    } else if (ver->parsed()) {
      command = "verify";
      cmd_verify(ctx);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }

  Json report;
  report["command"] = command;
  report["argv"] = args;
  report["input_digest"] = digest(args);
  report["outputs"] = ctx.outputs;
  report["warnings"] = ctx.warnings;
  const std::string text = report.dump(2) + "\n";
  if (report_path.empty()) {
    out << text;
  } else {
    try {
      auto f = open_output(report_path);
      f << text;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kDomainError;
    }
  }
  return ctx.failed ? kDomainError : kOk;
}

}  // namespace minkowski::cli
