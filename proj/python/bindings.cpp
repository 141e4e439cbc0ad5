#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "minkowski/cmc_graph.hpp"
#include "minkowski/cmc_rotational.hpp"
#include "minkowski/curves.hpp"
#include "minkowski/error.hpp"
#include "minkowski/isometry.hpp"
#include "minkowski/lorentz.hpp"
#include "minkowski/mesh.hpp"
#include "minkowski/surfaces.hpp"

namespace py = pybind11;
using namespace minkowski;

// Vectors travel as 3-sequences of floats, matrices as 3 rows of 3.
namespace pybind11::detail {

template <>
struct type_caster<Vec3L> {
  PYBIND11_TYPE_CASTER(Vec3L, const_name("tuple[float, float, float]"));

  bool load(handle src, bool convert) {
    if (!isinstance<sequence>(src) || isinstance<str>(src)) return false;
    auto seq = reinterpret_borrow<sequence>(src);
    if (seq.size() != 3) return false;
    double c[3];
    for (size_t i = 0; i < 3; ++i) {
      make_caster<double> d;
      if (!d.load(seq[i], convert)) return false;
      c[i] = cast_op<double>(d);
    }
    value = {c[0], c[1], c[2]};
    return true;
  }

  static handle cast(const Vec3L& v, return_value_policy, handle) {
    return py::make_tuple(v.x, v.y, v.z).release();
  }
};

template <>
struct type_caster<Mat3> {
  PYBIND11_TYPE_CASTER(Mat3, const_name("list[tuple[float, float, float]]"));

  bool load(handle src, bool convert) {
    if (!isinstance<sequence>(src)) return false;
    auto rows = reinterpret_borrow<sequence>(src);
    if (rows.size() != 3) return false;
    for (size_t i = 0; i < 3; ++i) {
      make_caster<Vec3L> r;
      if (!r.load(rows[i], convert)) return false;
      const Vec3L v = cast_op<Vec3L>(r);
      value(i, 0) = v.x;
      value(i, 1) = v.y;
      value(i, 2) = v.z;
    }
    return true;
  }

  static handle cast(const Mat3& m, return_value_policy, handle) {
    py::list out;
    for (int i = 0; i < 3; ++i) out.append(py::make_tuple(m(i, 0), m(i, 1), m(i, 2)));
    return out.release();
  }
};

}  // namespace pybind11::detail

namespace {

CausalClass subspace_class(const std::vector<Vec3L>& gens) {
  if (gens.size() == 1) return causal_class(Subspace::line(gens[0]));
  if (gens.size() == 2) return causal_class(Subspace::plane(gens[0], gens[1]));
  throw DomainError("causal_class_subspace: expected one or two generators");
}

ParamRect rect(std::array<double, 4> r) { return {r[0], r[1], r[2], r[3]}; }

std::string csv_of(const GridDomain& d, const GraphSolution& s) {
  std::ostringstream os;
  write_solution_csv(os, d, s);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_minkowski, m) {
  m.doc() = "Curves, surfaces and constant mean curvature solvers in Lorentz-Minkowski 3-space";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::enum_<CausalClass>(m, "CausalClass")
      .value("Spacelike", CausalClass::Spacelike)
      .value("Timelike", CausalClass::Timelike)
      .value("Lightlike", CausalClass::Lightlike);

  m.def("lorentz_dot", [](const Vec3L& u, const Vec3L& v) { return lorentz_dot(u, v); });
  m.def("norm", &norm, "Lorentzian norm sqrt(|<v, v>|)");
  m.def("cross", [](const Vec3L& u, const Vec3L& v) { return cross(u, v); }, "Lorentzian cross product");
  m.def("causal_class", py::overload_cast<const Vec3L&>(&causal_class));
  m.def("causal_class_subspace", &subspace_class, py::arg("generators"));
  m.def("same_timelike_cone", &same_timelike_cone);
  m.def("hyperbolic_angle", &hyperbolic_angle);
  m.def("future_directed", &future_directed);

  // isometries
  py::enum_<IsometryComponent>(m, "IsometryComponent")
      .value("PP", IsometryComponent::PP)
      .value("PM", IsometryComponent::PM)
      .value("MP", IsometryComponent::MP)
      .value("MM", IsometryComponent::MM);
  m.def("is_lorentz", &is_lorentz, py::arg("m"), py::arg("tol") = 1e-12);
  m.def("component", &component);
  m.def("boost_timelike", &boost_timelike);
  m.def("boost_spacelike", &boost_spacelike);
  m.def("boost_lightlike", &boost_lightlike);
  m.def("matmul", [](const Mat3& a, const Mat3& b) { return a * b; });
  m.def(
      "orbit", [](CausalClass axis, const Vec3L& p0, const std::vector<double>& t) { return orbit(axis, p0, t); },
      py::arg("axis"), py::arg("p0"), py::arg("params"));

  // curves
  py::enum_<FrenetCase>(m, "FrenetCase")
      .value("Timelike", FrenetCase::Timelike)
      .value("SpacelikeSpN", FrenetCase::SpacelikeSpN)
      .value("SpacelikeTlN", FrenetCase::SpacelikeTlN)
      .value("SpacelikeLlN", FrenetCase::SpacelikeLlN)
      .value("Lightlike", FrenetCase::Lightlike);
  py::enum_<PlaneCase>(m, "PlaneCase")
      .value("SpacelikePlane", PlaneCase::SpacelikePlane)
      .value("TimelikePlaneSpacelikeCurve", PlaneCase::TimelikePlaneSpacelikeCurve)
      .value("TimelikePlaneTimelikeCurve", PlaneCase::TimelikePlaneTimelikeCurve)
      .value("LightlikePlane", PlaneCase::LightlikePlane);

  py::class_<CurveJet>(m, "Curve")
      .def_static("from_position", &CurveJet::from_position, py::arg("position"), py::arg("t_min"),
                  py::arg("t_max"), py::arg("h_fd") = 0.0)
      .def("position", &CurveJet::position)
      .def("d1", &CurveJet::d1)
      .def("d2", &CurveJet::d2)
      .def("d3", &CurveJet::d3)
      .def_property_readonly("t_min", &CurveJet::t_min)
      .def_property_readonly("t_max", &CurveJet::t_max);

  py::class_<FrenetFrame>(m, "FrenetFrame")
      .def_readonly("T", &FrenetFrame::T)
      .def_readonly("N", &FrenetFrame::N)
      .def_readonly("B", &FrenetFrame::B)
      .def_readonly("case", &FrenetFrame::frenet_case)
      .def_readonly("kappa", &FrenetFrame::kappa)
      .def_readonly("tau", &FrenetFrame::tau);

  py::class_<CurvatureTorsion>(m, "CurvatureTorsion")
      .def_readonly("kappa", &CurvatureTorsion::kappa)
      .def_readonly("tau", &CurvatureTorsion::tau);

  m.def("classify_curve", &classify_curve);
  m.def("reparam_arclength", &reparam_arclength, py::arg("curve"), py::arg("t0"));
  m.def("reparam_pseudo_arclength", &reparam_pseudo_arclength, py::arg("curve"), py::arg("t0"));
  m.def("frenet", &frenet, py::arg("curve"), py::arg("s"));
  m.def("curvature_torsion", &curvature_torsion_general, py::arg("curve"), py::arg("t"));
  m.def("constant_curvature_curve", &generate_constant_curvature, py::arg("plane_case"), py::arg("a"),
        py::arg("b"), py::arg("s_min") = -5.0, py::arg("s_max") = 5.0);
  m.def("is_helix", [](const std::vector<CurvatureTorsion>& s) { return is_helix(s); });

  // surfaces
  py::class_<SurfaceChart>(m, "SurfaceChart")
      .def_static(
          "from_position",
          [](SurfaceFn f, std::array<double, 4> r, double h) { return SurfaceChart::from_position(f, rect(r), h); },
          py::arg("position"), py::arg("domain"), py::arg("h") = 0.0)
      .def("position", &SurfaceChart::position)
      .def_property_readonly("domain", [](const SurfaceChart& c) {
        const ParamRect& d = c.domain();
        return std::array<double, 4>{d.u0, d.u1, d.v0, d.v1};
      });

  py::class_<CurvatureData>(m, "CurvatureData")
      .def_readonly("H", &CurvatureData::H)
      .def_readonly("K", &CurvatureData::K)
      .def_readonly("shape", &CurvatureData::shape)
      .def_readonly("principal", &CurvatureData::principal)
      .def_readonly("diagonalizable", &CurvatureData::diagonalizable)
      .def_readonly("umbilic", &CurvatureData::umbilic)
      .def_readonly("type", &CurvatureData::type);

  py::enum_<SurfaceKind::Kind>(m, "SurfaceKindTag")
      .value("Plane", SurfaceKind::Kind::Plane)
      .value("HyperbolicPlane", SurfaceKind::Kind::HyperbolicPlane)
      .value("DeSitter", SurfaceKind::Kind::DeSitter)
      .value("Other", SurfaceKind::Kind::Other);
  py::class_<SurfaceKind>(m, "SurfaceKind")
      .def_readonly("kind", &SurfaceKind::kind)
      .def_readonly("normal", &SurfaceKind::normal)
      .def_readonly("offset", &SurfaceKind::offset)
      .def_readonly("r", &SurfaceKind::r)
      .def_readonly("center", &SurfaceKind::center)
      .def_readonly("max_residual", &SurfaceKind::max_residual);

  m.def("gauss_map", py::overload_cast<const SurfaceChart&, double, double>(&gauss_map));
  m.def("curvatures", py::overload_cast<const SurfaceChart&, double, double>(&shape_and_curvatures),
        py::arg("chart"), py::arg("u"), py::arg("v"));
  m.def("classify_totally_umbilical", &classify_totally_umbilical, py::arg("chart"), py::arg("n") = 7);
  m.def("plane_chart",
        [](const Vec3L& o, const Vec3L& a, const Vec3L& b, std::array<double, 4> r) {
          return plane_chart(o, a, b, rect(r));
        });
  m.def("hyperbolic_plane_chart", [](double r, const Vec3L& c, std::array<double, 4> d) {
    return hyperbolic_plane_chart(r, c, rect(d));
  });
  m.def("de_sitter_chart",
        [](double r, const Vec3L& c, std::array<double, 4> d) { return de_sitter_chart(r, c, rect(d)); });
  m.def("light_cone_chart", [](std::array<double, 4> d) { return light_cone_chart(rect(d)); });
  m.def("null_scroll_chart", &null_scroll_chart, py::arg("curve"), py::arg("t0"), py::arg("t1"));
  m.def("catenoid_chart", [](std::array<double, 4> d) { return catenoid_chart(rect(d)); });

  // meshes
  py::class_<SurfaceMesh>(m, "SurfaceMesh")
      .def_readonly("vertices", &SurfaceMesh::vertices)
      .def_readonly("faces", &SurfaceMesh::faces)
      .def_readonly("normals", &SurfaceMesh::normals)
      .def_readonly("H", &SurfaceMesh::H)
      .def_readonly("K", &SurfaceMesh::K)
      .def_property_readonly("boundary", [](const SurfaceMesh& s) {
        return std::vector<bool>(s.boundary.begin(), s.boundary.end());
      });
  m.def(
      "tessellate",
      [](const SurfaceChart& c, int nu, int nv, bool periodic_v, double disk_radius) {
        TessellationOptions o;
        o.nu = nu;
        o.nv = nv;
        o.periodic_v = periodic_v;
        if (disk_radius > 0) o.param_map = square_to_disk(disk_radius);
        return tessellate(c, o);
      },
      py::arg("chart"), py::arg("nu") = 32, py::arg("nv") = 32, py::arg("periodic_v") = false,
      py::arg("disk_radius") = 0.0);
  m.def("mesh_area", [](const SurfaceMesh& s) { return mesh_area(s.vertices, s.faces); });
  m.def("mesh_cone_volume", [](const SurfaceMesh& s) { return mesh_cone_volume(s.vertices, s.faces); });

  py::class_<FirstVariation>(m, "FirstVariation")
      .def_readonly("dA_numeric", &FirstVariation::dA_numeric)
      .def_readonly("dA_formula", &FirstVariation::dA_formula)
      .def_readonly("dV_numeric", &FirstVariation::dV_numeric)
      .def_readonly("dV_formula", &FirstVariation::dV_formula)
      .def_readonly("dJ_numeric", &FirstVariation::dJ_numeric)
      .def_readonly("dJ_formula", &FirstVariation::dJ_formula);
  m.def(
      "first_variation_check",
      [](const SurfaceMesh& s, const std::vector<double>& f, double dt, double c) {
        return first_variation_check(s, f, dt, c);
      },
      py::arg("mesh"), py::arg("f"), py::arg("dt") = 1e-4, py::arg("c") = 0.0);

  // rotational surfaces
  py::class_<ProfileSolution>(m, "ProfileSolution")
      .def_readonly("s", &ProfileSolution::s)
      .def_readonly("r", &ProfileSolution::r)
      .def_readonly("rp", &ProfileSolution::rp)
      .def_readonly("a", &ProfileSolution::a)
      .def_readonly("b", &ProfileSolution::b)
      .def_readonly("max_residual", &ProfileSolution::max_residual)
      .def_readonly("spacelike_violation", &ProfileSolution::spacelike_violation)
      .def_readonly("truncated", &ProfileSolution::truncated)
      .def_readonly("note", &ProfileSolution::note);

  auto profile_params = [](double H, double c, double d, double r0, double rp0, double s0, double s1, double h) {
    ProfileODEParams p;
    p.H = H;
    p.c = c;
    p.d = d;
    p.r0 = r0;
    p.rp0 = rp0;
    p.s0 = s0;
    p.s1 = s1;
    p.h = h;
    return p;
  };
  m.def(
      "integrate_rotational",
      [=](double H, double r0, double rp0, double s0, double s1, double h) {
        return integrate_rotational(profile_params(H, 0, 0, r0, rp0, s0, s1, h));
      },
      py::arg("H"), py::arg("r0"), py::arg("rp0"), py::arg("s0"), py::arg("s1"), py::arg("h") = 1e-3);
  m.def(
      "integrate_riemann",
      [=](double c, double d, double r0, double rp0, double s0, double s1, double h) {
        return integrate_riemann(profile_params(0, c, d, r0, rp0, s0, s1, h));
      },
      py::arg("c"), py::arg("d"), py::arg("r0"), py::arg("rp0"), py::arg("s0"), py::arg("s1"),
      py::arg("h") = 1e-3);
  m.def("profile_chart", &profile_chart, py::arg("solution"), py::arg("v0") = 0.0,
        py::arg("v1") = 6.283185307179586);
  m.def(
      "hyperbolic_cap",
      [](double r, double R, bool translate) {
        const HyperbolicCap c = hyperbolic_cap_chart(r, R, translate);
        return py::make_tuple(c.chart, c.cap_height);
      },
      py::arg("r"), py::arg("R"), py::arg("translate") = false, "Returns (chart, cap height)");

  // graphs
  py::enum_<Ambient>(m, "Ambient").value("Euclidean", Ambient::Euclidean).value("Lorentzian", Ambient::Lorentzian);
  py::class_<GridDomain>(m, "GridDomain")
      .def_static("disk", &GridDomain::disk, py::arg("R"), py::arg("h"))
      .def_static("polygon", &GridDomain::polygon, py::arg("vertices"), py::arg("h"))
      .def_property_readonly("h", &GridDomain::h)
      .def_property_readonly("size", &GridDomain::size)
      .def_property_readonly("points", [](const GridDomain& d) {
        std::vector<std::pair<double, double>> p;
        for (const auto& n : d.nodes()) p.emplace_back(n.x, n.y);
        return p;
      });
  py::class_<GraphSolution>(m, "GraphSolution")
      .def_readonly("u", &GraphSolution::u)
      .def_readonly("grad", &GraphSolution::grad)
      .def_readonly("Du_max", &GraphSolution::Du_max)
      .def_readonly("residual_max", &GraphSolution::residual_max)
      .def_readonly("newton_iters", &GraphSolution::newton_iters)
      .def_readonly("continuation_steps", &GraphSolution::continuation_steps)
      .def_readonly("H", &GraphSolution::H);
  m.def(
      "solve_dirichlet",
      [](const GridDomain& d, double H, Ambient ambient, double dH, double tol, double guard) {
        SolverConfig cfg;
        cfg.H = H;
        cfg.ambient = ambient;
        cfg.dH = dH;
        cfg.newton_tol = tol;
        cfg.delta_guard = guard;
        py::gil_scoped_release release;
        return solve_dirichlet(d, cfg);
      },
      py::arg("domain"), py::arg("H"), py::arg("ambient") = Ambient::Lorentzian, py::arg("dH") = 0.1,
      py::arg("tol") = 1e-10, py::arg("guard") = 0.01);
  m.def(
      "cmc_residual",
      [](const GridDomain& d, const std::vector<double>& u, double H, Ambient a) {
        return cmc_operator_residual(d, u, H, a);
      },
      py::arg("domain"), py::arg("u"), py::arg("H"), py::arg("ambient") = Ambient::Lorentzian);
  m.def("solution_csv", &csv_of, py::arg("domain"), py::arg("solution"));
}
