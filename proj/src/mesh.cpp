#include "minkowski/mesh.hpp"

#include <cmath>
#include <ostream>

#include "minkowski/error.hpp"
#include "minkowski/io.hpp"

namespace minkowski {

SurfaceMesh tessellate(const SurfaceChart& chart, const TessellationOptions& opt) {
  if (opt.nu < 2 || opt.nv < (opt.periodic_v ? 3 : 2)) throw DomainError("tessellate: grid too small");
  const ParamRect& d = chart.domain();
  SurfaceMesh m;
  m.has_curvature = opt.with_curvature;
  const int nv = opt.nv;
  for (int i = 0; i < opt.nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double a = static_cast<double>(i) / (opt.nu - 1);
      const double b = opt.periodic_v ? static_cast<double>(j) / nv : static_cast<double>(j) / (nv - 1);
      double u, v;
      if (opt.param_map) {
        std::tie(u, v) = opt.param_map(2.0 * a - 1.0, 2.0 * b - 1.0);
      } else {
        u = d.u0 + (d.u1 - d.u0) * a;
        v = d.v0 + (d.v1 - d.v0) * b;
      }
      const ChartJet jet = chart.jet(u, v);
      m.vertices.push_back(jet.X);
      m.u.push_back(u);
      m.v.push_back(v);
      m.boundary.push_back(i == 0 || i == opt.nu - 1 || (!opt.periodic_v && (j == 0 || j == nv - 1)));
      if (opt.with_curvature) {
        const CurvatureData c = shape_and_curvatures(jet);
        m.normals.push_back(gauss_map(jet));
        m.H.push_back(c.H);
        m.K.push_back(c.K);
        m.umbilic.push_back(c.umbilic);
      }
    }
  }
  const int jcells = opt.periodic_v ? nv : nv - 1;
  for (int i = 0; i + 1 < opt.nu; ++i)
    for (int j = 0; j < jcells; ++j) {
      const int j1 = (j + 1) % nv;
      const int p00 = i * nv + j, p10 = (i + 1) * nv + j, p01 = i * nv + j1, p11 = (i + 1) * nv + j1;
      m.faces.push_back({p00, p10, p11});
      m.faces.push_back({p00, p11, p01});
    }
  return m;
}

ParamMap square_to_disk(double R) {
  return [R](double s, double t) {
    return std::make_pair(R * s * std::sqrt(1.0 - 0.5 * t * t), R * t * std::sqrt(1.0 - 0.5 * s * s));
  };
}

double triangle_area(const Vec3L& a, const Vec3L& b, const Vec3L& c) {
  const Vec3L e1 = b - a, e2 = c - a;
  const double g = lorentz_dot(e1, e1) * lorentz_dot(e2, e2) - lorentz_dot(e1, e2) * lorentz_dot(e1, e2);
  if (!(g > 0)) throw DomainError("triangle_area: face is not spacelike");
  return 0.5 * std::sqrt(g);
}

double mesh_area(std::span<const Vec3L> vertices, std::span<const std::array<int, 3>> faces) {
  double s = 0.0;
  for (const auto& f : faces) s += triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]);
  return s;
}

double mesh_cone_volume(std::span<const Vec3L> vertices, std::span<const std::array<int, 3>> faces) {
  double s = 0.0;
  for (const auto& f : faces) {
    const Vec3L &a = vertices[f[0]], &b = vertices[f[1]], &c = vertices[f[2]];
    const double sigma = cross(b - a, c - a).z > 0 ? 1.0 : -1.0;
    s += sigma * det3(a, b, c) / 6.0;
  }
  return s;
}

FirstVariation first_variation_check(const SurfaceMesh& mesh, std::span<const double> f, double dt, double c) {
  if (!mesh.has_curvature) throw DomainError("first_variation_check: mesh carries no normals or mean curvature");
  if (f.size() != mesh.vertices.size()) throw DomainError("first_variation_check: field size mismatch");
  if (!(dt > 0)) throw DomainError("first_variation_check: dt must be positive");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (mesh.boundary[i] && f[i] != 0.0) throw DomainError("first_variation_check: f must vanish on the boundary");

  auto displaced = [&](double t) {
    std::vector<Vec3L> p(mesh.vertices);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += (t * f[i]) * mesh.normals[i];
    return p;
  };
  const auto plus = displaced(dt), minus = displaced(-dt);
  FirstVariation r;
  r.c = c;
  r.dA_numeric = (mesh_area(plus, mesh.faces) - mesh_area(minus, mesh.faces)) / (2.0 * dt);
  r.dV_numeric = (mesh_cone_volume(plus, mesh.faces) - mesh_cone_volume(minus, mesh.faces)) / (2.0 * dt);
  for (const auto& face : mesh.faces) {
    const double area = triangle_area(mesh.vertices[face[0]], mesh.vertices[face[1]], mesh.vertices[face[2]]);
    double hf = 0.0, ff = 0.0;
    for (int k : face) {
      hf += mesh.H[k] * f[k];
      ff += f[k];
    }
    r.dA_formula += 2.0 * area * hf / 3.0;
    r.dV_formula -= area * ff / 3.0;
  }
  r.dJ_numeric = r.dA_numeric + 2.0 * c * r.dV_numeric;
  r.dJ_formula = r.dA_formula + 2.0 * c * r.dV_formula;
  return r;
}

void write_obj(std::ostream& os, const SurfaceMesh& mesh) {
  for (const auto& p : mesh.vertices)
    os << "v " << format_number(p.x) << ' ' << format_number(p.y) << ' ' << format_number(p.z) << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_mesh_csv(std::ostream& os, const SurfaceMesh& mesh) {
  os << "u,v,x,y,z,H,K,umbilic\n";
  const double nan = std::nan("");
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& p = mesh.vertices[i];
    const bool c = mesh.has_curvature;
    write_csv_row(os, {mesh.u[i], mesh.v[i], p.x, p.y, p.z, c ? mesh.H[i] : nan, c ? mesh.K[i] : nan,
                       c ? static_cast<double>(mesh.umbilic[i]) : nan});
  }
}

}  // namespace minkowski
