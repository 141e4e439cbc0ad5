#include <cmath>
#include <sstream>

#include "minkowski/cmc_rotational.hpp"
#include "minkowski/error.hpp"
#include "minkowski/mesh.hpp"
#include "support.hpp"

using namespace minkowski;

namespace {

SurfaceMesh cap_mesh(double r, double R, int n) {
  TessellationOptions opt;
  opt.nu = n;
  opt.nv = n;
  opt.param_map = square_to_disk(R);
  return tessellate(hyperbolic_cap_chart(r, R).chart, opt);
}

std::vector<double> bump(const SurfaceMesh& m, double R, double (*shape)(double, double)) {
  std::vector<double> f(m.vertices.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = m.vertices[i].x, y = m.vertices[i].y;
    const double w = 1.0 - (x * x + y * y) / (R * R);
    f[i] = m.boundary[i] ? 0.0 : w * w * shape(x, y);
  }
  return f;
}

}  // namespace

TEST(Tessellate, CountsAndOrder) {
  TessellationOptions opt;
  opt.nu = 4;
  opt.nv = 3;
  const SurfaceMesh m = tessellate(plane_chart({}, kE1, kE2, {0, 3, 0, 2}), opt);
  EXPECT_EQ(m.vertices.size(), 12u);
  EXPECT_EQ(m.faces.size(), 12u);
  EXPECT_EQ(m.vertices[1].y, 1.0);
  EXPECT_EQ(m.vertices[3].x, 1.0);
  opt.periodic_v = true;
  const SurfaceMesh p = tessellate(catenoid_chart({0.5, 2, 0, 2 * M_PI}), opt);
  EXPECT_EQ(p.faces.size(), 18u);
}

TEST(SquareToDisk, BoundaryOnCircle) {
  const auto map = square_to_disk(2.0);
  for (double t : {-1.0, -0.3, 0.0, 0.8, 1.0}) {
    for (auto [s, q] : {std::pair{1.0, t}, {-1.0, t}, {t, 1.0}, {t, -1.0}}) {
      const auto [x, y] = map(s, q);
      EXPECT_NEAR(std::hypot(x, y), 2.0, 1e-14);
    }
  }
}

TEST(TriangleArea, BoostInvariance) {
  const Vec3L a{0, 0, 0}, b{2, 0, 0}, c{0, 1, 0};
  EXPECT_NEAR(triangle_area(a, b, c), 1.0, 1e-15);
  const Mat3 L = boost_spacelike(0.8) * boost_timelike(0.3);
  EXPECT_NEAR(triangle_area(L * a, L * b, L * c), 1.0, 1e-12);
  EXPECT_THROW(triangle_area(a, b, Vec3L{0, 0, 1}), DomainError);
}

TEST(ConeVolume, FlatDisk) {
  // (1/3) * integral of <X, N> over z = h with future N gives -h A / 3.
  const double h = 1.5;
  TessellationOptions opt;
  opt.nu = 5;
  opt.nv = 7;
  const SurfaceMesh m = tessellate(plane_chart({0, 0, h}, kE1, kE2, {-1, 1, -1, 1}), opt);
  const double A = mesh_area(m.vertices, m.faces);
  EXPECT_NEAR(A, 4.0, 1e-14);
  EXPECT_NEAR(mesh_cone_volume(m.vertices, m.faces), -h * A / 3, 1e-13);
}

TEST(FirstVariation, ZeroField) {
  const SurfaceMesh m = cap_mesh(1, 1, 21);
  const std::vector<double> f(m.vertices.size(), 0.0);
  const FirstVariation fv = first_variation_check(m, f, 1e-4);
  EXPECT_EQ(fv.dA_numeric, 0.0);
  EXPECT_EQ(fv.dA_formula, 0.0);
  EXPECT_EQ(fv.dV_numeric, 0.0);
  EXPECT_EQ(fv.dV_formula, 0.0);
}

TEST(FirstVariation, CapBump) {
  const SurfaceMesh m = cap_mesh(1, 1, 51);
  const auto f = bump(m, 1.0, [](double x, double) { return 1.0 + 0.5 * x; });
  const FirstVariation fv = first_variation_check(m, f, 1e-4, 1.0);
  EXPECT_NEAR(fv.dA_numeric / fv.dA_formula, 1.0, 0.02);
  EXPECT_NEAR(fv.dV_numeric / fv.dV_formula, 1.0, 0.02);
  EXPECT_NEAR(fv.dJ_formula, fv.dA_formula + 2 * fv.dV_formula, 1e-14);
  // On H = 1 the weighted functional A + 2V is critical.
  EXPECT_LE(std::abs(fv.dJ_numeric), 0.02 * std::abs(fv.dA_formula));
}

TEST(FirstVariation, MeanZeroFieldIsCritical) {
  const SurfaceMesh m = cap_mesh(1, 1, 51);
  const auto f = bump(m, 1.0, [](double x, double) { return x; });
  const auto g = bump(m, 1.0, [](double, double) { return 1.0; });
  const FirstVariation odd = first_variation_check(m, f, 1e-4), even = first_variation_check(m, g, 1e-4);
  EXPECT_LE(std::abs(odd.dA_numeric), 1e-3 * std::abs(even.dA_numeric));
}

TEST(FirstVariation, BoundaryValuesRejected) {
  const SurfaceMesh m = cap_mesh(1, 1, 11);
  const std::vector<double> f(m.vertices.size(), 1.0);
  EXPECT_THROW(first_variation_check(m, f, 1e-4), DomainError);
}

TEST(Export, ObjAndCsv) {
  TessellationOptions opt;
  opt.nu = 2;
  opt.nv = 2;
  const SurfaceMesh m = tessellate(plane_chart({}, kE1, kE2, {0, 1, 0, 1}), opt);
  std::ostringstream obj, csv;
  write_obj(obj, m);
  write_mesh_csv(csv, m);
  EXPECT_EQ(obj.str(), "v 0 0 0\nv 0 1 0\nv 1 0 0\nv 1 1 0\nf 1 3 4\nf 1 4 2\n");
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "u,v,x,y,z,H,K,umbilic");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}
