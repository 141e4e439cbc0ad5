#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "minkowski/surfaces.hpp"

namespace minkowski {

struct SurfaceMesh {
  std::vector<Vec3L> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
  std::vector<double> u, v;
  std::vector<Vec3L> normals;
  std::vector<double> H, K;
  std::vector<char> umbilic;
  std::vector<char> boundary;
  bool has_curvature = false;
};

using ParamMap = std::function<std::pair<double, double>(double, double)>;

struct TessellationOptions {
  int nu = 32;  // vertices along u
  int nv = 32;  // vertices along v (distinct vertices when periodic)
  bool periodic_v = false;
  bool with_curvature = true;
  // Optional map from the unit square [-1, 1]^2 to chart parameters.
  ParamMap param_map;
};

// Grid tessellation in u-major order; two triangles per cell.
SurfaceMesh tessellate(const SurfaceChart& chart, const TessellationOptions& opt);

// Elliptical grid map of [-1, 1]^2 onto the disk of radius R (boundary to boundary).
ParamMap square_to_disk(double R);

double triangle_area(const Vec3L& a, const Vec3L& b, const Vec3L& c);
double mesh_area(std::span<const Vec3L> vertices, std::span<const std::array<int, 3>> faces);
// (1/3) integral of <X, N> dA with the future normal of each spacelike face.
double mesh_cone_volume(std::span<const Vec3L> vertices, std::span<const std::array<int, 3>> faces);

struct FirstVariation {
  double dA_numeric = 0.0, dA_formula = 0.0;
  double dV_numeric = 0.0, dV_formula = 0.0;
  double c = 0.0;
  double dJ_numeric = 0.0, dJ_formula = 0.0;  // A' + 2c V'
};

FirstVariation first_variation_check(const SurfaceMesh& mesh, std::span<const double> f, double dt, double c = 0.0);

void write_obj(std::ostream& os, const SurfaceMesh& mesh);
void write_mesh_csv(std::ostream& os, const SurfaceMesh& mesh);

}  // namespace minkowski
