#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "minkowski/curves.hpp"
#include "minkowski/isometry.hpp"
#include "minkowski/lorentz.hpp"

namespace minkowski {

struct ChartJet {
  Vec3L X, Xu, Xv, Xuu, Xuv, Xvv;
};

struct ParamRect {
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
};

using SurfaceFn = std::function<Vec3L(double, double)>;
using ChartJetFn = std::function<ChartJet(double, double)>;

class SurfaceChart {
 public:
  static SurfaceChart analytic(ChartJetFn jet, ParamRect domain);
  // h <= 0 selects 1e-4 times the larger side of the rectangle.
  static SurfaceChart from_position(SurfaceFn pos, ParamRect domain, double h = 0.0);

  ChartJet jet(double u, double v) const { return jet_(u, v); }
  Vec3L position(double u, double v) const { return jet_(u, v).X; }
  const ParamRect& domain() const { return domain_; }

  SurfaceChart transformed(const RigidMotion& m) const;

 private:
  SurfaceChart(ChartJetFn jet, ParamRect domain) : jet_(std::move(jet)), domain_(domain) {}
  ChartJetFn jet_;
  ParamRect domain_;
};

struct FirstForm {
  double E = 0.0, F = 0.0, G = 0.0;
  CausalClass type = CausalClass::Spacelike;
  double W() const { return E * G - F * F; }
};

struct SecondForm {
  double e = 0.0, f = 0.0, g = 0.0;
};

struct CurvatureData {
  double H = 0.0;
  double K = 0.0;
  std::array<double, 4> shape{};  // row-major I^-1 II
  std::optional<std::pair<double, double>> principal;
  bool diagonalizable = true;
  bool umbilic = false;
  CausalClass type = CausalClass::Spacelike;
};

FirstForm first_form(const SurfaceChart& chart, double u, double v);
FirstForm first_form(const ChartJet& j);
// Unit normal; future-directed on spacelike charts, Xu x Xv normalized otherwise.
Vec3L gauss_map(const SurfaceChart& chart, double u, double v);
Vec3L gauss_map(const ChartJet& j);
SecondForm second_form(const SurfaceChart& chart, double u, double v);
CurvatureData shape_and_curvatures(const SurfaceChart& chart, double u, double v);
CurvatureData shape_and_curvatures(const ChartJet& j);

struct SurfaceKind {
  enum class Kind { Plane, HyperbolicPlane, DeSitter, Other };
  Kind kind = Kind::Other;
  Vec3L normal;  // Plane
  double offset = 0.0;  // Plane: <normal, X>
  double r = 0.0;
  Vec3L center;
  double max_residual = 0.0;
};

std::string_view to_string(SurfaceKind::Kind k);

// Samples an n x n grid of the chart's rectangle and recognizes planes,
// hyperbolic planes and de Sitter surfaces.
SurfaceKind classify_totally_umbilical(const SurfaceChart& chart, int n = 7);

// Mean curvature from the determinant identity for surfaces foliated by the
// v-curves, with the normal Xu x Xv. Requires a spacelike point.
double mean_curvature_foliated(const SurfaceChart& chart, double u, double v);
// The same value expressed in the future-normal convention; throws if it
// disagrees with shape_and_curvatures beyond 1e-8.
double mean_curvature_foliated_reconciled(const SurfaceChart& chart, double u, double v);

struct ParamGrid {
  double u0 = 0.0, v0 = 0.0, hu = 0.1, hv = 0.1;
  int nu = 2, nv = 2;
  double u(int i) const { return u0 + i * hu; }
  double v(int j) const { return v0 + j * hv; }
  int index(int i, int j) const { return i * nv + j; }
};

// Second-order Laplace-Beltrami of grid samples (row-major, index(i, j)) at
// interior node (i, j).
double laplace_beltrami(const SurfaceChart& chart, const ParamGrid& grid, std::span<const double> field, int i,
                        int j);

// Catalog.
SurfaceChart plane_chart(const Vec3L& origin, const Vec3L& a, const Vec3L& b, ParamRect domain);
// Graph (u, v, sqrt(r^2 + u^2 + v^2)) + center.
SurfaceChart hyperbolic_plane_chart(double r, const Vec3L& center, ParamRect domain);
// center + r (sinh u cos v, sinh u sin v, cosh u).
SurfaceChart hyperbolic_plane_polar_chart(double r, const Vec3L& center, ParamRect domain);
// center + r (cosh v cos u, cosh v sin u, sinh v); the normal is (X - center)/r.
SurfaceChart de_sitter_chart(double r, const Vec3L& center, ParamRect domain);
// u (cos v, sin v, 1): lightlike everywhere.
SurfaceChart light_cone_chart(ParamRect domain);

struct GraphFunction {
  std::function<double(double, double)> f, fx, fy, fxx, fxy, fyy;
};
SurfaceChart graph_chart(const GraphFunction& fn, ParamRect domain);
SurfaceChart graph_chart(std::function<double(double, double)> f, ParamRect domain, double h = 0.0);

// X(s, t) = alpha(s) + t B(s) over a pseudo-arc-length lightlike curve.
SurfaceChart null_scroll_chart(const CurveJet& lightlike, double t0, double t1);

}  // namespace minkowski
