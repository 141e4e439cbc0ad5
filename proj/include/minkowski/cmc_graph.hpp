#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace minkowski {

enum class Ambient { Euclidean, Lorentzian };

inline double ambient_sign(Ambient a) { return a == Ambient::Euclidean ? 1.0 : -1.0; }

using Point2 = std::array<double, 2>;

// Convex planar domain sampled on the lattice (i h, j h). Unknowns live on
// lattice nodes strictly inside; each node has four arms (E, W, N, S) that end
// either at a neighboring node or at the boundary, where u = 0.
class GridDomain {
 public:
  enum Dir { East = 0, West = 1, North = 2, South = 3 };

  struct Node {
    double x = 0.0, y = 0.0;
    int i = 0, j = 0;
    std::array<int, 4> neighbor{-1, -1, -1, -1};  // -1: arm ends on the boundary
    std::array<double, 4> arm{};
    bool ring() const { return neighbor[0] < 0 || neighbor[1] < 0 || neighbor[2] < 0 || neighbor[3] < 0; }
  };

  static GridDomain disk(double R, double h);
  // Vertices of a convex polygon (either orientation).
  static GridDomain polygon(std::vector<Point2> vertices, double h);

  double h() const { return h_; }
  bool is_disk() const { return is_disk_; }
  double disk_radius() const { return radius_; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  bool contains(double x, double y) const;
  // Distance from (x, y) to the boundary along the unit direction (dx, dy).
  double exit_distance(double x, double y, double dx, double dy) const;
  double area() const;
  // Largest distance from the origin to a boundary point.
  double max_boundary_radius() const;

 private:
  void build();

  double h_ = 0.1;
  bool is_disk_ = true;
  double radius_ = 1.0;
  std::vector<Point2> vertices_;
  std::vector<std::array<double, 3>> halfplanes_;  // nx, ny, c with n.x <= c inside
  std::vector<Node> nodes_;
};

struct SolverConfig {
  Ambient ambient = Ambient::Lorentzian;
  double H = 1.0;
  double dH = 0.1;
  double min_dH = 1e-3;
  double newton_tol = 1e-10;
  int max_newton_iters = 30;
  double delta_guard = 0.01;
};

struct GraphSolution {
  std::vector<double> u;     // per domain node
  std::vector<double> grad;  // |Du| per node (central differences)
  double Du_max = 0.0;       // largest half-node stencil gradient
  double residual_max = 0.0;
  int newton_iters = 0;
  int continuation_steps = 0;
  double H = 0.0;
  Ambient ambient = Ambient::Lorentzian;
};

// div(Du / sqrt(1 + eps |Du|^2)) - 2H at every node.
std::vector<double> cmc_operator_residual(const GridDomain& domain, std::span<const double> u, double H,
                                          Ambient ambient);

// Largest |Du| over the half-node flux stencils.
double stencil_gradient_max(const GridDomain& domain, std::span<const double> u);
// |Du| at every node from unequal-arm central differences.
std::vector<double> node_gradients(const GridDomain& domain, std::span<const double> u);

GraphSolution solve_dirichlet(const GridDomain& domain, const SolverConfig& config);

// Fills gradient diagnostics and the residual for given node values.
GraphSolution make_solution(const GridDomain& domain, std::vector<double> u, double H, Ambient ambient);

struct HeightBoundReport {
  bool applicable = false;
  double max_abs_u = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound + slack - max|u|
  bool ok = true;
  std::string note;
};

HeightBoundReport height_bound_report(const GraphSolution& sol, double H, Ambient ambient, const GridDomain& domain);

struct GradientReport {
  double interior_max = 0.0;
  double boundary_max = 0.0;
  double slack = 0.0;
  bool ok = true;
  bool below_convex_slope = true;  // max |Du| < sqrt(2)/2 + slack
};

GradientReport gradient_boundary_check(const GraphSolution& sol, const GridDomain& domain);

void write_solution_csv(std::ostream& os, const GridDomain& domain, const GraphSolution& sol);

}  // namespace minkowski
