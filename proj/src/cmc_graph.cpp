#include "minkowski/cmc_graph.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "minkowski/error.hpp"
#include "minkowski/io.hpp"

namespace minkowski {

// ---------------------------------------------------------------- domain

GridDomain GridDomain::disk(double R, double h) {
  if (!(R > 0) || !(h > 0)) throw DomainError("GridDomain: radius and spacing must be positive");
  if (h > R) throw DomainError("GridDomain: spacing larger than the domain");
  GridDomain d;
  d.h_ = h;
  d.is_disk_ = true;
  d.radius_ = R;
  d.build();
  return d;
}

GridDomain GridDomain::polygon(std::vector<Point2> v, double h) {
  if (v.size() < 3) throw DomainError("GridDomain: polygon needs at least three vertices");
  if (!(h > 0)) throw DomainError("GridDomain: spacing must be positive");
  double a2 = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& p = v[k];
    const auto& q = v[(k + 1) % v.size()];
    a2 += p[0] * q[1] - q[0] * p[1];
  }
  if (std::abs(a2) <= 1e-14) throw DomainError("GridDomain: degenerate polygon");
  if (a2 < 0) std::reverse(v.begin(), v.end());
  GridDomain d;
  d.h_ = h;
  d.is_disk_ = false;
  d.vertices_ = v;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& p = v[k];
    const auto& q = v[(k + 1) % v.size()];
    const double dx = q[0] - p[0], dy = q[1] - p[1];
    const double len = std::hypot(dx, dy);
    if (len == 0.0) throw DomainError("GridDomain: repeated polygon vertex");
    const double nx = dy / len, ny = -dx / len;
    d.halfplanes_.push_back({nx, ny, nx * p[0] + ny * p[1]});
  }
  double scale = 0.0;
  for (const auto& p : v) scale = std::max(scale, std::hypot(p[0], p[1]));
  for (const auto& hp : d.halfplanes_)
    for (const auto& p : v)
      if (hp[0] * p[0] + hp[1] * p[1] > hp[2] + 1e-12 * (1.0 + scale))
        throw DomainError("GridDomain: polygon is not convex");
  d.build();
  if (d.nodes_.empty()) throw DomainError("GridDomain: spacing too coarse for the polygon");
  return d;
}

bool GridDomain::contains(double x, double y) const {
  if (is_disk_) return x * x + y * y < radius_ * radius_;
  for (const auto& hp : halfplanes_)
    if (hp[0] * x + hp[1] * y >= hp[2]) return false;
  return true;
}

double GridDomain::exit_distance(double x, double y, double dx, double dy) const {
  if (is_disk_) {
    const double b = x * dx + y * dy;
    const double c = x * x + y * y - radius_ * radius_;
    return -b + std::sqrt(std::max(0.0, b * b - c));
  }
  double t = INFINITY;
  for (const auto& hp : halfplanes_) {
    const double nd = hp[0] * dx + hp[1] * dy;
    if (nd > 0) t = std::min(t, (hp[2] - hp[0] * x - hp[1] * y) / nd);
  }
  return std::max(0.0, t);
}

double GridDomain::area() const {
  if (is_disk_) return M_PI * radius_ * radius_;
  double a2 = 0.0;
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    const auto& p = vertices_[k];
    const auto& q = vertices_[(k + 1) % vertices_.size()];
    a2 += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a2;
}

double GridDomain::max_boundary_radius() const {
  if (is_disk_) return radius_;
  double r = 0.0;
  for (const auto& p : vertices_) r = std::max(r, std::hypot(p[0], p[1]));
  return r;
}

void GridDomain::build() {
  static constexpr int kDi[4] = {1, -1, 0, 0};
  static constexpr int kDj[4] = {0, 0, 1, -1};
  const double extent = max_boundary_radius();
  const int M = static_cast<int>(std::ceil(extent / h_)) + 1;
  const int W = 2 * M + 1;
  std::vector<int> id(static_cast<std::size_t>(W) * W, -1);
  auto slot = [&](int i, int j) -> int& { return id[static_cast<std::size_t>(i + M) * W + (j + M)]; };
  // Nodes closer than this to the boundary carry the boundary value.
  const double snap = 1e-9 * h_;
  for (int i = -M; i <= M; ++i)
    for (int j = -M; j <= M; ++j) {
      const double x = i * h_, y = j * h_;
      if (!contains(x, y)) continue;
      bool interior = true;
      for (int k = 0; k < 4; ++k)
        if (exit_distance(x, y, kDi[k], kDj[k]) <= snap) interior = false;
      if (!interior) continue;
      slot(i, j) = static_cast<int>(nodes_.size());
      Node n;
      n.x = x;
      n.y = y;
      n.i = i;
      n.j = j;
      nodes_.push_back(n);
    }
  for (auto& n : nodes_)
    for (int k = 0; k < 4; ++k) {
      const int ni = n.i + kDi[k], nj = n.j + kDj[k];
      const int nb = (std::abs(ni) <= M && std::abs(nj) <= M) ? slot(ni, nj) : -1;
      if (nb >= 0) {
        n.neighbor[k] = nb;
        n.arm[k] = h_;
      } else {
        n.neighbor[k] = -1;
        n.arm[k] = std::min(h_, exit_distance(n.x, n.y, kDi[k], kDj[k]));
      }
    }
}

// ---------------------------------------------------------------- residual

namespace {

constexpr int kSlots = 9;

struct Dual {
  double v = 0.0;
  std::array<double, kSlots> d{};

  Dual() = default;
  Dual(double x) : v(x) {}  // NOLINT: implicit promotion of constants
};

inline Dual operator+(Dual a, const Dual& b) {
  a.v += b.v;
  for (int k = 0; k < kSlots; ++k) a.d[k] += b.d[k];
  return a;
}
inline Dual operator-(Dual a, const Dual& b) {
  a.v -= b.v;
  for (int k = 0; k < kSlots; ++k) a.d[k] -= b.d[k];
  return a;
}
inline Dual operator*(const Dual& a, const Dual& b) {
  Dual r(a.v * b.v);
  for (int k = 0; k < kSlots; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
  return r;
}
inline Dual operator/(const Dual& a, const Dual& b) {
  Dual r(a.v / b.v);
  const double ib2 = 1.0 / (b.v * b.v);
  for (int k = 0; k < kSlots; ++k) r.d[k] = (a.d[k] * b.v - a.v * b.d[k]) * ib2;
  return r;
}
inline Dual sqrt(const Dual& a) {
  Dual r(std::sqrt(a.v));
  const double s = 0.5 / r.v;
  for (int k = 0; k < kSlots; ++k) r.d[k] = a.d[k] * s;
  return r;
}
inline double value(double x) { return x; }
inline double value(const Dual& x) { return x.v; }

using Dir = GridDomain::Dir;

// Residual at node p. `val(id)` yields the unknown at a node (id >= 0).
// `qmax` collects the largest half-node |Du|^2.
template <class T, class Val>
T node_residual(const GridDomain& dom, int p, const Val& val, double H, double eps, double& qmax) {
  using std::sqrt;
  const auto& nodes = dom.nodes();
  auto u = [&](int id) -> T { return id >= 0 ? val(id) : T(0.0); };
  auto grad_along = [&](int q, Dir plus, Dir minus) -> T {
    const auto& n = nodes[q];
    const double ap = n.arm[plus], am = n.arm[minus];
    const T uq = u(q);
    return (T(am * am) * (u(n.neighbor[plus]) - uq) + T(ap * ap) * (uq - u(n.neighbor[minus]))) /
           T(ap * am * (ap + am));
  };
  const auto& P = nodes[p];
  const T uP = u(p);

  auto flux = [&](Dir d, Dir opp, Dir tp, Dir tm) -> T {
    const double a = P.arm[d];
    const int nb = P.neighbor[d];
    const T normal = (d == Dir::East || d == Dir::North) ? (u(nb) - uP) / T(a) : (uP - u(nb)) / T(a);
    const T gP = grad_along(p, tp, tm);
    T tangential;
    if (nb >= 0) {
      tangential = T(0.5) * (gP + grad_along(nb, tp, tm));
    } else if (P.neighbor[opp] >= 0) {
      tangential = gP + T(0.5 * a / P.arm[opp]) * (gP - grad_along(P.neighbor[opp], tp, tm));
    } else {
      tangential = gP;
    }
    const T q = normal * normal + tangential * tangential;
    qmax = std::max(qmax, value(q));
    return normal / sqrt(T(1.0) + T(eps) * q);
  };

  const T fe = flux(Dir::East, Dir::West, Dir::North, Dir::South);
  const T fw = flux(Dir::West, Dir::East, Dir::North, Dir::South);
  const T fn = flux(Dir::North, Dir::South, Dir::East, Dir::West);
  const T fs = flux(Dir::South, Dir::North, Dir::East, Dir::West);
  const T divx = (fe - fw) / T(0.5 * (P.arm[Dir::East] + P.arm[Dir::West]));
  const T divy = (fn - fs) / T(0.5 * (P.arm[Dir::North] + P.arm[Dir::South]));
  return divx + divy - T(2.0 * H);
}

std::vector<double> residual_vector(const GridDomain& dom, std::span<const double> u, double H, double eps,
                                    double& qmax) {
  std::vector<double> r(u.size());
  auto val = [&](int id) { return u[id]; };
  for (int p = 0; p < dom.size(); ++p) r[p] = node_residual<double>(dom, p, val, H, eps, qmax);
  return r;
}

std::array<int, kSlots> local_slots(const GridDomain& dom, int p, int& count) {
  std::array<int, kSlots> ids{};
  count = 0;
  auto add = [&](int id) {
    if (id < 0) return;
    for (int k = 0; k < count; ++k)
      if (ids[k] == id) return;
    ids[count++] = id;
  };
  const auto& nodes = dom.nodes();
  const auto& P = nodes[p];
  add(p);
  for (int k = 0; k < 4; ++k) add(P.neighbor[k]);
  for (int k : {0, 1}) {
    if (P.neighbor[k] >= 0) {
      add(nodes[P.neighbor[k]].neighbor[2]);
      add(nodes[P.neighbor[k]].neighbor[3]);
    }
  }
  for (int k : {2, 3}) {
    if (P.neighbor[k] >= 0) {
      add(nodes[P.neighbor[k]].neighbor[0]);
      add(nodes[P.neighbor[k]].neighbor[1]);
    }
  }
  return ids;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class NewtonSolver {
 public:
  NewtonSolver(const GridDomain& dom, const SolverConfig& cfg) : dom_(dom), cfg_(cfg) {
    eps_ = ambient_sign(cfg.ambient);
    build_pattern();
  }

  // Solves at mean curvature H starting from u (updated on success).
  bool solve(double H, std::vector<double>& u, int& iters) {
    double qmax = 0.0;
    std::vector<double> F = residual_vector(dom_, u, H, eps_, qmax);
    if (!all_finite(F) || !admissible(qmax)) return false;
    double fmax = max_abs(F);
    for (int it = 0; it <= cfg_.max_newton_iters; ++it) {
      if (fmax <= cfg_.newton_tol) return true;
      if (it == cfg_.max_newton_iters) break;
      assemble(H, u);
      lu_.factorize(J_);
      if (lu_.info() != Eigen::Success) return false;
      Eigen::Map<const Eigen::VectorXd> rhs(F.data(), static_cast<Eigen::Index>(F.size()));
      const Eigen::VectorXd step = lu_.solve(-rhs);
      if (lu_.info() != Eigen::Success || !step.allFinite()) return false;
      ++iters;
      bool accepted = false;
      for (double lambda = 1.0; lambda >= 1.0 / 64; lambda *= 0.5) {
        std::vector<double> trial(u);
        for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += lambda * step[static_cast<Eigen::Index>(k)];
        double qt = 0.0;
        std::vector<double> Ft = residual_vector(dom_, trial, H, eps_, qt);
        if (!all_finite(Ft) || !admissible(qt)) continue;
        const double ft = max_abs(Ft);
        if (ft < fmax || ft <= cfg_.newton_tol) {
          u.swap(trial);
          F.swap(Ft);
          fmax = ft;
          accepted = true;
          break;
        }
      }
      if (!accepted) return false;
    }
    return false;
  }

 private:
  bool admissible(double qmax) const {
    if (cfg_.ambient == Ambient::Euclidean) return true;
    const double lim = 1.0 - 0.5 * cfg_.delta_guard;
    return std::sqrt(qmax) < lim;
  }

  void build_pattern() {
    const int n = dom_.size();
    std::vector<Eigen::Triplet<double>> trip;
    slots_.resize(n);
    counts_.resize(n);
    for (int p = 0; p < n; ++p) {
      slots_[p] = local_slots(dom_, p, counts_[p]);
      for (int k = 0; k < counts_[p]; ++k) trip.emplace_back(p, slots_[p][k], 0.0);
    }
    J_.resize(n, n);
    J_.setFromTriplets(trip.begin(), trip.end());
    J_.makeCompressed();
    lu_.analyzePattern(J_);
  }

  void assemble(double H, std::span<const double> u) {
    J_.coeffs().setZero();
    double qmax = 0.0;
    for (int p = 0; p < dom_.size(); ++p) {
      const auto& ids = slots_[p];
      const int cnt = counts_[p];
      auto val = [&](int id) {
        Dual d(u[id]);
        for (int k = 0; k < cnt; ++k)
          if (ids[k] == id) d.d[k] = 1.0;
        return d;
      };
      const Dual r = node_residual<Dual>(dom_, p, val, H, eps_, qmax);
      for (int k = 0; k < cnt; ++k) J_.coeffRef(p, ids[k]) = r.d[k];
    }
  }

  const GridDomain& dom_;
  SolverConfig cfg_;
  double eps_ = -1.0;
  std::vector<std::array<int, kSlots>> slots_;
  std::vector<int> counts_;
  Eigen::SparseMatrix<double> J_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace

std::vector<double> cmc_operator_residual(const GridDomain& domain, std::span<const double> u, double H,
                                          Ambient ambient) {
  if (u.size() != static_cast<std::size_t>(domain.size())) throw DomainError("cmc_operator_residual: size mismatch");
  double qmax = 0.0;
  auto r = residual_vector(domain, u, H, ambient_sign(ambient), qmax);
  if (ambient == Ambient::Lorentzian && !(qmax < 1.0))
    throw DomainError("cmc_operator_residual: spacelike condition |Du| < 1 violated");
  if (!all_finite(r)) throw DomainError("cmc_operator_residual: non-finite residual");
  return r;
}

double stencil_gradient_max(const GridDomain& domain, std::span<const double> u) {
  double qmax = 0.0;
  residual_vector(domain, u, 0.0, 0.0, qmax);
  return std::sqrt(qmax);
}

std::vector<double> node_gradients(const GridDomain& domain, std::span<const double> u) {
  const auto& nodes = domain.nodes();
  auto val = [&](int id) { return id >= 0 ? u[id] : 0.0; };
  auto grad = [&](int q, int plus, int minus) {
    const auto& n = nodes[q];
    const double ap = n.arm[plus], am = n.arm[minus];
    return (am * am * (val(n.neighbor[plus]) - u[q]) + ap * ap * (u[q] - val(n.neighbor[minus]))) /
           (ap * am * (ap + am));
  };
  std::vector<double> g(nodes.size());
  for (int p = 0; p < domain.size(); ++p) g[p] = std::hypot(grad(p, 0, 1), grad(p, 2, 3));
  return g;
}

GraphSolution make_solution(const GridDomain& domain, std::vector<double> u, double H, Ambient ambient) {
  GraphSolution s;
  s.H = H;
  s.ambient = ambient;
  s.u = std::move(u);
  s.grad = node_gradients(domain, s.u);
  s.Du_max = stencil_gradient_max(domain, s.u);
  double qmax = 0.0;
  const auto r = residual_vector(domain, s.u, H, ambient_sign(ambient), qmax);
  s.residual_max = all_finite(r) ? max_abs(r) : INFINITY;
  return s;
}

GraphSolution solve_dirichlet(const GridDomain& domain, const SolverConfig& cfg) {
  if (!(cfg.dH > 0) || !(cfg.min_dH > 0)) throw DomainError("solve_dirichlet: continuation step must be positive");
  if (!(cfg.delta_guard > 0 && cfg.delta_guard < 0.5)) throw DomainError("solve_dirichlet: delta_guard outside (0, 0.5)");
  if (domain.size() == 0) throw DomainError("solve_dirichlet: domain has no interior nodes");
  if (cfg.ambient == Ambient::Euclidean) {
    const double limit = domain.is_disk() ? 1.0 / domain.disk_radius() : std::sqrt(M_PI / domain.area());
    if (!(std::abs(cfg.H) < limit))
      throw DomainError("solve_dirichlet: Euclidean solvability condition |H| < " + format_number(limit) +
                        " not met for this domain");
  }
  std::vector<double> u(static_cast<std::size_t>(domain.size()), 0.0);
  int iters = 0, steps = 0;
  if (cfg.H != 0.0) {
    NewtonSolver newton(domain, cfg);
    const double dir = cfg.H > 0 ? 1.0 : -1.0;
    double current = 0.0, step = cfg.dH;
    while (current != cfg.H) {
      const double remaining = std::abs(cfg.H - current);
      const double next = step >= remaining * (1.0 - 1e-9) ? cfg.H : current + dir * step;
      std::vector<double> trial(u);
      if (newton.solve(next, trial, iters)) {
        u.swap(trial);
        current = next;
        ++steps;
        step = std::min(cfg.dH, 2.0 * step);
      } else {
        step *= 0.5;
        if (step < cfg.min_dH)
          throw DomainError("solve_dirichlet: continuation stalled at H = " + format_number(current));
      }
    }
  }
  GraphSolution s = make_solution(domain, std::move(u), cfg.H, cfg.ambient);
  s.newton_iters = iters;
  s.continuation_steps = steps;
  if (cfg.ambient == Ambient::Lorentzian && s.Du_max > 1.0 - cfg.delta_guard)
    throw DomainError("solve_dirichlet: solution gradient " + format_number(s.Du_max) +
                      " exceeds the spacelike guard 1 - delta_guard");
  return s;
}

HeightBoundReport height_bound_report(const GraphSolution& sol, double H, Ambient ambient, const GridDomain& domain) {
  HeightBoundReport r;
  r.max_abs_u = max_abs(sol.u);
  if (H == 0.0) {
    r.applicable = false;
    r.note = "height bounds require H != 0";
    return r;
  }
  r.applicable = true;
  const double slack = domain.h();
  if (ambient == Ambient::Euclidean) {
    r.bound = 1.0 / std::abs(H);
    r.note = "Euclidean bound 1/|H|";
  } else {
    const double R = 1.0 + domain.max_boundary_radius();
    const double ih = 1.0 / std::abs(H);
    r.bound = std::sqrt(ih * ih + R * R) - ih;
    r.note =
        "Lorentzian bound sqrt(1/H^2 + R^2) - 1/H from the enclosing hyperbolic cap, R = 1 + max boundary radius "
        "(the variant sqrt(R^2 - 1/H^2) - 1/H is not used: it is undefined for R < 1/|H|)";
  }
  r.margin = r.bound + slack - r.max_abs_u;
  r.ok = r.margin >= 0.0;
  return r;
}

GradientReport gradient_boundary_check(const GraphSolution& sol, const GridDomain& domain) {
  if (sol.grad.size() != static_cast<std::size_t>(domain.size()))
    throw DomainError("gradient_boundary_check: solution does not match the domain");
  GradientReport r;
  for (int p = 0; p < domain.size(); ++p) {
    double& target = domain.nodes()[p].ring() ? r.boundary_max : r.interior_max;
    target = std::max(target, sol.grad[p]);
  }
  r.slack = 2.0 * domain.h();
  r.ok = r.interior_max <= r.boundary_max + r.slack;
  r.below_convex_slope = std::max(r.interior_max, r.boundary_max) < std::sqrt(0.5) + r.slack;
  return r;
}

void write_solution_csv(std::ostream& os, const GridDomain& domain, const GraphSolution& sol) {
  os << "x,y,u,|Du|\n";
  for (int p = 0; p < domain.size(); ++p) {
    const auto& n = domain.nodes()[p];
    write_csv_row(os, {n.x, n.y, sol.u[p], sol.grad[p]});
  }
}

}  // namespace minkowski
