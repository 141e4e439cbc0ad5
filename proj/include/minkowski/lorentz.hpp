#pragma once

#include <array>
#include <cmath>
#include <string_view>
#include <vector>

namespace minkowski {

struct Vec3L {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3L() = default;
  constexpr Vec3L(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3L& operator+=(const Vec3L& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3L& operator-=(const Vec3L& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3L& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
};

constexpr Vec3L operator+(Vec3L a, const Vec3L& b) { return a += b; }
constexpr Vec3L operator-(Vec3L a, const Vec3L& b) { return a -= b; }
constexpr Vec3L operator-(const Vec3L& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3L operator*(double s, Vec3L a) { return a *= s; }
constexpr Vec3L operator*(Vec3L a, double s) { return a *= s; }
constexpr Vec3L operator/(const Vec3L& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

inline constexpr Vec3L kE1{1.0, 0.0, 0.0};
inline constexpr Vec3L kE2{0.0, 1.0, 0.0};
inline constexpr Vec3L kE3{0.0, 0.0, 1.0};

enum class CausalClass { Spacelike, Timelike, Lightlike };

std::string_view to_string(CausalClass c);

// Relative tolerance used to decide that a Lorentzian square is zero.
inline constexpr double kLightlikeTol = 1e-12;

constexpr double lorentz_dot(const Vec3L& u, const Vec3L& v) {
  return u.x * v.x + u.y * v.y - u.z * v.z;
}
constexpr double euclid_dot(const Vec3L& u, const Vec3L& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}
inline double euclid_norm(const Vec3L& v) { return std::sqrt(euclid_dot(v, v)); }

bool is_finite(const Vec3L& v);

// Classifies a scalar square q measured against a Euclidean scale.
CausalClass classify_square(double q, double euclid_scale, double rel_tol = kLightlikeTol);

CausalClass causal_class(const Vec3L& v);

// sqrt(|<v,v>|)
double norm(const Vec3L& v);

// Lorentzian vector product: <u x v, w> = det(u, v, w).
constexpr Vec3L cross(const Vec3L& u, const Vec3L& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, -(u.x * v.y - u.y * v.x)};
}
constexpr Vec3L euclid_cross(const Vec3L& u, const Vec3L& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

// Determinant of the matrix with columns u, v, w.
constexpr double det3(const Vec3L& u, const Vec3L& v, const Vec3L& w) {
  return euclid_dot(euclid_cross(u, v), w);
}

bool same_timelike_cone(const Vec3L& u, const Vec3L& v);
double hyperbolic_angle(const Vec3L& u, const Vec3L& v);
bool future_directed(const Vec3L& v);

// A line or plane through the origin given by independent generators.
class Subspace {
 public:
  static Subspace line(const Vec3L& v);
  static Subspace plane(const Vec3L& u, const Vec3L& v);

  int dim() const { return static_cast<int>(generators_.size()); }
  const std::vector<Vec3L>& generators() const { return generators_; }
  // Row-major Gram matrix of pairwise Lorentzian products (dim x dim).
  std::vector<double> gram() const;

 private:
  explicit Subspace(std::vector<Vec3L> g) : generators_(std::move(g)) {}
  std::vector<Vec3L> generators_;
};

CausalClass causal_class(const Subspace& s);

}  // namespace minkowski
