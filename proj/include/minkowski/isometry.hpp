#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "minkowski/lorentz.hpp"

namespace minkowski {

struct Mat3 {
  std::array<double, 9> a{};  // row-major

  static Mat3 identity();
  static Mat3 diag(double d0, double d1, double d2);
  static Mat3 from_rows(const Vec3L& r0, const Vec3L& r1, const Vec3L& r2);

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  Mat3 transpose() const;
  double det() const;
};

Mat3 operator*(const Mat3& m, const Mat3& n);
Vec3L operator*(const Mat3& m, const Vec3L& v);
double max_abs_diff(const Mat3& m, const Mat3& n);

// Gram matrix of the Lorentzian metric, diag(1, 1, -1).
Mat3 metric_matrix();

enum class IsometryComponent { PP, PM, MP, MM };
std::string_view to_string(IsometryComponent c);

bool is_lorentz(const Mat3& m, double tol = 1e-12);

// (sign det, sign a33). Throws for non-isometries and ambiguous signs.
IsometryComponent component(const Mat3& m);

Mat3 boost_timelike(double theta);   // fixes E3
Mat3 boost_spacelike(double phi);    // fixes E1
Mat3 boost_lightlike(double theta);  // fixes E2 + E3

// Samples of the boost orbit of p0 about the axis of the given causal type.
std::vector<Vec3L> orbit(CausalClass axis, const Vec3L& p0, std::span<const double> params);

class RigidMotion {
 public:
  RigidMotion(const Mat3& linear, const Vec3L& translation);
  static RigidMotion identity() { return RigidMotion(Mat3::identity(), {}); }

  const Mat3& linear() const { return linear_; }
  const Vec3L& translation() const { return translation_; }

  Vec3L apply_point(const Vec3L& p) const { return linear_ * p + translation_; }
  Vec3L apply_vector(const Vec3L& v) const { return linear_ * v; }
  RigidMotion compose(const RigidMotion& inner) const;

 private:
  Mat3 linear_;
  Vec3L translation_;
};

}  // namespace minkowski
