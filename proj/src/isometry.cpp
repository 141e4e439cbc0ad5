#include "minkowski/isometry.hpp"

#include <algorithm>
#include <cmath>

#include "minkowski/error.hpp"

namespace minkowski {

Mat3 Mat3::identity() { return diag(1, 1, 1); }

Mat3 Mat3::diag(double d0, double d1, double d2) {
  Mat3 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  return m;
}

Mat3 Mat3::from_rows(const Vec3L& r0, const Vec3L& r1, const Vec3L& r2) {
  return Mat3{{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
}

Mat3 Mat3::transpose() const {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

double Mat3::det() const {
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 operator*(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m(i, k) * n(k, j);
      r(i, j) = s;
    }
  return r;
}

Vec3L operator*(const Mat3& m, const Vec3L& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z, m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

double max_abs_diff(const Mat3& m, const Mat3& n) {
  double d = 0.0;
  for (int k = 0; k < 9; ++k) d = std::max(d, std::abs(m.a[k] - n.a[k]));
  return d;
}

Mat3 metric_matrix() { return Mat3::diag(1, 1, -1); }

std::string_view to_string(IsometryComponent c) {
  switch (c) {
    case IsometryComponent::PP:
      return "PP";
    case IsometryComponent::PM:
      return "PM";
    case IsometryComponent::MP:
      return "MP";
    case IsometryComponent::MM:
      return "MM";
  }
  return "?";
}

bool is_lorentz(const Mat3& m, double tol) {
  const Mat3 g = metric_matrix();
  return max_abs_diff(m.transpose() * g * m, g) <= tol;
}

IsometryComponent component(const Mat3& m) {
  if (!is_lorentz(m, 1e-9)) throw DomainError("component: matrix is not a Lorentz isometry");
  const double d = m.det();
  const double a33 = m(2, 2);
  const bool det_pos = std::abs(d - 1.0) <= 1e-9;
  const bool det_neg = std::abs(d + 1.0) <= 1e-9;
  if ((!det_pos && !det_neg) || std::abs(a33) <= 1e-9) throw DomainError("component: ambiguous classification");
  if (det_pos) return a33 > 0 ? IsometryComponent::PP : IsometryComponent::PM;
  return a33 > 0 ? IsometryComponent::MP : IsometryComponent::MM;
}

Mat3 boost_timelike(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Mat3{{c, -s, 0, s, c, 0, 0, 0, 1}};
}

Mat3 boost_spacelike(double phi) {
  const double c = std::cosh(phi), s = std::sinh(phi);
  return Mat3{{1, 0, 0, 0, c, s, 0, s, c}};
}

Mat3 boost_lightlike(double t) {
  const double h = 0.5 * t * t;
  return Mat3{{1, t, -t, -t, 1 - h, h, -t, -h, 1 + h}};
}

std::vector<Vec3L> orbit(CausalClass axis, const Vec3L& p0, std::span<const double> params) {
  const double scale = 1e-12 * (1.0 + euclid_norm(p0));
  Mat3 (*boost)(double) = nullptr;
  switch (axis) {
    case CausalClass::Timelike:
      if (std::hypot(p0.x, p0.y) <= scale) throw DomainError("orbit: point lies on the rotation axis");
      boost = boost_timelike;
      break;
    case CausalClass::Spacelike:
      if (std::hypot(p0.y, p0.z) <= scale) throw DomainError("orbit: point lies on the boost axis");
      boost = boost_spacelike;
      break;
    case CausalClass::Lightlike:
      if (std::abs(p0.x) <= scale && std::abs(p0.y - p0.z) <= scale)
        throw DomainError("orbit: point lies on the null axis");
      boost = boost_lightlike;
      break;
  }
  std::vector<Vec3L> out;
  out.reserve(params.size());
  for (double t : params) out.push_back(boost(t) * p0);
  return out;
}

RigidMotion::RigidMotion(const Mat3& linear, const Vec3L& translation) : linear_(linear), translation_(translation) {
  if (!is_lorentz(linear_, 1e-9)) throw DomainError("RigidMotion: linear part is not a Lorentz isometry");
}

RigidMotion RigidMotion::compose(const RigidMotion& inner) const {
  return RigidMotion(linear_ * inner.linear_, linear_ * inner.translation_ + translation_);
}

}  // namespace minkowski
