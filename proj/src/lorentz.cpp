#include "minkowski/lorentz.hpp"

#include <algorithm>

#include "minkowski/error.hpp"

namespace minkowski {

std::string_view to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike:
      return "Spacelike";
    case CausalClass::Timelike:
      return "Timelike";
    case CausalClass::Lightlike:
      return "Lightlike";
  }
  return "?";
}

bool is_finite(const Vec3L& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

CausalClass classify_square(double q, double euclid_scale, double rel_tol) {
  if (std::abs(q) <= rel_tol * (1.0 + euclid_scale)) return CausalClass::Lightlike;
  return q > 0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

CausalClass causal_class(const Vec3L& v) {
  const double e2 = euclid_dot(v, v);
  if (e2 == 0.0) return CausalClass::Spacelike;
  return classify_square(lorentz_dot(v, v), e2);
}

double norm(const Vec3L& v) { return std::sqrt(std::abs(lorentz_dot(v, v))); }

namespace {
void require_timelike(const Vec3L& v, const char* op) {
  if (causal_class(v) != CausalClass::Timelike)
    throw DomainError(std::string(op) + ": argument is not timelike");
}
}  // namespace

bool same_timelike_cone(const Vec3L& u, const Vec3L& v) {
  require_timelike(u, "same_timelike_cone");
  require_timelike(v, "same_timelike_cone");
  return lorentz_dot(u, v) < 0.0;
}

double hyperbolic_angle(const Vec3L& u, const Vec3L& v) {
  if (!same_timelike_cone(u, v)) throw DomainError("hyperbolic_angle: vectors lie in different timelike cones");
  const double c = -lorentz_dot(u, v) / (norm(u) * norm(v));
  return std::acosh(std::max(1.0, c));
}

bool future_directed(const Vec3L& v) {
  if (causal_class(v) == CausalClass::Spacelike)
    throw DomainError("future_directed: spacelike vector has no time orientation");
  return v.z > 0.0;
}

Subspace Subspace::line(const Vec3L& v) {
  if (!is_finite(v) || euclid_dot(v, v) == 0.0) throw DomainError("Subspace: zero or non-finite generator");
  return Subspace({v});
}

Subspace Subspace::plane(const Vec3L& u, const Vec3L& v) {
  if (!is_finite(u) || !is_finite(v)) throw DomainError("Subspace: non-finite generator");
  const double uu = euclid_dot(u, u), vv = euclid_dot(v, v), uv = euclid_dot(u, v);
  const double g = uu * vv - uv * uv;
  if (!(g > kLightlikeTol * uu * vv)) throw DomainError("Subspace: generators are linearly dependent");
  return Subspace({u, v});
}

std::vector<double> Subspace::gram() const {
  const auto n = generators_.size();
  std::vector<double> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = lorentz_dot(generators_[i], generators_[j]);
  return g;
}

CausalClass causal_class(const Subspace& s) {
  const auto& gen = s.generators();
  if (s.dim() == 1) return causal_class(gen[0]);
  const auto g = s.gram();
  const double det = g[0] * g[3] - g[1] * g[2];
  const double scale = euclid_dot(gen[0], gen[0]) * euclid_dot(gen[1], gen[1]);
  if (std::abs(det) <= kLightlikeTol * (1.0 + scale)) return CausalClass::Lightlike;
  // An index-one ambient admits no negative-definite plane.
  return det > 0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

}  // namespace minkowski
