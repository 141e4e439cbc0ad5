#include "minkowski/io.hpp"

#include <cstdio>
#include <ostream>

#include "minkowski/error.hpp"

namespace minkowski {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv_row(std::ostream& os, std::span<const double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, std::initializer_list<double> values) {
  write_csv_row(os, std::span<const double>(values.begin(), values.size()));
}

void write_polyline_csv(std::ostream& os, std::span<const double> t, std::span<const Vec3L> points,
                        std::span<const double> kappa, std::span<const double> tau) {
  if (t.size() != points.size()) throw DomainError("write_polyline_csv: size mismatch");
  const bool frenet = !kappa.empty() || !tau.empty();
  if (frenet && (kappa.size() != t.size() || tau.size() != t.size()))
    throw DomainError("write_polyline_csv: curvature columns size mismatch");
  os << (frenet ? "t,x,y,z,kappa,tau\n" : "t,x,y,z\n");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (frenet)
      write_csv_row(os, {t[i], points[i].x, points[i].y, points[i].z, kappa[i], tau[i]});
    else
      write_csv_row(os, {t[i], points[i].x, points[i].y, points[i].z});
  }
}

}  // namespace minkowski
