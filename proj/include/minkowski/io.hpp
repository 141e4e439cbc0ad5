#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "minkowski/lorentz.hpp"

namespace minkowski {

// Fixed 17 significant digits.
std::string format_number(double x);

void write_csv_row(std::ostream& os, std::initializer_list<double> values);
void write_csv_row(std::ostream& os, std::span<const double> values);

// Polyline CSV "t,x,y,z[,kappa,tau]"; kappa/tau empty spans omit the columns.
void write_polyline_csv(std::ostream& os, std::span<const double> t, std::span<const Vec3L> points,
                        std::span<const double> kappa = {}, std::span<const double> tau = {});

}  // namespace minkowski
