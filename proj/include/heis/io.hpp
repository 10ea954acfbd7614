#pragma once

#include <iosfwd>
#include <vector>

#include "heis/point.hpp"

namespace heis {

/// Repo-wide point CSV: header "x,y,t", one point per row, 17 significant digits.
void write_points_csv(std::ostream& out, const std::vector<HeisPoint>& points);

/// Parses the point CSV; throws std::invalid_argument on malformed or
/// non-finite input.
std::vector<HeisPoint> read_points_csv(std::istream& in);

}  // namespace heis
