#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hexfourier/hexgeom.hpp"

namespace hexfourier::cli {

// Shortest decimal that round-trips to the same double; "nan", "inf", "-inf".
std::string fmt(double v);

// Thrown for malformed command-line values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "lo:hi:n" as a square Cartesian grid, n >= 2 and lo < hi.
GridSpec parse_grid(std::string_view text);

// "a,b,c" as doubles; empty text gives an empty list.
std::vector<double> parse_list(std::string_view text);

// "x1,x2" as a Cartesian point.
CartesianPoint parse_point(std::string_view text);

// Binary P5 graymap of `values` laid out in grid order (rows from low x2 to
// high x2); the image puts high x2 on top. Finite values are scaled linearly
// from [lo, hi] to [0, 255]; non-finite values map to 0.
void write_pgm(std::ostream& os, const GridSpec& grid, const std::vector<double>& values,
               double lo, double hi);

}  // namespace hexfourier::cli
