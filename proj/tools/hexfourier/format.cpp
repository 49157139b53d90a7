#include "format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hexfourier::cli {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

namespace {

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:n, got '" + std::string(text) + "'");
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  int n = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (res.ec != std::errc{} || res.ptr != parts[2].data() + parts[2].size()) {
    throw UsageError("grid size must be an integer, got '" + std::string(parts[2]) + "'");
  }
  if (n < 2) throw UsageError("grid needs at least 2 points per axis");
  if (!(lo < hi)) throw UsageError("grid needs lo < hi");
  return GridSpec::square(lo, hi, n);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (auto p : split(text, ',')) out.push_back(parse_double(p));
  return out;
}

CartesianPoint parse_point(std::string_view text) {
  const auto v = parse_list(text);
  if (v.size() != 2) throw UsageError("point must be x1,x2, got '" + std::string(text) + "'");
  return {v[0], v[1]};
}

void write_pgm(std::ostream& os, const GridSpec& grid, const std::vector<double>& values,
               double lo, double hi) {
  const int w = grid.columns();
  const int h = grid.rows();
  os << "P5\n" << w << ' ' << h << "\n255\n";
  const double span = hi - lo;
  for (int row = h - 1; row >= 0; --row) {
    for (int col = 0; col < w; ++col) {
      const double v = values[static_cast<std::size_t>(row) * w + col];
      unsigned char px = 0;
      if (std::isfinite(v) && span > 0.0) {
        const double s = std::clamp((v - lo) / span, 0.0, 1.0);
        px = static_cast<unsigned char>(std::lround(255.0 * s));
      }
      os.put(static_cast<char>(px));
    }
  }
}

}  // namespace hexfourier::cli
