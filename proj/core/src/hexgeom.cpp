#include "hexfourier/hexgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hexfourier {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

char side_char(Side s) {
  switch (s) {
    case Side::kInside:
      return '-';
    case Side::kOutside:
      return '+';
    case Side::kBoundary:
      return '0';
  }
  return '?';
}

}  // namespace

HexPoint::HexPoint(double t1, double t2) : t_{t1, t2, -t1 - t2} {
  require_finite(t1, "t1");
  require_finite(t2, "t2");
  require_finite(t_[2], "t3");
}

HexPoint HexPoint::from_components(double t1, double t2, double t3) {
  require_finite(t1, "t1");
  require_finite(t2, "t2");
  require_finite(t3, "t3");
  const double scale = std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3));
  if (std::abs(t1 + t2 + t3) > kSumTolerance * scale) {
    throw std::invalid_argument("homogeneous coordinates must sum to zero");
  }
  return HexPoint(t1, t2, t3, Unchecked{});
}

HexPoint operator+(const HexPoint& a, const HexPoint& b) noexcept {
  return HexPoint(a.t_[0] + b.t_[0], a.t_[1] + b.t_[1], a.t_[2] + b.t_[2],
                  HexPoint::Unchecked{});
}

HexPoint operator-(const HexPoint& a, const HexPoint& b) noexcept {
  return HexPoint(a.t_[0] - b.t_[0], a.t_[1] - b.t_[1], a.t_[2] - b.t_[2],
                  HexPoint::Unchecked{});
}

HexPoint operator*(double s, const HexPoint& a) noexcept {
  return HexPoint(s * a.t_[0], s * a.t_[1], s * a.t_[2], HexPoint::Unchecked{});
}

HexPoint operator/(const HexPoint& a, double s) noexcept {
  return HexPoint(a.t_[0] / s, a.t_[1] / s, a.t_[2] / s, HexPoint::Unchecked{});
}

double dot(const HexPoint& s, const HexPoint& t) noexcept {
  return s.t1() * t.t1() + s.t2() * t.t2() + s.t3() * t.t3();
}

std::array<double, 3> differences(const HexPoint& t) noexcept {
  return {t.t1() - t.t2(), t.t2() - t.t3(), t.t3() - t.t1()};
}

double min_abs_difference(const HexPoint& t) noexcept {
  const auto d = differences(t);
  return std::min({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
}

HexPoint hex_from_cartesian(const CartesianPoint& x) {
  require_finite(x.x1, "x1");
  require_finite(x.x2, "x2");
  constexpr double h = std::numbers::sqrt3 / 2.0;
  const double t1 = -0.5 * x.x2 + h * x.x1;
  const double t2 = x.x2;
  return HexPoint(t1, t2);
}

CartesianPoint cartesian_from_hex(const HexPoint& t) {
  return {(t.t1() - t.t3()) / std::numbers::sqrt3, t.t2()};
}

double hexnorm(const HexPoint& t) noexcept {
  return std::max({std::abs(t.t1()), std::abs(t.t2()), std::abs(t.t3())});
}

bool RegionLabel::on_boundary() const noexcept {
  return std::ranges::any_of(pattern, [](Side s) { return s == Side::kBoundary; });
}

int RegionLabel::inside_count() const noexcept {
  return static_cast<int>(std::ranges::count(pattern, Side::kInside));
}

int RegionLabel::outside_count() const noexcept {
  return static_cast<int>(std::ranges::count(pattern, Side::kOutside));
}

std::string RegionLabel::name() const {
  std::string s = "E";
  for (Side p : pattern) s.push_back(side_char(p));
  return s;
}

RegionLabel region_classify(const HexPoint& t, double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("region threshold must be positive");
  }
  RegionLabel label;
  const auto d = differences(t);
  for (int i = 0; i < 3; ++i) {
    const double a = std::abs(d[i]);
    if (std::abs(a - threshold) <= kBoundaryBand) {
      label.pattern[i] = Side::kBoundary;
    } else {
      label.pattern[i] = a < threshold ? Side::kInside : Side::kOutside;
    }
  }
  return label;
}

GridSpec GridSpec::square(double lo, double hi, int n) {
  GridSpec g;
  g.system = GridSystem::kCartesian;
  g.center = {0.5 * (lo + hi), 0.5 * (lo + hi)};
  g.half_width = {0.5 * (hi - lo), 0.5 * (hi - lo)};
  g.resolution = {n, n};
  return g;
}

void GridSpec::validate() const {
  for (int i = 0; i < 2; ++i) {
    if (resolution[i] < 2) throw std::invalid_argument("grid resolution must be >= 2 per axis");
    if (!(half_width[i] > 0.0) || !std::isfinite(half_width[i])) {
      throw std::invalid_argument("grid half-widths must be positive");
    }
    if (!std::isfinite(center[i])) throw std::invalid_argument("grid center must be finite");
  }
}

std::size_t GridSpec::size() const noexcept {
  return static_cast<std::size_t>(resolution[0]) * static_cast<std::size_t>(resolution[1]);
}

std::vector<GridNode> grid_nodes(const GridSpec& spec) {
  spec.validate();
  const int nx = spec.resolution[0];
  const int ny = spec.resolution[1];
  auto coord = [&](int axis, int i, int n) {
    const double lo = spec.center[axis] - spec.half_width[axis];
    const double width = 2.0 * spec.half_width[axis];
    return lo + width * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  std::vector<GridNode> nodes;
  nodes.reserve(spec.size());
  for (int j = 0; j < ny; ++j) {
    const double b = coord(1, j, ny);
    for (int i = 0; i < nx; ++i) {
      const double a = coord(0, i, nx);
      if (spec.system == GridSystem::kCartesian) {
        const CartesianPoint x{a, b};
        nodes.push_back({x, hex_from_cartesian(x)});
      } else {
        const HexPoint t(a, b);
        nodes.push_back({cartesian_from_hex(t), t});
      }
    }
  }
  return nodes;
}

std::vector<HexPoint> hex_grid(const GridSpec& spec) {
  const auto nodes = grid_nodes(spec);
  std::vector<HexPoint> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.t);
  return out;
}

}  // namespace hexfourier
