#pragma once

// Homogeneous coordinates for the plane t1 + t2 + t3 = 0, the hexagonal norm,
// Cartesian conversions, region labels and evaluation grids.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace hexfourier {

struct CartesianPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

// A point of the plane {t in R^3 : t1 + t2 + t3 = 0}.
//
// The two-argument constructor is canonical: it sets t3 = -t1 - t2. The
// three-argument factory validates the sum-zero constraint instead.
class HexPoint {
 public:
  static constexpr double kSumTolerance = 1e-12;

  HexPoint() = default;
  HexPoint(double t1, double t2);

  // Throws std::invalid_argument unless |t1+t2+t3| <= 1e-12 * max(1, sum|t_i|)
  // and every coordinate is finite.
  static HexPoint from_components(double t1, double t2, double t3);

  double t1() const noexcept { return t_[0]; }
  double t2() const noexcept { return t_[1]; }
  double t3() const noexcept { return t_[2]; }
  double operator[](std::size_t i) const noexcept { return t_[i]; }
  const std::array<double, 3>& coords() const noexcept { return t_; }

  bool is_origin() const noexcept {
    return t_[0] == 0.0 && t_[1] == 0.0 && t_[2] == 0.0;
  }

  HexPoint operator-() const noexcept { return HexPoint(-t_[0], -t_[1], -t_[2], Unchecked{}); }
  friend HexPoint operator+(const HexPoint& a, const HexPoint& b) noexcept;
  friend HexPoint operator-(const HexPoint& a, const HexPoint& b) noexcept;
  friend HexPoint operator*(double s, const HexPoint& a) noexcept;
  friend HexPoint operator/(const HexPoint& a, double s) noexcept;

  friend bool operator==(const HexPoint&, const HexPoint&) = default;

 private:
  struct Unchecked {};
  HexPoint(double t1, double t2, double t3, Unchecked) noexcept : t_{t1, t2, t3} {}

  std::array<double, 3> t_{0.0, 0.0, 0.0};
};

// Euclidean dot product in R^3 (restricted to the plane).
double dot(const HexPoint& s, const HexPoint& t) noexcept;

// (t1 - t2, t2 - t3, t3 - t1).
std::array<double, 3> differences(const HexPoint& t) noexcept;

// Smallest of |t1 - t2|, |t2 - t3|, |t3 - t1|.
double min_abs_difference(const HexPoint& t) noexcept;

HexPoint hex_from_cartesian(const CartesianPoint& x);
CartesianPoint cartesian_from_hex(const HexPoint& t);

// max(|t1|, |t2|, |t3|)
double hexnorm(const HexPoint& t) noexcept;

enum class Side { kInside, kOutside, kBoundary };

// Sign pattern of (|t1-t2|, |t2-t3|, |t3-t1|) against a threshold.
struct RegionLabel {
  std::array<Side, 3> pattern{Side::kInside, Side::kInside, Side::kInside};

  bool on_boundary() const noexcept;
  int inside_count() const noexcept;
  int outside_count() const noexcept;
  // "E--+" style name in pair order (12, 23, 31); boundary entries print as '0'.
  std::string name() const;

  friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

inline constexpr double kBoundaryBand = 1e-12;

RegionLabel region_classify(const HexPoint& t, double threshold = 1.0);

enum class GridSystem { kCartesian, kHexPlane };

// A rectangular lattice of evaluation points. For kCartesian the axes are
// (x1, x2); for kHexPlane they are (t1, t2) with t3 = -t1 - t2.
struct GridSpec {
  GridSystem system = GridSystem::kCartesian;
  std::array<double, 2> center{0.0, 0.0};
  std::array<double, 2> half_width{1.0, 1.0};
  std::array<int, 2> resolution{2, 2};

  // Square Cartesian grid over [lo, hi]^2 with n points per axis.
  static GridSpec square(double lo, double hi, int n);

  void validate() const;
  std::size_t size() const noexcept;
  int columns() const noexcept { return resolution[0]; }
  int rows() const noexcept { return resolution[1]; }
};

struct GridNode {
  CartesianPoint x;
  HexPoint t;
};

// Row-major: the second axis is the outer (row) index, rows run from the low
// end of the second axis to the high end.
std::vector<GridNode> grid_nodes(const GridSpec& spec);
std::vector<HexPoint> hex_grid(const GridSpec& spec);

}  // namespace hexfourier
