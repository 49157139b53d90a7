#include "hexfourier/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hexfourier/error.hpp"
#include "hexfourier/specfun.hpp"
#include "rules.hpp"

namespace hexfourier {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoThirds = 2.0 / 3.0;
// Below this node gap the divided difference is taken as the mean of the
// derivative over the segment.
constexpr double kGapSwitch = 0.05;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

struct KnotPair {
  double x;
  double y;
};

// The three knot pairs of M1(.|t).
std::array<KnotPair, 3> knot_pairs(const HexPoint& t) noexcept {
  const double t1 = t.t1();
  const double t2 = t.t2();
  const double t3 = t.t3();
  return {KnotPair{t1 - t3, t2 - t3}, KnotPair{t2 - t1, t3 - t1}, KnotPair{t3 - t2, t1 - t2}};
}

double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// [X, Y] q for the scaled nodes X = kappa x, Y = kappa y. Accumulates the
// magnitude of each contribution into abs_sum.
template <class Q, class DQ>
double divided_difference_sum(const std::array<KnotPair, 3>& pairs, double kappa, Q&& q, DQ&& dq,
                              double& abs_sum) {
  const auto& rule = detail::gauss_legendre(8);
  double total = 0.0;
  abs_sum = 0.0;
  for (const auto& p : pairs) {
    const double X = kappa * p.x;
    const double Y = kappa * p.y;
    const double gap = Y - X;
    double dd = 0.0;
    if (std::abs(gap) >= kGapSwitch) {
      dd = (q(Y) - q(X)) / gap;
    } else {
      const double mid = 0.5 * (X + Y);
      const double half = 0.5 * gap;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        dd += 0.5 * rule.weights[i] * dq(mid + half * rule.nodes[i]);
      }
    }
    total += dd;
    abs_sum += std::abs(dd);
  }
  return total;
}

// q(z) = (1 - cos z)/z and its derivative.
double cos_q(double z) {
  if (z == 0.0) return 0.0;
  const double s = std::sin(0.5 * z);
  return 2.0 * s * s / z;
}

double cos_dq(double z) {
  const double s = sinc(0.5 * z);
  return sinc(z) - 0.5 * s * s;
}

// q(z) = (1 - F_delta(z))/z and its derivative.
struct CesaroProfile {
  double delta;

  double q(double z) const {
    if (std::abs(z) <= 8.0) {
      // -sum_{n>=1} c_n (-1/4)^n z^(2n-1)
      const double b1 = 0.5 * (delta + 1.0);
      const double b2 = 0.5 * (delta + 2.0);
      const double z2 = -0.25 * z * z;
      double coef = 1.0;  // c_n (-z^2/4)^n
      double sum = 0.0;
      for (int n = 0; n < 200; ++n) {
        coef *= z2 / ((b1 + n) * (b2 + n));
        sum += coef;
        if (std::abs(coef) < 1e-18 * std::abs(sum) && std::abs(z2) < (b1 + n) * (b2 + n)) break;
      }
      // 1 - F = -sum; q = -sum / z, written without dividing by a small z.
      return z == 0.0 ? 0.0 : -sum / z;
    }
    return (1.0 - f_delta(delta, z)) / z;
  }

  double dq(double z) const {
    if (std::abs(z) <= 8.0) {
      // -sum_{n>=1} c_n (-1/4)^n (2n-1) z^(2n-2)
      const double b1 = 0.5 * (delta + 1.0);
      const double b2 = 0.5 * (delta + 2.0);
      const double z2 = z * z;
      double coef = 1.0;  // c_n (-1/4)^n z^(2n-2)
      double sum = 0.0;
      for (int n = 0; n < 200; ++n) {
        coef *= -0.25 / ((b1 + n) * (b2 + n));
        if (n > 0) coef *= z2;
        const double add = coef * (2.0 * n + 1.0);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) && 0.25 * z2 < (b1 + n) * (b2 + n)) break;
      }
      return -sum;
    }
    return -f_delta_derivative(delta, z) / z - (1.0 - f_delta(delta, z)) / (z * z);
  }
};

// -(9/2) [P(a)/(b c) + P(b)/(c a) + P(c)/(a b)] for the pairwise differences
// a, b, c of t, with P evaluated at kappa times the difference.
template <class P>
KernelEval three_term(const HexPoint& t, double kappa, P&& profile) {
  const auto d = differences(t);
  const double a = d[0];
  const double b = d[1];
  const double c = d[2];
  const double t1 = profile(kappa * a) / (b * c);
  const double t2 = profile(kappa * b) / (c * a);
  const double t3 = profile(kappa * c) / (a * b);
  const double max_term = 4.5 * std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  return {-4.5 * (t1 + t2 + t3), Method::kClosedForm, 10.0 * kEps * max_term};
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kClosedForm:
      return "closed-form";
    case Method::kTaylorFallback:
      return "taylor-fallback";
    case Method::kLimitFormula:
      return "limit-formula";
  }
  return "unknown";
}

bool near_singular(const HexPoint& t) noexcept {
  return min_abs_difference(t) < kSingularThreshold * (1.0 + hexnorm(t));
}

KernelEval dirichlet(double rho, const HexPoint& t) {
  require_positive(rho, "rho");
  if (t.is_origin()) return {3.0 * rho * rho, Method::kLimitFormula, 4.0 * kEps * rho * rho};
  const double kappa = kTwoThirds * rho;
  if (!near_singular(t)) {
    return three_term(t, kappa, [](double z) { return std::cos(z); });
  }
  double abs_sum = 0.0;
  const double dd = divided_difference_sum(knot_pairs(t), kappa, cos_q, cos_dq, abs_sum);
  const double scale = 2.0 * rho * rho;
  return {scale * dd, Method::kTaylorFallback, 20.0 * kEps * scale * abs_sum};
}

KernelEval e_kernel(double rho, const HexPoint& t) {
  require_positive(rho, "rho");
  if (t.is_origin()) return {6.0 * rho, Method::kLimitFormula, 4.0 * kEps * rho};
  const double kappa = kTwoThirds * rho;
  if (!near_singular(t)) {
    const auto d = differences(t);
    const double a = d[0];
    const double b = d[1];
    const double c = d[2];
    const double t1 = a * std::sin(kappa * a) / (b * c);
    const double t2 = b * std::sin(kappa * b) / (c * a);
    const double t3 = c * std::sin(kappa * c) / (a * b);
    const double max_term = 3.0 * std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    return {3.0 * (t1 + t2 + t3), Method::kClosedForm, 10.0 * kEps * max_term};
  }
  // [x, y] sin(kappa .) = kappa cos(kappa m) sinc(kappa h), m midpoint, h half-gap.
  double total = 0.0;
  double abs_sum = 0.0;
  for (const auto& p : knot_pairs(t)) {
    const double m = 0.5 * (p.x + p.y);
    const double h = 0.5 * (p.y - p.x);
    const double v = std::cos(kappa * m) * sinc(kappa * h);
    total += v;
    abs_sum += std::abs(v);
  }
  return {2.0 * rho * total, Method::kTaylorFallback, 20.0 * kEps * 2.0 * rho * abs_sum};
}

KernelEval cesaro_kernel(double R, double delta, const HexPoint& t) {
  require_positive(R, "R");
  require_positive(delta, "delta");
  if (t.is_origin()) {
    const double v = 6.0 * R * R / ((delta + 1.0) * (delta + 2.0));
    return {v, Method::kLimitFormula, 4.0 * kEps * v};
  }
  const double kappa = kTwoThirds * R;
  if (!near_singular(t)) {
    return three_term(t, kappa, [delta](double z) { return f_delta(delta, z); });
  }
  const CesaroProfile prof{delta};
  double abs_sum = 0.0;
  const double dd = divided_difference_sum(
      knot_pairs(t), kappa, [&](double z) { return prof.q(z); },
      [&](double z) { return prof.dq(z); }, abs_sum);
  const double scale = 2.0 * R * R;
  return {scale * dd, Method::kTaylorFallback, 100.0 * kEps * scale * abs_sum};
}

double g_direct(const HexPoint& t) noexcept {
  const auto d = differences(t);
  const double a = d[0];
  const double b = d[1];
  const double c = d[2];
  return -b * c * (1.0 - std::cos(a)) - c * a * (1.0 - std::cos(b)) - a * b * (1.0 - std::cos(c));
}

double g_sos(const HexPoint& t) noexcept {
  const auto d = differences(t);
  const double a = d[0];
  const double b = d[1];
  const double c = d[2];
  const double p = a * std::cos(t.t3()) + b * std::cos(t.t1()) + c * std::cos(t.t2());
  const double q = a * std::sin(t.t3()) + b * std::sin(t.t1()) + c * std::sin(t.t2());
  return 0.5 * (p * p + q * q);
}

double bspline1(double u, double a, double b) {
  if (a == b) throw std::invalid_argument("bspline1: degenerate knots a == b");
  if (b > u && u > a) return 1.0 / (b - a);
  if (a > u && u > b) return 1.0 / (a - b);
  return 0.0;
}

double m1_spline(double u, const HexPoint& t) {
  const auto pairs = knot_pairs(t);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (pairs[i].x == pairs[i].y) {
      throw DegenerateKnotsError("m1_spline: knot pair " + std::to_string(i) + " collapsed", i);
    }
    sum += bspline1(u, pairs[i].x, pairs[i].y);
  }
  return sum;
}

double m_spline(double u, const HexPoint& t) {
  return 0.5 * (m1_spline(u, t) + m1_spline(u, -t));
}

std::vector<SplinePiece> m_spline_pieces(const HexPoint& t) {
  std::vector<double> knots;
  knots.reserve(12);
  for (const auto& p : knot_pairs(t)) {
    knots.insert(knots.end(), {p.x, p.y, -p.x, -p.y});
  }
  std::ranges::sort(knots);
  const auto [first, last] = std::ranges::unique(knots);
  knots.erase(first, last);

  std::vector<SplinePiece> pieces;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    const double v = m_spline(0.5 * (lo + hi), t);
    if (v != 0.0) pieces.push_back({lo, hi, v});
  }
  return pieces;
}

double m_spline_integral(const HexPoint& t) {
  double sum = 0.0;
  for (const auto& p : m_spline_pieces(t)) sum += p.value * (p.hi - p.lo);
  return sum;
}

double e_kernel_via_spline(double rho, const HexPoint& t) {
  require_positive(rho, "rho");
  const double kappa = kTwoThirds * rho;
  double sum = 0.0;
  for (const auto& p : m_spline_pieces(t)) {
    if (p.hi <= 0.0) continue;
    const double lo = std::max(p.lo, 0.0);
    // int_lo^hi cos(kappa u) du = 2 cos(kappa m) sin(kappa h)/kappa
    const double m = 0.5 * (lo + p.hi);
    const double h = 0.5 * (p.hi - lo);
    sum += p.value * 2.0 * h * std::cos(kappa * m) * sinc(kappa * h);
  }
  return 4.0 * rho * sum;
}

double j_closed(const HexPoint& t) {
  const RegionLabel label = region_classify(t, 1.0);
  if (label.on_boundary()) {
    throw BoundaryBandError("j_closed: |t_i - t_j| lies in the boundary band of 1 (" +
                            label.name() + ")");
  }
  const int inside = label.inside_count();
  if (inside == 0 || inside == 3) return 0.0;

  const auto d = differences(t);
  if (inside == 2) {
    // The two inside differences carry the result.
    double prod = 1.0;
    for (int i = 0; i < 3; ++i) {
      if (label.pattern[i] == Side::kInside) prod *= d[i];
    }
    return 1.5 * kPi / prod;
  }
  double prod = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (label.pattern[i] == Side::kOutside) prod *= d[i];
  }
  return -1.5 * kPi / prod;
}

}  // namespace hexfourier
