#include "hexfourier/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hexfourier/error.hpp"
#include "rules.hpp"

namespace hexfourier {
namespace {

struct Interval {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

QuadResult<double> quad_1d(const ScalarFn& f, double a, double b, const QuadratureControl& ctrl,
                           int initial_panels) {
  ctrl.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument("quad_1d requires finite a < b");
  }
  initial_panels = std::max(1, initial_panels);

  std::priority_queue<Interval> heap;
  double total = 0.0;
  double total_err = 0.0;
  const double w = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * w;
    const double hi = (i + 1 == initial_panels) ? b : lo + w;
    const auto r = detail::gauss_kronrod21(f, lo, hi);
    heap.push({lo, hi, r.value, r.error});
    total += r.value;
    total_err += r.error;
  }

  int subdivisions = initial_panels;
  auto done = [&] { return total_err <= std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(total)); };
  while (!done() && subdivisions < ctrl.max_subdivisions) {
    const Interval worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at machine resolution
    heap.pop();
    const auto left = detail::gauss_kronrod21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod21(f, mid, worst.b);
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++subdivisions;
    // Re-sum to avoid drift in the running totals.
    if (subdivisions % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    } else {
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
    }
  }

  // Final deterministic sum in position order.
  std::vector<Interval> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::ranges::sort(parts, [](const Interval& x, const Interval& y) { return x.a < y.a; });
  total = 0.0;
  total_err = 0.0;
  for (const auto& p : parts) {
    total += p.value;
    total_err += p.error;
  }
  QuadResult<double> res;
  res.value = total;
  res.error = total_err;
  res.subdivisions = subdivisions;
  res.converged = done();
  return res;
}

QuadResult<double> quad_1d_endpoint_weight(const ScalarFn& f, double a, double b, double alpha,
                                           const QuadratureControl& ctrl, int initial_panels) {
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("endpoint weight exponent must exceed -1");
  }
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::invalid_argument("quad_1d_endpoint_weight requires finite a < b");
  }
  // s = (b - x)^(1+alpha) / (1+alpha), ds = -(b - x)^alpha dx.
  const double p = 1.0 + alpha;
  const double smax = std::pow(b - a, p) / p;
  auto g = [&](double s) {
    const double dist = std::pow(p * s, 1.0 / p);
    return f(b - dist);
  };
  return quad_1d(g, 0.0, smax, ctrl, initial_panels);
}

namespace {

// One of the six triangles: s_j = r, s_i = -r v (kind 0) or s_i = -r, s_j = r v
// (kind 1), where s_i <= 0 <= s_j in chart (i, j).
struct Triangle {
  int i;
  int j;
  int kind;

  HexPoint map(double r, double v) const {
    std::array<double, 3> s{};
    if (kind == 0) {
      s[j] = r;
      s[i] = -r * v;
    } else {
      s[i] = -r;
      s[j] = r * v;
    }
    const int k = 3 - i - j;
    s[k] = -s[i] - s[j];
    return HexPoint::from_components(s[0], s[1], s[2]);
  }
};

struct Cell {
  int tri;
  double r0, r1, v0, v1;
  std::complex<double> value;
  double error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

}  // namespace

QuadResult<std::complex<double>> quad_hexagon(double rho, const HexIntegrand& integrand,
                                              const HexQuadOptions& opts) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("quad_hexagon requires rho > 0");
  opts.ctrl.validate();
  const std::array<Triangle, 6> tris = {Triangle{0, 1, 0}, Triangle{0, 1, 1}, Triangle{1, 2, 0},
                                        Triangle{1, 2, 1}, Triangle{2, 0, 0}, Triangle{2, 0, 1}};
  const auto& rule = detail::gauss_legendre(opts.gauss_order);

  auto rule_on = [&](int tri, double r0, double r1, double v0, double v1) {
    const double rc = 0.5 * (r0 + r1);
    const double rh = 0.5 * (r1 - r0);
    const double vc = 0.5 * (v0 + v1);
    const double vh = 0.5 * (v1 - v0);
    std::complex<double> sum{};
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
      const double r = rc + rh * rule.nodes[a];
      std::complex<double> inner{};
      for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
        const double v = vc + vh * rule.nodes[b];
        inner += rule.weights[b] * integrand(tris[tri].map(r, v));
      }
      sum += rule.weights[a] * r * inner;  // Jacobian r
    }
    return sum * (rh * vh);
  };

  // Estimate a cell by comparing it with its four children.
  auto make_cell = [&](int tri, double r0, double r1, double v0, double v1,
                       std::complex<double> coarse) {
    const double rm = 0.5 * (r0 + r1);
    const double vm = 0.5 * (v0 + v1);
    const std::complex<double> fine = rule_on(tri, r0, rm, v0, vm) + rule_on(tri, rm, r1, v0, vm) +
                                      rule_on(tri, r0, rm, vm, v1) + rule_on(tri, rm, r1, vm, v1);
    return Cell{tri, r0, r1, v0, v1, fine, std::abs(fine - coarse)};
  };

  std::priority_queue<Cell> heap;
  std::complex<double> total{};
  double total_err = 0.0;
  const int n0 = std::max(1, opts.initial_cells);
  for (int tri = 0; tri < 6; ++tri) {
    for (int a = 0; a < n0; ++a) {
      for (int b = 0; b < n0; ++b) {
        const double r0 = rho * a / n0;
        const double r1 = rho * (a + 1) / n0;
        const double v0 = static_cast<double>(b) / n0;
        const double v1 = static_cast<double>(b + 1) / n0;
        Cell c = make_cell(tri, r0, r1, v0, v1, rule_on(tri, r0, r1, v0, v1));
        total += c.value;
        total_err += c.error;
        heap.push(c);
      }
    }
  }

  int cells = static_cast<int>(heap.size());
  auto done = [&] {
    return total_err <= std::max(opts.ctrl.abs_tol, opts.ctrl.rel_tol * std::abs(total));
  };
  while (!done() && cells < opts.ctrl.max_subdivisions) {
    const Cell worst = heap.top();
    heap.pop();
    const double rm = 0.5 * (worst.r0 + worst.r1);
    const double vm = 0.5 * (worst.v0 + worst.v1);
    const std::array<std::array<double, 4>, 4> kids = {{{worst.r0, rm, worst.v0, vm},
                                                        {rm, worst.r1, worst.v0, vm},
                                                        {worst.r0, rm, vm, worst.v1},
                                                        {rm, worst.r1, vm, worst.v1}}};
    total -= worst.value;
    total_err -= worst.error;
    for (const auto& k : kids) {
      Cell c = make_cell(worst.tri, k[0], k[1], k[2], k[3], rule_on(worst.tri, k[0], k[1], k[2], k[3]));
      total += c.value;
      total_err += c.error;
      heap.push(c);
    }
    cells += 3;
  }

  std::vector<Cell> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::ranges::sort(parts, [](const Cell& x, const Cell& y) {
    return std::tie(x.tri, x.r0, x.v0) < std::tie(y.tri, y.r0, y.v0);
  });
  total = {};
  total_err = 0.0;
  for (const auto& p : parts) {
    total += p.value;
    total_err += p.error;
  }

  QuadResult<std::complex<double>> res;
  res.value = total;
  res.error = total_err;
  res.subdivisions = cells;
  res.converged = done();
  return res;
}

int oscillation_cells(double rho, const HexPoint& t) {
  const auto d = differences(t);
  const double spread = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  // Phase change across a triangle is at most (2/3) rho * spread; aim for ~1 rad per cell.
  const double phase = 2.0 / 3.0 * rho * spread;
  return std::clamp(static_cast<int>(std::ceil(phase / 1.5)), 1, 64);
}

double finite_diff_rho(const ScalarFn& F, double rho, double h) {
  if (!(h > 0.0) || !(rho > h)) throw std::invalid_argument("finite_diff_rho requires rho > h > 0");
  return (F(rho + h) - F(rho - h)) / (2.0 * h);
}

DecayEnvelope DecayEnvelope::exponential(double C, double rate) {
  if (!(C >= 0.0) || !(rate > 0.0)) throw std::invalid_argument("exponential envelope needs C >= 0, rate > 0");
  std::ostringstream os;
  os << C << "*exp(-" << rate << "*rho)";
  return {[C, rate](double P) { return C * std::exp(-rate * P) / rate; }, os.str()};
}

DecayEnvelope DecayEnvelope::power(double C, double p) {
  if (!(C >= 0.0) || !(p > 1.0)) throw std::invalid_argument("power envelope needs C >= 0, p > 1");
  std::ostringstream os;
  os << C << "*rho^-" << p;
  return {[C, p](double P) {
            if (P <= 0.0) return std::numeric_limits<double>::infinity();
            return C * std::pow(P, 1.0 - p) / (p - 1.0);
          },
          os.str()};
}

DecayEnvelope DecayEnvelope::rho_exponential(double C, double rate) {
  if (!(C >= 0.0) || !(rate > 0.0)) throw std::invalid_argument("envelope needs C >= 0, rate > 0");
  std::ostringstream os;
  os << C << "*rho*exp(-" << rate << "*rho)";
  return {[C, rate](double P) {
            return C * std::exp(-rate * P) * (P / rate + 1.0 / (rate * rate));
          },
          os.str()};
}

double truncate_tail(const DecayEnvelope& envelope, double tol, double cap) {
  if (!(tol > 0.0)) throw std::invalid_argument("truncate_tail requires tol > 0");
  if (!envelope.tail) throw std::invalid_argument("truncate_tail requires a tail function");
  if (envelope.tail(0.0) <= tol) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!(envelope.tail(hi) <= tol)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) {
      std::ostringstream os;
      os << "no truncation point below " << cap << " for envelope " << envelope.description
         << " at tol " << tol;
      throw NumericalError(os.str());
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (envelope.tail(mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace hexfourier
