#include "hexfourier/radial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hexfourier/error.hpp"
#include "hexfourier/kernels.hpp"
#include "parallel.hpp"

namespace hexfourier {
namespace {

constexpr double kPi = std::numbers::pi;

double spread(const HexPoint& t) {
  const auto d = differences(t);
  return std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
}

// One panel per half period of the fastest oscillation at angular rate `rate`.
int panels_for(double length, double rate) {
  const double n = std::ceil(length * rate / kPi) + 1.0;
  return static_cast<int>(std::min(n, 50000.0));
}

QuadratureControl with_budget(QuadratureControl ctrl, int panels) {
  ctrl.max_subdivisions += panels;
  return ctrl;
}

double require(const QuadResult<double>& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (estimate " << r.value << ", error " << r.error
       << ", subdivisions " << r.subdivisions << ")";
    throw NumericalError(os.str());
  }
  return r.value;
}

// Upper limit replacing +infinity so that (scale) * tail stays below tol.
double finite_upper(const RadialProfile& phi, double tol, const char* what) {
  if (!phi.rho_tail) {
    throw NumericalError(std::string(what) + ": profile " + phi.name +
                         " has no tail bound, integral over [0, inf) may diverge");
  }
  return truncate_tail(*phi.rho_tail, tol);
}

void check_profile(const RadialProfile& phi) {
  if (!phi.phi) throw std::invalid_argument("radial profile has no evaluator");
}

}  // namespace

void RadialProfile::validate() const {
  check_profile(*this);
  for (double rho : {0.0, 1e-3, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    if (!std::isfinite(phi(rho))) {
      throw std::invalid_argument("radial profile " + name + " is not finite at sampled rho");
    }
  }
  if (rho_tail) {
    // Spot check: the bound must dominate a coarse quadrature of the tail.
    for (double P : {1.0, 5.0, 20.0}) {
      const double bound = rho_tail->tail(P);
      auto g = [&](double rho) { return rho * std::abs(phi(rho)); };
      const double partial = quad_1d(g, P, 4.0 * P + 20.0, {1e-10, 1e-8, 2000}, 8).value;
      if (partial > bound * (1.0 + 1e-6) + 1e-12) {
        throw std::invalid_argument("radial profile " + name + ": tail bound violated");
      }
    }
  }
}

RadialProfile RadialProfile::exponential(double rate, double scale) {
  if (!(rate > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("exponential profile needs rate > 0 and finite scale");
  }
  std::ostringstream os;
  os << scale << "*exp(-" << rate << "*rho)";
  return {[rate, scale](double rho) { return scale * std::exp(-rate * rho); },
          DecayEnvelope::rho_exponential(std::abs(scale), rate), true, os.str()};
}

RadialProfile RadialProfile::monomial(int k) {
  if (k < 0) throw std::invalid_argument("monomial profile needs k >= 0");
  return {[k](double rho) { return std::pow(rho, k); }, std::nullopt, true,
          "rho^" + std::to_string(k)};
}

RadialProfile RadialProfile::constant(double c) {
  std::ostringstream os;
  os << c;
  return {[c](double) { return c; }, std::nullopt, true, os.str()};
}

RadialProfile RadialProfile::zero() {
  return {[](double) { return 0.0; }, DecayEnvelope{[](double) { return 0.0; }, "0"}, true, "0"};
}

void DiscreteMeasure::validate() const {
  for (const auto& a : atoms) {
    if (!(a.u >= 0.0) || !std::isfinite(a.u) || !(a.w >= 0.0) || !std::isfinite(a.w)) {
      throw std::invalid_argument("measure atoms need finite u >= 0 and w >= 0");
    }
  }
}

double DiscreteMeasure::mass() const noexcept {
  double m = 0.0;
  for (const auto& a : atoms) m += a.w;
  return m;
}

double radial_ft(const RadialProfile& phi, double r, const HexPoint& t,
                 const QuadratureControl& ctrl) {
  check_profile(phi);
  ctrl.validate();
  if (!(r > 0.0)) throw std::invalid_argument("radial_ft requires r > 0");
  double upper = r;
  if (std::isinf(r)) {
    // |E_rho| <= 6 rho; spend half the absolute budget on the tail.
    upper = finite_upper(phi, ctrl.abs_tol / 12.0, "radial_ft");
    if (upper == 0.0) return 0.0;
  }
  const int panels = panels_for(upper, 2.0 / 3.0 * spread(t));
  auto f = [&](double rho) { return e_kernel(rho, t).value * phi(rho); };
  return require(quad_1d(f, 0.0, upper, with_budget(ctrl, panels), panels), "radial_ft");
}

double radial_ft_normalized(const RadialProfile& phi, double r, const HexPoint& t,
                            const QuadratureControl& ctrl) {
  return radial_ft(phi, r, t, ctrl) / (3.0 * kPi * kPi);
}

double exp_radial_ft_closed(double a, const HexPoint& t) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("exp_radial_ft_closed requires a > 0");
  const auto d = differences(t);
  const double a2 = a * a;
  const double num = 27.0 * a2 * (2.0 * a2 + t.t1() * t.t1() + t.t2() * t.t2() + t.t3() * t.t3());
  const double den = 4.0 * (a2 + d[0] * d[0]) * (a2 + d[1] * d[1]) * (a2 + d[2] * d[2]);
  return num / den;
}

double radial_integral(const RadialProfile& phi, double r, const QuadratureControl& ctrl) {
  check_profile(phi);
  ctrl.validate();
  if (!(r > 0.0)) throw std::invalid_argument("radial_integral requires r > 0");
  double upper = r;
  if (std::isinf(r)) {
    upper = finite_upper(phi, ctrl.abs_tol / 12.0, "radial_integral");
    if (upper == 0.0) return 0.0;
  }
  auto f = [&](double rho) { return 6.0 * rho * phi(rho); };
  return require(quad_1d(f, 0.0, upper, ctrl, 4), "radial_integral");
}

double psi_transform(const RadialProfile& phi, double u, const QuadratureControl& ctrl) {
  check_profile(phi);
  ctrl.validate();
  if (!(u >= 0.0) || !std::isfinite(u)) throw std::invalid_argument("psi_transform requires u >= 0");
  const double upper = finite_upper(phi, ctrl.abs_tol / 8.0, "psi_transform");
  if (upper == 0.0) return 0.0;
  const double k = 2.0 * u / 3.0;
  const int panels = panels_for(upper, k) + 3;
  auto f = [&](double rho) { return 4.0 * rho * std::cos(k * rho) * phi(rho); };
  return require(quad_1d(f, 0.0, upper, with_budget(ctrl, panels), panels), "psi_transform");
}

double ft_via_spline(const RadialProfile& phi, const HexPoint& t, const QuadratureControl& ctrl) {
  check_profile(phi);
  ctrl.validate();
  const auto pieces = m_spline_pieces(t);
  // int_rho>=1 |phi| <= int rho |phi|, so the rho-tail also bounds the plain tail.
  const double upper = std::max(1.0, finite_upper(phi, ctrl.abs_tol / 24.0, "ft_via_spline"));

  // Psi(u) = int_0^u psi = 6 int_0^inf phi(rho) sin(2 rho u / 3) drho.
  auto Psi = [&](double u) {
    if (u == 0.0) return 0.0;
    const double k = 2.0 * u / 3.0;
    const int panels = panels_for(upper, k) + 3;
    auto f = [&](double rho) { return 6.0 * std::sin(k * rho) * phi(rho); };
    return require(quad_1d(f, 0.0, upper, with_budget(ctrl, panels), panels), "ft_via_spline");
  };

  double total = 0.0;
  for (const auto& p : pieces) {
    if (p.hi <= 0.0 || p.value == 0.0) continue;
    const double lo = std::max(0.0, p.lo);
    total += p.value * (Psi(p.hi) - Psi(lo));
  }
  return total;
}

double m2_mixture(const DiscreteMeasure& alpha, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("m2_mixture requires s >= 0");
  double sum = 0.0;
  for (const auto& a : alpha.atoms) sum += a.w * m2(s * a.u);
  return sum;
}

double m2_kernel_transform(double u, const HexPoint& t) {
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("m2_kernel_transform requires u > 0");
  const double c = 2.0 / (3.0 * u);
  return c / u * j_closed(c * t);
}

namespace {

// int_0^P w(rho) g(rho) drho, w = 1 up to P - L then linear down to 0.
double windowed(const std::function<double(double)>& g, double P, double L, double rate,
                const char* what) {
  if (!(P > 0.0) || !(L > 0.0) || !(L <= P)) {
    throw std::invalid_argument(std::string(what) + " requires 0 < window <= P");
  }
  const QuadratureControl ctrl{1e-10, 1e-10, 10000};
  const double knee = P - L;
  double total = 0.0;
  if (knee > 0.0) {
    const int n = panels_for(knee, rate);
    total += require(quad_1d(g, 0.0, knee, with_budget(ctrl, n), n), what);
  }
  const int n = panels_for(L, rate);
  auto tail = [&](double rho) { return (P - rho) / L * g(rho); };
  total += require(quad_1d(tail, knee, P, with_budget(ctrl, n), n), what);
  return total;
}

}  // namespace

double j_truncated_integral(const HexPoint& t, double P, double window) {
  auto g = [&](double rho) { return e_kernel(1.5 * rho, t).value * m2(rho); };
  return windowed(g, P, window, spread(t) + 1.0, "j_truncated_integral");
}

double sine_m2_product(double u, double P, double window) {
  auto g = [&](double rho) { return std::sin(u * rho) * m2(rho); };
  return windowed(g, P, window, std::abs(u) + 1.0, "sine_m2_product");
}

std::vector<double> pd_field(const DiscreteMeasure& alpha, const GridSpec& grid) {
  alpha.validate();
  grid.validate();
  const auto nodes = grid_nodes(grid);
  std::vector<double> values(nodes.size(), 0.0);
  detail::parallel_for(nodes.size(), [&](std::size_t i) {
    double sum = 0.0;
    for (const auto& a : alpha.atoms) {
      if (a.u == 0.0 || a.w == 0.0) continue;
      try {
        sum += a.w * m2_kernel_transform(a.u, nodes[i].t);
      } catch (const BoundaryBandError&) {
        sum = std::numeric_limits<double>::quiet_NaN();
        break;
      }
    }
    values[i] = sum;
  });
  return values;
}

PositivityReport summarize_field(const GridSpec& grid, const std::vector<double>& values,
                                 double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("positivity tolerance must be >= 0");
  const auto nodes = grid_nodes(grid);
  if (nodes.size() != values.size()) throw std::invalid_argument("field size does not match grid");
  PositivityReport rep;
  rep.grid = grid;
  rep.tol = tol;
  rep.min_value = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isnan(v)) {
      ++rep.skipped;
      continue;
    }
    if (std::isnan(rep.min_value) || v < rep.min_value) {
      rep.min_value = v;
      rep.argmin = nodes[i].t;
    }
    if (v < -tol) ++rep.violations;
  }
  return rep;
}

PositivityReport pd_certificate(const DiscreteMeasure& alpha, const GridSpec& grid, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("pd_certificate requires tol >= 0");
  return summarize_field(grid, pd_field(alpha, grid), tol);
}

double gram_check(const DiscreteMeasure& alpha, const std::vector<HexPoint>& points) {
  alpha.validate();
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 1 || n > 64) throw std::invalid_argument("gram_check takes 1 to 64 points");
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k <= j; ++k) {
      const double v = m2_mixture(alpha, hexnorm(points[j] - points[k]));
      G(j, k) = v;
      G(k, j) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(G, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("gram_check: eigensolve failed");
  return solver.eigenvalues()(0);
}

}  // namespace hexfourier
