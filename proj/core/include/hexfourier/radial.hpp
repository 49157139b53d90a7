#pragma once

// Fourier transforms of functions of ||s||_H. All transforms are the
// unnormalized integral int exp(2i/3 s.t) phi(||s||_H) ds unless the name says
// otherwise.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hexfourier/hexgeom.hpp"
#include "hexfourier/oracle.hpp"
#include "hexfourier/specfun.hpp"

namespace hexfourier {

struct RadialProfile {
  std::function<double(double)> phi;
  // Bounds int_P^inf rho |phi(rho)| drho. Required for transforms over [0, inf).
  std::optional<DecayEnvelope> rho_tail;
  bool continuous_at_zero = true;
  std::string name;

  bool rho_integrable() const noexcept { return rho_tail.has_value(); }
  double operator()(double rho) const { return phi(rho); }

  // Throws std::invalid_argument if phi is missing or non-finite at sampled
  // points, or if the tail bound is violated at sampled truncation points.
  void validate() const;

  // scale * exp(-rate rho)
  static RadialProfile exponential(double rate, double scale = 1.0);
  // rho^k, k >= 0 (finite-radius transforms only)
  static RadialProfile monomial(int k);
  static RadialProfile constant(double c);
  static RadialProfile zero();
};

struct Atom {
  double u;
  double w;
};

// A finite nonnegative measure on [0, inf) given by its atoms.
struct DiscreteMeasure {
  std::vector<Atom> atoms;

  void validate() const;
  double mass() const noexcept;
  bool empty() const noexcept { return atoms.empty(); }
};

struct PositivityReport {
  GridSpec grid;
  double min_value = 0.0;
  HexPoint argmin;
  std::size_t violations = 0;
  std::size_t skipped = 0;  // points in the boundary band
  double tol = 0.0;
};

// int_0^r E_rho(t) phi(rho) drho; r may be +infinity when the profile carries a
// tail bound. Throws NumericalError on divergence or quadrature failure.
double radial_ft(const RadialProfile& phi, double r, const HexPoint& t,
                 const QuadratureControl& ctrl = {});

// radial_ft / (3 pi^2).
double radial_ft_normalized(const RadialProfile& phi, double r, const HexPoint& t,
                            const QuadratureControl& ctrl = {});

// Transform of exp(-(2a/3)||s||_H):
// 27 a^2 (2a^2 + t1^2 + t2^2 + t3^2) / (4 prod (a^2 + (t_i - t_j)^2)).
double exp_radial_ft_closed(double a, const HexPoint& t);

// 6 int_0^r rho phi(rho) drho, the integral of phi(||s||_H) over ||s||_H <= r.
double radial_integral(const RadialProfile& phi, double r, const QuadratureControl& ctrl = {});

// psi(u) = 4 int_0^inf rho cos(2 rho u / 3) phi(rho) drho.
double psi_transform(const RadialProfile& phi, double u, const QuadratureControl& ctrl = {});

// int_0^inf psi(u) M(u|t) du, integrated piece by piece over the spline knots.
double ft_via_spline(const RadialProfile& phi, const HexPoint& t,
                     const QuadratureControl& ctrl = {});

// sum_k w_k m2(s u_k).
double m2_mixture(const DiscreteMeasure& alpha, double s);

// int_0^inf E_rho(t) m2(rho u) drho = 2/(3u^2) J(2t/(3u)), u > 0.
double m2_kernel_transform(double u, const HexPoint& t);

// Numerical spider function: int_0^P w(rho) E_{3rho/2}(t) m2(rho) drho with the
// weight w falling linearly from 1 to 0 over the last `window` of the range
// (the running integral averaged over that window).
double j_truncated_integral(const HexPoint& t, double P = 2000.0, double window = 500.0);

// int_0^P w(rho) sin(u rho) m2(rho) drho with the same averaging window.
double sine_m2_product(double u, double P = 2000.0, double window = 500.0);

// Phi(t) = sum_k w_k 2/(3u_k^2) J(2t/(3u_k)) at every grid node, the transform
// of the m2 mixture. Nodes in a J boundary band are NaN. Atoms with u = 0
// contribute a constant and are ignored.
std::vector<double> pd_field(const DiscreteMeasure& alpha, const GridSpec& grid);

// Scans pd_field; violations count values below -tol, boundary nodes are
// skipped and counted.
PositivityReport pd_certificate(const DiscreteMeasure& alpha, const GridSpec& grid, double tol);

// Minimum, arg-min and violation count of a field sampled on `grid` (grid
// order). NaN entries are counted as skipped; min_value is NaN if every entry is.
PositivityReport summarize_field(const GridSpec& grid, const std::vector<double>& values,
                                 double tol);

// Smallest eigenvalue of [m2_mixture(alpha, ||t_j - t_k||_H)], 1 <= N <= 64.
double gram_check(const DiscreteMeasure& alpha, const std::vector<HexPoint>& points);

}  // namespace hexfourier
