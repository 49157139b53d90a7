#pragma once

// Scalar special functions: the sine integral, m2 and the Riesz profile
// F_delta(u) = delta * int_0^1 cos(rho u) (1 - rho)^(delta - 1) d rho.

#include <optional>

namespace hexfourier {

// Tolerances and subdivision budget for adaptive quadrature.
struct QuadratureControl {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 5000;

  // Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

// Si(x) = int_0^x sin(u)/u du for x >= 0, absolute error <= 1e-12.
double sine_integral(double x);

// m2(xi) = int_xi^inf sin(u)/u du = pi/2 - Si(xi), xi >= 0.
double m2(double xi);

// F_delta(u). Closed forms for delta in {1, 2}, the 1F2 series for |u| <= 8 and
// endpoint-weighted quadrature otherwise. Even in u, |F_delta| <= 1.
double f_delta(double delta, double u);

// Individual evaluation routes, exposed for cross-checking.
struct SeriesValue {
  double value;
  double roundoff;  // estimate of the cancellation error
};
SeriesValue f_delta_series(double delta, double u);
double f_delta_quadrature(double delta, double u);

// F_delta(k1) - F_delta(k2). For (k1, k2) = (2 pi, 4 pi) and 1 < delta < 2 the
// value is also computed from the symmetrised single integral and the two are
// required to agree to 1e-9 (NumericalError otherwise).
double f_delta_gap(double delta, double k1, double k2);

// delta (delta - 1) / (2 pi) * int_0^{1/2} [(1-s)^(delta-2) - s^(delta-2)]
//   * sin(2 pi s) (1 - cos(2 pi s)) ds, which equals F(2 pi) - F(4 pi).
double f_delta_gap_symmetrized(double delta);

// d/du F_delta(u), via F'_d(u) = -u F_{d+1}(u)/(d+1) + d u F_{d+2}(u)/((d+1)(d+2)).
double f_delta_derivative(double delta, double u);

}  // namespace hexfourier
