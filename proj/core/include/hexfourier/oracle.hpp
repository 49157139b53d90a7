#pragma once

// Brute-force ground truth: adaptive 1-D quadrature, adaptive cubature over the
// hexagon {||s||_H <= rho}, central differences and tail truncation.

#include <complex>
#include <functional>
#include <string>

#include "hexfourier/hexgeom.hpp"
#include "hexfourier/specfun.hpp"

namespace hexfourier {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

using ScalarFn = std::function<double(double)>;
using HexIntegrand = std::function<std::complex<double>(const HexPoint&)>;

// Globally adaptive Gauss-Kronrod (G10/K21) on [a, b], starting from
// `initial_panels` equal panels. Non-convergence is reported through
// `converged`, never thrown.
QuadResult<double> quad_1d(const ScalarFn& f, double a, double b,
                           const QuadratureControl& ctrl = {}, int initial_panels = 1);

// int_a^b f(x) (b - x)^alpha dx for alpha > -1, via s = (b - x)^(1+alpha)
// so that integrable endpoint singularities are removed.
QuadResult<double> quad_1d_endpoint_weight(const ScalarFn& f, double a, double b, double alpha,
                                           const QuadratureControl& ctrl = {},
                                           int initial_panels = 1);

struct HexQuadOptions {
  QuadratureControl ctrl{1e-13, 1e-11, 20000};
  // Cells per axis in each of the six triangles before adaptive refinement;
  // raise for oscillatory integrands.
  int initial_cells = 2;
  int gauss_order = 10;
};

// int_{||s||_H <= rho} f(s) ds in the homogeneous-coordinate measure (the unit
// hexagon has measure 3). The domain is split into the three parallelogram
// charts s_i <= 0 <= s_j, each cut along its diagonal into two triangles on
// which ||s||_H is a coordinate.
QuadResult<std::complex<double>> quad_hexagon(double rho, const HexIntegrand& integrand,
                                              const HexQuadOptions& opts = {});

// Initial cell count for integrating exp(+-2i/3 s.t) over radius rho.
int oscillation_cells(double rho, const HexPoint& t);

// (F(rho + h) - F(rho - h)) / (2 h); requires rho > h > 0.
double finite_diff_rho(const ScalarFn& F, double rho, double h);

// A monotone tail bound: tail(P) >= int_P^inf C g.
struct DecayEnvelope {
  std::function<double(double)> tail;
  std::string description;

  // C exp(-rate rho)
  static DecayEnvelope exponential(double C, double rate);
  // C rho^-p, p > 1
  static DecayEnvelope power(double C, double p);
  // C rho exp(-rate rho)
  static DecayEnvelope rho_exponential(double C, double rate);
};

// Smallest P >= 0 with tail(P) <= tol (to 1e-13 relative). Throws
// NumericalError if none exists below `cap`.
double truncate_tail(const DecayEnvelope& envelope, double tol, double cap = 1e9);

}  // namespace hexfourier
