#pragma once

// Riesz and Cesaro means S_{R,delta} of Fourier integrals whose transform is a
// function of ||s||_H, kernel convolutions, and kernel positivity scans.

#include <functional>
#include <optional>
#include <vector>

#include "hexfourier/hexgeom.hpp"
#include "hexfourier/oracle.hpp"
#include "hexfourier/radial.hpp"
#include "hexfourier/specfun.hpp"

namespace hexfourier {

enum class SummabilityMethod { kCesaro, kRiesz };

struct SummabilityParams {
  double R = 1.0;
  double delta = 0.0;
  SummabilityMethod method = SummabilityMethod::kRiesz;

  void validate() const;
};

struct ConvergenceRow {
  double R = 0.0;
  double delta = 0.0;
  HexPoint point;
  double mean = 0.0;
  double target = 0.0;
  double abs_error = 0.0;
};

// int_0^R (1 - rho/R)^delta E_rho(t) fhat(rho) drho.
double riesz_mean_radial(const RadialProfile& fhat, const SummabilityParams& params,
                         const HexPoint& t, const QuadratureControl& ctrl = {});

// (delta / R^delta) int_0^R (R - rho)^(delta-1) sigma_rho(t) drho with the
// partial integral sigma_rho(t) = int_0^rho E_u(t) fhat(u) du. delta > 0.
double cesaro_mean_radial(const RadialProfile& fhat, const SummabilityParams& params,
                          const HexPoint& t, const QuadratureControl& ctrl = {});

// Dispatches on params.method.
double summability_mean(const RadialProfile& fhat, const SummabilityParams& params,
                        const HexPoint& t, const QuadratureControl& ctrl = {});

struct ConvolutionOptions {
  double truncation_radius = 10.0;
  // Bound on int_{||y||_H > P} |f(y)| dy; enables the tail estimate.
  std::optional<DecayEnvelope> f_tail;
  // With an envelope, a tail estimate above this raises NumericalError.
  double tail_tol = 1e-6;
  HexQuadOptions quad{{1e-10, 1e-8, 40000}, 4, 10};
};

struct ConvolutionResult {
  double value = 0.0;
  double quad_error = 0.0;
  double tail_bound = 0.0;  // NaN without an envelope
  bool converged = false;
};

// int_{||s||_H <= P} f(t - s) D_R^delta(s) ds by 2-D quadrature, plus
// D_R^delta(0) * f_tail(P - ||t||_H) as the bound on the remainder.
ConvolutionResult convolve_kernel(const std::function<double(const HexPoint&)>& f, double R,
                                  double delta, const HexPoint& t,
                                  const ConvolutionOptions& opts = {});

// Values of D_R^delta at every grid node, in grid order.
std::vector<double> cesaro_field(double R, double delta, const GridSpec& grid);

// Minimum of D_R^delta over the grid; violations count values below -tol.
PositivityReport positivity_scan(double R, double delta, const GridSpec& grid, double tol);

// S_{R,delta} f(t) for fhat(rho) = exp(-(2a/3) rho) against the closed-form
// transform, one row per (R, point), ordered by R index then point index.
std::vector<ConvergenceRow> convergence_experiment(double a, double delta,
                                                   const std::vector<double>& R_list,
                                                   const std::vector<HexPoint>& points,
                                                   const QuadratureControl& ctrl = {});

}  // namespace hexfourier
