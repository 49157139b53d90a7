#pragma once

// Closed-form kernels on the hexagonal domain: the Dirichlet kernel D_rho, its
// rho-derivative E_rho, the Cesaro/Riesz kernel D_R^delta, the sum-of-squares
// certificate G, the order-one B-splines B, M1, M and the spider function J.

#include <string_view>
#include <vector>

#include "hexfourier/hexgeom.hpp"

namespace hexfourier {

enum class Method { kClosedForm, kTaylorFallback, kLimitFormula };

std::string_view to_string(Method m) noexcept;

struct KernelEval {
  double value = 0.0;
  Method method = Method::kClosedForm;
  double error_estimate = 0.0;
};

// Inputs whose smallest pairwise difference is below this (relative to
// 1 + ||t||_H) are evaluated through the divided-difference form.
inline constexpr double kSingularThreshold = 1e-4;

bool near_singular(const HexPoint& t) noexcept;

// D_rho(t) = int_{||s||_H <= rho} exp(-2i/3 s.t) ds.
KernelEval dirichlet(double rho, const HexPoint& t);

// E_rho(t) = d/drho D_rho(t).
KernelEval e_kernel(double rho, const HexPoint& t);

// D_R^delta(t) = delta R^-delta int_0^R (R - rho)^(delta-1) D_rho(t) drho.
KernelEval cesaro_kernel(double R, double delta, const HexPoint& t);

// G(t) from the three-cosine form (2R/3 = 1).
double g_direct(const HexPoint& t) noexcept;

// G(t) as half the sum of two squares; nonnegative by construction.
double g_sos(const HexPoint& t) noexcept;

// B(u|a,b): 1/|b-a| strictly between a and b, 0 elsewhere (including the knots).
double bspline1(double u, double a, double b);

// M1(u|t) = B(u|t1-t3, t2-t3) + B(u|t2-t1, t3-t1) + B(u|t3-t2, t1-t2).
// Throws DegenerateKnotsError when a knot pair coincides.
double m1_spline(double u, const HexPoint& t);

// M(u|t) = (M1(u|t) + M1(u|-t)) / 2.
double m_spline(double u, const HexPoint& t);

// M(.|t) as a list of constant pieces on consecutive knot intervals covering
// its support, sorted by position.
struct SplinePiece {
  double lo;
  double hi;
  double value;
};
std::vector<SplinePiece> m_spline_pieces(const HexPoint& t);

// Exact integral of M(.|t) over the real line (piecewise-constant sum).
double m_spline_integral(const HexPoint& t);

// E_rho(t) from the B-spline representation 4 rho int_0^inf cos(2 rho u/3) M(u|t) du,
// integrated exactly over the spline pieces.
double e_kernel_via_spline(double rho, const HexPoint& t);

// Spider function J(t) = int_0^inf E_{3rho/2}(t) m2(rho) drho, piecewise
// rational by region. Throws BoundaryBandError when some |t_i - t_j| is within
// the boundary band of 1.
double j_closed(const HexPoint& t);

}  // namespace hexfourier
