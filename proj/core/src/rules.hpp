#pragma once

// Quadrature rules shared by the numerical routines. Not installed.

#include <cmath>
#include <functional>
#include <vector>

namespace hexfourier::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points, 1 <= n <= 128. Cached.
const GaussRule& gauss_legendre(int n);

// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
auto gauss_integrate(F&& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  decltype(f(c)) sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  }
  return h * sum;
}

// Kronrod 21-point extension of the 10-point Gauss rule (QUADPACK qk21).
struct KronrodResult {
  double value;
  double error;
};
KronrodResult gauss_kronrod21(const std::function<double(double)>& f, double a, double b);

// Tanh-sinh (double exponential) quadrature over [a, b]. Integrand singularities
// at the endpoints are allowed; the endpoints are never evaluated.
struct TanhSinhResult {
  double value;
  double error;
  bool converged;
};
TanhSinhResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-14, double abs_tol = 1e-300, int max_level = 10);

}  // namespace hexfourier::detail
