#include "rules.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hexfourier::detail {
namespace {

GaussRule build_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct RuleTable {
  std::array<GaussRule, 129> rules;
  RuleTable() {
    rules[1] = {{0.0}, {2.0}};
    for (int n = 2; n <= 128; ++n) rules[n] = build_gauss_legendre(n);
  }
};

constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525807145, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const RuleTable table;
  if (n < 1 || n > 128) throw std::invalid_argument("Gauss-Legendre order must be in [1, 128]");
  return table.rules[n];
}

KronrodResult gauss_kronrod21(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double result = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {result, err};
}

TanhSinhResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, double abs_tol, int max_level) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  constexpr double tau_max = 3.2;
  const double width = b - a;

  // Sum over nodes tau = k*h for k in the given stride pattern.
  auto node_sum = [&](double h, int start, int stride) {
    double sum = 0.0;
    const int kmax = static_cast<int>(std::ceil(tau_max / h));
    for (int k = start; k <= kmax; k += stride) {
      const double tau = k * h;
      const double v = half_pi * std::sinh(tau);
      const double ch = std::cosh(v);
      const double w = half_pi * std::cosh(tau) / (ch * ch);  // d/dtau of (1+tanh v)/2, times 2
      // Distance from each endpoint, computed without cancellation.
      const double e = std::exp(-2.0 * v);
      const double frac = e / (1.0 + e);  // (1 - tanh v)/2
      const double dist = width * frac;
      if (dist <= 0.0) break;
      const double xl = a + dist;  // mirror node near a
      const double xr = b - dist;  // node near b
      double contrib = 0.0;
      if (k == 0) {
        contrib = f(0.5 * (a + b));
      } else {
        if (xl > a) contrib += f(xl);
        if (xr < b) contrib += f(xr);
      }
      const double term = 0.5 * width * w * contrib;
      sum += term;
      if (k > 4 && std::abs(term) < 1e-300) break;
    }
    return sum;
  };

  double h = 0.5;
  double sum = node_sum(h, 0, 1);
  double estimate = h * sum;
  double prev = estimate;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    sum += node_sum(h, 1, 2);
    estimate = h * sum;
    err = std::abs(estimate - prev);
    if (level >= 3 && err <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
      return {estimate, err, true};
    }
    prev = estimate;
  }
  return {estimate, err, false};
}

}  // namespace hexfourier::detail
