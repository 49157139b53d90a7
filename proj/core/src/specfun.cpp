#include "hexfourier/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hexfourier/error.hpp"
#include "rules.hpp"

namespace hexfourier {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesSwitch = 8.0;

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("delta must be positive and finite");
  }
}

double si_series(double x) {
  // sum_n (-1)^n x^(2n+1) / ((2n+1) (2n+1)!)
  const double x2 = x * x;
  double term = x;  // x^(2n+1)/(2n+1)!
  double sum = x;
  for (int n = 1; n < 60; ++n) {
    term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
    const double add = term / (2.0 * n + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// For x > 2: E1(ix) e^{ix} by continued fraction (modified Lentz). Then
// Si(x) = pi/2 + Im(h e^{-ix}) and Ci(x) = -Re(h e^{-ix}).
std::complex<double> e1_imag_cf(double x) {
  using C = std::complex<double>;
  constexpr double tiny = 1e-300;
  C b(1.0, x);
  C c(1.0 / tiny, 0.0);
  C d = 1.0 / b;
  C h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) {
      return h * C(std::cos(x), -std::sin(x));
    }
  }
  throw NumericalError("sine integral continued fraction did not converge");
}

// sin(z)/z with a series near zero.
double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// delta * int_0^s0 cos(u (1 - s)) s^(delta - 1) ds on the first panel, where
// the weight is singular (delta < 1) or non-smooth.
double singular_panel(double delta, double u, double s0) {
  detail::TanhSinhResult r;
  if (delta < 1.0) {
    // y = s^delta removes the endpoint singularity.
    auto g = [delta, u](double y) { return std::cos(u * (1.0 - std::pow(y, 1.0 / delta))); };
    r = detail::tanh_sinh(g, 0.0, std::pow(s0, delta), 1e-14, 1e-16, 12);
  } else {
    auto g = [delta, u](double s) { return delta * std::cos(u * (1.0 - s)) * std::pow(s, delta - 1.0); };
    r = detail::tanh_sinh(g, 0.0, s0, 1e-14, 1e-16, 12);
  }
  if (!(r.error <= 1e-11)) {
    std::ostringstream os;
    os << "F_delta quadrature did not converge: delta=" << delta << " u=" << u
       << " error=" << r.error;
    throw NumericalError(os.str());
  }
  return r.value;
}

}  // namespace

void QuadratureControl::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
}

double sine_integral(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::invalid_argument("sine_integral requires finite x >= 0");
  }
  if (x <= 4.0) return si_series(x);
  return 0.5 * kPi + e1_imag_cf(x).imag();
}

double m2(double xi) {
  if (!std::isfinite(xi) || xi < 0.0) throw std::invalid_argument("m2 requires finite xi >= 0");
  if (xi <= 4.0) return 0.5 * kPi - si_series(xi);
  return -e1_imag_cf(xi).imag();
}

SeriesValue f_delta_series(double delta, double u) {
  require_delta(delta);
  // 1F2(1; (d+1)/2, (d+2)/2; -u^2/4) = sum_n (-u^2/4)^n / (((d+1)/2)_n ((d+2)/2)_n)
  const double b1 = 0.5 * (delta + 1.0);
  const double b2 = 0.5 * (delta + 2.0);
  const double z = -0.25 * u * u;
  double term = 1.0;
  double sum = 1.0;
  double max_term = 1.0;
  int n = 0;
  for (; n < 400; ++n) {
    term *= z / ((b1 + n) * (b2 + n));
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (std::abs(term) < 1e-17 * std::max(std::abs(sum), 1e-300) && std::abs(z) < (b1 + n) * (b2 + n)) {
      break;
    }
  }
  return {sum, 2.0 * kEps * max_term * std::sqrt(static_cast<double>(n + 1))};
}

double f_delta_quadrature(double delta, double u) {
  require_delta(delta);
  if (!std::isfinite(u)) throw std::invalid_argument("f_delta requires finite u");
  u = std::abs(u);
  // With s = 1 - rho: F = delta * int_0^1 cos(u (1 - s)) s^(delta - 1) ds.
  const double s0 = std::min(1.0, kPi / std::max(u, 1.0));
  double total = singular_panel(delta, u, s0);
  if (s0 < 1.0) {
    const int panels = static_cast<int>(std::ceil((1.0 - s0) * u / kPi));
    const double w = (1.0 - s0) / panels;
    auto g = [delta, u](double s) { return delta * std::cos(u * (1.0 - s)) * std::pow(s, delta - 1.0); };
    for (int p = 0; p < panels; ++p) {
      const double a = s0 + p * w;
      total += detail::gauss_integrate(g, a, a + w, 24);
    }
  }
  return total;
}

double f_delta(double delta, double u) {
  require_delta(delta);
  if (!std::isfinite(u)) throw std::invalid_argument("f_delta requires finite u");
  u = std::abs(u);
  if (delta == 1.0) return sinc(u);
  if (delta == 2.0) {
    const double s = sinc(0.5 * u);
    return s * s;
  }
  if (u <= kSeriesSwitch) return f_delta_series(delta, u).value;
  return f_delta_quadrature(delta, u);
}

double f_delta_derivative(double delta, double u) {
  require_delta(delta);
  return -u * f_delta(delta + 1.0, u) / (delta + 1.0) +
         delta * u * f_delta(delta + 2.0, u) / ((delta + 1.0) * (delta + 2.0));
}

double f_delta_gap_symmetrized(double delta) {
  if (!(delta > 1.0 && delta < 2.0)) {
    throw std::invalid_argument("symmetrised gap requires 1 < delta < 2");
  }
  auto g = [delta](double s) {
    const double w = std::pow(1.0 - s, delta - 2.0) - std::pow(s, delta - 2.0);
    const double c = std::sin(kPi * s);
    // 1 - cos(2 pi s) = 2 sin^2(pi s)
    return w * std::sin(2.0 * kPi * s) * 2.0 * c * c;
  };
  const auto r = detail::tanh_sinh(g, 0.0, 0.5, 1e-14, 1e-17, 12);
  if (!(r.error <= 1e-11)) throw NumericalError("symmetrised F_delta gap integral did not converge");
  return delta * (delta - 1.0) / (2.0 * kPi) * r.value;
}

double f_delta_gap(double delta, double k1, double k2) {
  require_delta(delta);
  const double gap = f_delta(delta, k1) - f_delta(delta, k2);
  const bool witness = std::abs(k1 - 2.0 * kPi) < 1e-15 && std::abs(k2 - 4.0 * kPi) < 1e-15;
  if (witness && delta > 1.0 && delta < 2.0) {
    const double sym = f_delta_gap_symmetrized(delta);
    if (std::abs(sym - gap) > 1e-9) {
      std::ostringstream os;
      os << "F_delta gap routes disagree: direct=" << gap << " symmetrised=" << sym;
      throw NumericalError(os.str());
    }
  }
  return gap;
}

}  // namespace hexfourier
