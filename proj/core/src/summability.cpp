#include "hexfourier/summability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hexfourier/error.hpp"
#include "hexfourier/kernels.hpp"
#include "parallel.hpp"

namespace hexfourier {
namespace {

double spread(const HexPoint& t) {
  const auto d = differences(t);
  return std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
}

int panels_for(double length, const HexPoint& t) {
  const double n = std::ceil(length * (2.0 / 3.0) * spread(t) / 3.141592653589793) + 2.0;
  return static_cast<int>(std::min(n, 20000.0));
}

QuadratureControl with_budget(QuadratureControl ctrl, int panels) {
  ctrl.max_subdivisions += panels;
  return ctrl;
}

double require(const QuadResult<double>& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (estimate " << r.value << ", error " << r.error
       << ")";
    throw NumericalError(os.str());
  }
  return r.value;
}

void check_profile(const RadialProfile& fhat) {
  if (!fhat.phi) throw std::invalid_argument("summability mean needs a profile evaluator");
}

// int_0^R (R - rho)^alpha g(rho) drho, alpha > -1.
double weighted(const std::function<double(double)>& g, double R, double alpha, int panels,
                const QuadratureControl& ctrl, const char* what) {
  if (alpha == 0.0) return require(quad_1d(g, 0.0, R, with_budget(ctrl, panels), panels), what);
  if (alpha < 1.0) {
    return require(quad_1d_endpoint_weight(g, 0.0, R, alpha, with_budget(ctrl, panels), panels), what);
  }
  auto f = [&](double rho) { return std::pow(R - rho, alpha) * g(rho); };
  return require(quad_1d(f, 0.0, R, with_budget(ctrl, panels), panels), what);
}

}  // namespace

void SummabilityParams::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("summability requires finite R > 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("summability requires delta >= 0");
}

double riesz_mean_radial(const RadialProfile& fhat, const SummabilityParams& params,
                         const HexPoint& t, const QuadratureControl& ctrl) {
  check_profile(fhat);
  params.validate();
  ctrl.validate();
  const double R = params.R;
  auto g = [&](double rho) { return e_kernel(rho, t).value * fhat(rho); };
  // (1 - rho/R)^delta = R^-delta (R - rho)^delta
  const double scaled =
      weighted(g, R, params.delta, panels_for(R, t), ctrl, "riesz_mean_radial");
  return scaled / std::pow(R, params.delta);
}

double cesaro_mean_radial(const RadialProfile& fhat, const SummabilityParams& params,
                          const HexPoint& t, const QuadratureControl& ctrl) {
  check_profile(fhat);
  params.validate();
  ctrl.validate();
  if (!(params.delta > 0.0)) throw std::invalid_argument("cesaro_mean_radial requires delta > 0");
  const double R = params.R;
  const double delta = params.delta;

  auto integrand = [&](double u) { return e_kernel(u, t).value * fhat(u); };
  auto sigma = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const int n = panels_for(rho, t);
    return require(quad_1d(integrand, 0.0, rho, with_budget(ctrl, n), n), "cesaro_mean_radial");
  };
  const double outer = weighted(sigma, R, delta - 1.0, panels_for(R, t), ctrl, "cesaro_mean_radial");
  return delta / std::pow(R, delta) * outer;
}

double summability_mean(const RadialProfile& fhat, const SummabilityParams& params,
                        const HexPoint& t, const QuadratureControl& ctrl) {
  return params.method == SummabilityMethod::kCesaro ? cesaro_mean_radial(fhat, params, t, ctrl)
                                                     : riesz_mean_radial(fhat, params, t, ctrl);
}

ConvolutionResult convolve_kernel(const std::function<double(const HexPoint&)>& f, double R,
                                  double delta, const HexPoint& t,
                                  const ConvolutionOptions& opts) {
  if (!f) throw std::invalid_argument("convolve_kernel needs a function");
  SummabilityParams{R, delta, SummabilityMethod::kCesaro}.validate();
  const double P = opts.truncation_radius;
  if (!(P > 0.0) || !std::isfinite(P)) throw std::invalid_argument("truncation radius must be > 0");

  HexQuadOptions q = opts.quad;
  q.initial_cells = std::max(q.initial_cells, std::min(64, static_cast<int>(std::ceil(R * P / 2.0))));
  auto integrand = [&](const HexPoint& s) {
    return std::complex<double>(f(t - s) * cesaro_kernel(R, delta, s).value, 0.0);
  };
  const auto quad = quad_hexagon(P, integrand, q);

  ConvolutionResult res;
  res.value = quad.value.real();
  res.quad_error = quad.error;
  res.converged = quad.converged;
  res.tail_bound = std::numeric_limits<double>::quiet_NaN();
  if (opts.f_tail) {
    // |D_R^delta(s)| <= D_R^delta(0), and ||s|| > P implies ||t - s|| > P - ||t||.
    const double peak = 6.0 * R * R / ((delta + 1.0) * (delta + 2.0));
    res.tail_bound = peak * opts.f_tail->tail(std::max(0.0, P - hexnorm(t)));
    if (res.tail_bound > opts.tail_tol) {
      std::ostringstream os;
      os << "convolve_kernel: tail bound " << res.tail_bound << " exceeds " << opts.tail_tol
         << " at truncation radius " << P;
      throw NumericalError(os.str());
    }
  }
  return res;
}

std::vector<double> cesaro_field(double R, double delta, const GridSpec& grid) {
  SummabilityParams{R, delta, SummabilityMethod::kCesaro}.validate();
  grid.validate();
  const auto nodes = grid_nodes(grid);
  std::vector<double> values(nodes.size());
  detail::parallel_for(nodes.size(), [&](std::size_t i) {
    values[i] = cesaro_kernel(R, delta, nodes[i].t).value;
  });
  return values;
}

PositivityReport positivity_scan(double R, double delta, const GridSpec& grid, double tol) {
  return summarize_field(grid, cesaro_field(R, delta, grid), tol);
}

std::vector<ConvergenceRow> convergence_experiment(double a, double delta,
                                                   const std::vector<double>& R_list,
                                                   const std::vector<HexPoint>& points,
                                                   const QuadratureControl& ctrl) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("convergence_experiment requires a > 0");
  for (double R : R_list) SummabilityParams{R, delta, SummabilityMethod::kRiesz}.validate();
  const auto fhat = RadialProfile::exponential(2.0 * a / 3.0);

  std::vector<ConvergenceRow> rows(R_list.size() * points.size());
  detail::parallel_for(rows.size(), [&](std::size_t i) {
    const double R = R_list[i / points.size()];
    const HexPoint& p = points[i % points.size()];
    ConvergenceRow row;
    row.R = R;
    row.delta = delta;
    row.point = p;
    row.mean = riesz_mean_radial(fhat, {R, delta, SummabilityMethod::kRiesz}, p, ctrl);
    row.target = exp_radial_ft_closed(a, p);
    row.abs_error = std::abs(row.mean - row.target);
    rows[i] = row;
  });
  return rows;
}

}  // namespace hexfourier
