// Acceptance criteria 1-10. `hexfourier_acceptance N` runs criterion N; with no
// argument every criterion runs. One PASS/FAIL line per criterion; the exit
// status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hexfourier/error.hpp"
#include "hexfourier/hexgeom.hpp"
#include "hexfourier/kernels.hpp"
#include "hexfourier/oracle.hpp"
#include "hexfourier/radial.hpp"
#include "hexfourier/specfun.hpp"
#include "hexfourier/summability.hpp"

#ifdef HEXFOURIER_ACCEPTANCE_WITH_CLI
#include "verify.hpp"
#endif

namespace {

using namespace hexfourier;
constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED:" << what;
    }
  }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  HexPoint point(double half, double min_gap) {
    for (;;) {
      const HexPoint t(uniform(-half, half), uniform(-half, half));
      if (std::abs(t.t3()) <= half && min_abs_difference(t) >= min_gap) return t;
    }
  }

 private:
  std::mt19937_64 rng_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::complex<double> character(const HexPoint& s, const HexPoint& t, double sign) {
  return std::exp(std::complex<double>(0.0, sign * 2.0 / 3.0 * dot(s, t)));
}

// 1. Dirichlet closed form against the hexagon quadrature oracle.
void criterion_1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  Sampler rng(kSeed);
  const double rhos[] = {0.5, 1.0, 2.0};
  double max_rel = 0.0, max_imag = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double rho = rhos[i % 3];
    const HexPoint t = rng.point(5.0, 1e-2);
    HexQuadOptions opts;
    opts.initial_cells = oscillation_cells(rho, t) + 1;
    const auto q = quad_hexagon(rho, [&](const HexPoint& s) { return character(s, t, -1.0); }, opts);
    const double d = dirichlet(rho, t).value;
    max_rel = std::max(max_rel, std::abs(d - q.value.real()) / std::abs(q.value.real()));
    max_imag = std::max(max_imag, std::abs(q.value.imag()));
  }
  const double secs = seconds_since(start);
  o.detail << "points=100 max_rel_err=" << max_rel << " (tol 1e-7) max_imag=" << max_imag
           << " (tol 1e-10) runtime=" << secs << "s (limit 120s)";
  o.require(max_rel <= 1e-7, "relative error");
  o.require(max_imag <= 1e-10, "imaginary part");
  o.require(secs <= 120.0, "runtime");
}

// 2. E_rho = d/drho D_rho and the radial reduction.
void criterion_2(Outcome& o) {
  Sampler rng(kSeed);
  double max_fd = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double rho = rng.uniform(0.5, 3.0);
    const HexPoint t = rng.point(5.0, 1e-2);
    const double fd = finite_diff_rho([&](double r) { return dirichlet(r, t).value; }, rho, 1e-5);
    max_fd = std::max(max_fd, std::abs(fd - e_kernel(rho, t).value));
  }
  const RadialProfile profiles[] = {RadialProfile::constant(1.0), RadialProfile::monomial(1),
                                    RadialProfile::exponential(1.0)};
  double max_red = 0.0;
  int cases = 0;
  for (const auto& phi : profiles) {
    for (int i = 0; i < 5; ++i) {
      const HexPoint t = rng.point(4.0, 1e-2);
      const double r = rng.uniform(0.5, 3.0);
      HexQuadOptions opts;
      opts.initial_cells = oscillation_cells(r, t) + 1;
      const auto q = quad_hexagon(
          r, [&](const HexPoint& s) { return character(s, t, 1.0) * phi(hexnorm(s)); }, opts);
      const double v = radial_ft(phi, r, t);
      max_red = std::max(max_red, std::abs(v - q.value.real()) / std::max(1.0, std::abs(v)));
      ++cases;
    }
  }
  o.detail << "finite_difference points=100 max_abs_err=" << max_fd << " (tol 1e-6); radial_reduction cases="
           << cases << " profiles={1,rho,exp(-rho)} max_err=" << max_red << " (tol 1e-6)";
  o.require(max_fd <= 1e-6, "finite difference");
  o.require(max_red <= 1e-6, "radial reduction");
}

// 3. Kernel positivity for delta = 2, the sum-of-squares identity and the
// negativity witness below order 2.
void criterion_3(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const GridSpec grid = GridSpec::square(-15, 15, 201);
  std::size_t violations = 0;
  double worst_scaled = INFINITY;
  for (double R : {1.0, 5.0, 10.0}) {
    const auto rep = positivity_scan(R, 2.0, grid, 1e-10 * R * R);
    violations += rep.violations;
    worst_scaled = std::min(worst_scaled, rep.min_value / (R * R));
  }
  Sampler rng(kSeed);
  double sos = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const HexPoint t(rng.uniform(-20, 20), rng.uniform(-20, 20));
    const double g = g_direct(t);
    sos = std::max(sos, std::abs(g - g_sos(t)) / (1.0 + std::abs(g)));
  }
  bool witness_ok = true;
  double witness_rel = 0.0;
  for (double d : {1.2, 1.5, 1.8}) {
    const double R = 1.0;
    const double v = cesaro_kernel(R, d, HexPoint(3 * kPi / R, -3 * kPi / R)).value;
    const double want = R * R / (2 * kPi * kPi) * f_delta_gap(d, 2 * kPi, 4 * kPi);
    witness_ok = witness_ok && v < 0.0;
    witness_rel = std::max(witness_rel, std::abs(v - want) / std::abs(want));
  }
  const double secs = seconds_since(start);
  o.detail << "grid=201x201 over [-15,15]^2 R={1,5,10} violations=" << violations
           << " min_value/R^2=" << worst_scaled << "; sos points=10000 max_scaled_err=" << sos
           << " (tol 1e-10); witness delta={1.2,1.5,1.8} negative=" << (witness_ok ? "yes" : "no")
           << " max_rel_err=" << witness_rel << " (tol 1e-8) runtime=" << secs << "s (limit 60s)";
  o.require(violations == 0, "positivity");
  o.require(sos <= 1e-10, "sum of squares");
  o.require(witness_ok, "witness sign");
  o.require(witness_rel <= 1e-8, "witness value");
  o.require(secs <= 60.0, "runtime");
}

// 4. Exponential transform pair.
void criterion_4(Outcome& o) {
  Sampler rng(kSeed);
  double max_rel = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    const auto phi = RadialProfile::exponential(2.0 * a / 3.0);
    for (int i = 0; i < 20; ++i) {
      const HexPoint t = rng.point(3.0, 1e-2);
      const double closed = exp_radial_ft_closed(a, t);
      max_rel = std::max(max_rel, std::abs(radial_ft(phi, INFINITY, t) - closed) / closed);
    }
  }
  const double origin_closed = exp_radial_ft_closed(1.0, HexPoint());
  const double origin_quad = radial_ft(RadialProfile::exponential(2.0 / 3.0), INFINITY, HexPoint());
  const double origin_err = std::max(std::abs(origin_closed - 13.5), std::abs(origin_quad - 13.5));
  o.detail << "a={0.5,1,2} points=20 each max_rel_err=" << max_rel << " (tol 1e-6); origin closed="
           << origin_closed << " quadrature=" << origin_quad << " err=" << origin_err << " (tol 1e-9)";
  o.require(max_rel <= 1e-6, "closed vs quadrature");
  o.require(origin_err <= 1e-9, "origin value");
}

// 5. Cesaro means equal Riesz means.
void criterion_5(Outcome& o) {
  Sampler rng(kSeed);
  const double deltas[] = {1.0, 1.5, 2.0, 3.0};
  double max_rel = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double delta = deltas[i % 4];
    const double rate = rng.uniform(0.3, 1.5);
    const double R = rng.uniform(1.0, 20.0);
    const HexPoint t = rng.point(3.0, 1e-2);
    const auto phi = RadialProfile::exponential(rate);
    const double r = riesz_mean_radial(phi, {R, delta, SummabilityMethod::kRiesz}, t);
    const double c = cesaro_mean_radial(phi, {R, delta, SummabilityMethod::kCesaro}, t);
    max_rel = std::max(max_rel, std::abs(c - r) / std::abs(r));
  }
  o.detail << "combinations=50 delta={1,1.5,2,3} max_rel_err=" << max_rel << " (tol 1e-6)";
  o.require(max_rel <= 1e-6, "agreement");
}

// 6. Spider function: sign, oracle agreement and the sine-product identity.
void criterion_6(Outcome& o) {
  double min_j = INFINITY;
  std::size_t evaluated = 0, skipped = 0;
  for (const auto& node : grid_nodes(GridSpec::square(-6, 6, 301))) {
    try {
      min_j = std::min(min_j, j_closed(node.t));
      ++evaluated;
    } catch (const BoundaryBandError&) {
      ++skipped;
    }
  }
  Sampler rng(kSeed);
  double max_err = 0.0;
  int per_class[4] = {0, 0, 0, 0};
  for (int i = 0; i < 50; ++i) {
    const int inside = i % 4;
    HexPoint t;
    for (;;) {
      t = rng.point(2.5, 0.1);
      bool ok = region_classify(t).inside_count() == inside;
      for (double d : differences(t)) ok = ok && std::abs(std::abs(d) - 1.0) > 0.1;
      if (ok) break;
    }
    ++per_class[inside];
    max_err = std::max(max_err, std::abs(j_closed(t) - j_truncated_integral(t, 2000.0, 500.0)));
  }
  const double s2 = sine_m2_product(2.0), s3 = sine_m2_product(3.0);
  const double sine_err = std::max(std::abs(s2 - kPi / 4), std::abs(s3 - kPi / 6));
  o.detail << "grid=301x301 over [-6,6]^2 evaluated=" << evaluated << " boundary_skipped=" << skipped
           << " min=" << min_j << "; oracle points=50 (E+++:" << per_class[0] << " E-++:" << per_class[1]
           << " E--+:" << per_class[2] << " E---:" << per_class[3] << ") max_abs_err=" << max_err
           << " (tol 1e-3); sine_product u=2:" << s2 << " u=3:" << s3 << " max_err=" << sine_err << " (tol 1e-3)";
  o.require(min_j >= 0.0, "nonnegativity");
  o.require(max_err <= 1e-3, "oracle agreement");
  o.require(sine_err <= 1e-3, "sine product");
}

// 7. B-spline representation.
void criterion_7(Outcome& o) {
  Sampler rng(kSeed);
  double int_err = 0.0, scale_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const HexPoint t = rng.point(4.0, 1e-3);
    int_err = std::max(int_err, std::abs(m_spline_integral(t) - 3.0));
    const double u = rng.uniform(0.1, 5.0);
    const double want = m_spline(1.0, t) / u;
    scale_err = std::max(scale_err, std::abs(m_spline(u, u * t) - want) / std::max(1.0, std::abs(want)));
  }
  double e_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const HexPoint t = rng.point(4.0, 1e-3);
    const double rho = rng.uniform(0.1, 5.0);
    const double e = e_kernel(rho, t).value;
    e_err = std::max(e_err, std::abs(e_kernel_via_spline(rho, t) - e) / std::max(1.0, std::abs(e)));
  }
  o.detail << "integral points=100 max_err=" << int_err << " (tol 1e-13); scaling max_err=" << scale_err
           << " (tol 1e-12); spline E points=50 max_err=" << e_err << " (tol 1e-10)";
  o.require(int_err <= 1e-13, "integral");
  o.require(scale_err <= 1e-12, "scaling");
  o.require(e_err <= 1e-10, "E route");
}

// 8. psi transform and the spline route.
void criterion_8(Outcome& o) {
  const auto sub = RadialProfile::exponential(2.0 / 3.0, 4.0 / 9.0);
  double psi_err = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double u = 0.05 * i;
    const double want = 4 * (1 - u * u) / ((1 + u * u) * (1 + u * u));
    psi_err = std::max(psi_err, std::abs(psi_transform(sub, u) - want));
  }
  Sampler rng(kSeed);
  const auto phi = RadialProfile::exponential(2.0 / 3.0);
  double route = 0.0;
  for (int i = 0; i < 20; ++i) {
    const HexPoint t = rng.point(3.0, 1e-2);
    const double r = radial_ft(phi, INFINITY, t);
    route = std::max(route, std::abs(ft_via_spline(phi, t) - r) / std::abs(r));
  }
  o.detail << "psi samples=101 on [0,5] max_err=" << psi_err << " (tol 1e-8); spline route points=20 max_rel_err="
           << route << " (tol 1e-6)";
  o.require(psi_err <= 1e-8, "psi");
  o.require(route <= 1e-6, "spline route");
}

// 9. Positive-definiteness certificate and Gram matrices.
void criterion_9(Outcome& o) {
  const GridSpec grid = GridSpec::square(-5, 5, 101);
  const auto one = pd_certificate(DiscreteMeasure{{{1.0, 1.0}}}, grid, 1e-3);
  const auto two = pd_certificate(DiscreteMeasure{{{1.0, 1.0}, {2.0, 0.5}}}, grid, 1e-3);
  Sampler rng(kSeed);
  std::vector<HexPoint> pts;
  for (int i = 0; i < 16; ++i) pts.emplace_back(rng.uniform(-3, 3), rng.uniform(-3, 3));
  const double lam = gram_check(DiscreteMeasure{{{1.0, 1.0}}}, pts);
  o.detail << "grid=101x101 over [-5,5]^2 atoms{(1,1)} violations=" << one.violations << " min=" << one.min_value
           << " skipped=" << one.skipped << "; atoms{(1,1),(2,0.5)} violations=" << two.violations
           << " min=" << two.min_value << " skipped=" << two.skipped << "; gram N=16 min_eig=" << lam
           << " (tol -1e-8)";
  o.require(one.violations == 0 && two.violations == 0, "certificate");
  o.require(lam >= -1e-8, "gram");
}

// 10. Convergence harness and the full verification run.
void criterion_10(Outcome& o) {
  const auto rows = convergence_experiment(1.0, 2.0, {5, 10, 20, 40, 200}, {HexPoint()});
  bool decreasing = true;
  o.detail << "abs_err at t=0:";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    o.detail << " R=" << rows[k].R << ":" << rows[k].abs_error;
    if (k > 0 && k < 4) decreasing = decreasing && rows[k].abs_error < rows[k - 1].abs_error;
  }
  const double at200 = rows[4].abs_error;
  o.detail << "; strictly_decreasing(5..40)=" << (decreasing ? "yes" : "no") << " err(R=200)=" << at200
           << " (tol 1e-4)";
  o.require(decreasing, "monotone");
  o.require(at200 < 1e-4, "R=200 error");
#ifdef HEXFOURIER_ACCEPTANCE_WITH_CLI
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream sink;
  const auto tally = hexfourier::cli::run_verify({"all", 42, 2.0}, sink);
  const double secs = seconds_since(start);
  o.detail << "; verify --suite all checks=" << tally.checks << " failures=" << tally.failures
           << " runtime=" << secs << "s (limit 600s)";
  o.require(tally.failures == 0, "verify all");
  o.require(secs <= 600.0, "verify runtime");
#endif
}

const char* const kTitles[] = {
    "",
    "Dirichlet closed form vs hexagon quadrature",
    "E kernel as rho-derivative; radial reduction",
    "Cesaro kernel positivity threshold",
    "Exponential transform pair",
    "Cesaro means equal Riesz means",
    "Spider function",
    "B-spline representation",
    "psi transform",
    "Positive-definiteness certificate",
    "Convergence harness",
};

using Criterion = void (*)(Outcome&);
const Criterion kCriteria[] = {nullptr,     criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                               criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

bool run_one(int n) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    kCriteria[n](o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  std::printf("criterion %d %s | %s | %s | %.2fs\n", n, o.pass ? "PASS" : "FAIL", kTitles[n],
              o.detail.str().c_str(), seconds_since(start));
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1-10 ...]\n", argv[0]);
      return 2;
    }
    which.push_back(n);
  }
  if (which.empty()) {
    for (int n = 1; n <= 10; ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) all = run_one(n) && all;
  return all ? 0 : 1;
}
