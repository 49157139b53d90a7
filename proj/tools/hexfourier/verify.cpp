#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "format.hpp"
#include "hexfourier/error.hpp"
#include "hexfourier/hexgeom.hpp"
#include "hexfourier/kernels.hpp"
#include "hexfourier/oracle.hpp"
#include "hexfourier/radial.hpp"
#include "hexfourier/specfun.hpp"
#include "hexfourier/summability.hpp"

namespace hexfourier::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string pt(const HexPoint& t) {
  return "(" + fmt(t.t1()) + "," + fmt(t.t2()) + "," + fmt(t.t3()) + ")";
}

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void expect(bool ok, const std::string& name, const std::string& detail) {
    ++tally_.checks;
    if (!ok) ++tally_.failures;
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out_ << ' ' << detail;
    out_ << '\n';
  }

  // |got - want| <= tol * scale
  void close(const std::string& name, double got, double want, double tol, double scale = 1.0) {
    const double err = std::abs(got - want);
    std::ostringstream os;
    os << "got=" << fmt(got) << " want=" << fmt(want) << " err=" << fmt(err)
       << " tol=" << fmt(tol * scale);
    expect(err <= tol * scale, name, os.str());
  }

  void relative(const std::string& name, double got, double want, double tol) {
    close(name, got, want, tol, std::max(std::abs(want), 1e-300));
  }

  // Runs `body`; an exception counts as a failed check.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, name, std::string("exception: ") + e.what());
    }
  }

  VerifyTally tally() const { return tally_; }

 private:
  std::ostream& out_;
  VerifyTally tally_;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Uniform in [-half, half]^3 on the plane, with pairwise gaps >= min_gap.
  HexPoint point(double half, double min_gap = 0.05) {
    for (;;) {
      const HexPoint t(uniform(-half, half), uniform(-half, half));
      if (std::abs(t.t3()) <= half && min_abs_difference(t) >= min_gap) return t;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

std::complex<double> phase(const HexPoint& s, const HexPoint& t, double sign) {
  return std::exp(std::complex<double>(0.0, sign * 2.0 / 3.0 * dot(s, t)));
}

HexQuadOptions oscillatory(double rho, const HexPoint& t) {
  HexQuadOptions q;
  q.initial_cells = oscillation_cells(rho, t) + 1;
  return q;
}

void suite_dirichlet(Checker& c, Sampler& rng) {
  for (double rho : {0.5, 1.0, 2.0}) {
    c.guarded("dirichlet/origin", [&] {
      c.relative("dirichlet/origin rho=" + fmt(rho), dirichlet(rho, HexPoint()).value, 3 * rho * rho, 1e-15);
    });
  }
  const double rhos[] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 12; ++i) {
    const double rho = rhos[i % 3];
    const HexPoint t = rng.point(5.0);
    c.guarded("dirichlet/oracle", [&] {
      const auto q = quad_hexagon(rho, [&](const HexPoint& s) { return phase(s, t, -1.0); },
                                  oscillatory(rho, t));
      const std::string tag = " rho=" + fmt(rho) + " t=" + pt(t);
      c.relative("dirichlet/oracle" + tag, dirichlet(rho, t).value, q.value.real(), 1e-7);
      c.close("dirichlet/oracle-imag" + tag, q.value.imag(), 0.0, 1e-10);
    });
  }
  for (int i = 0; i < 3; ++i) {
    const HexPoint t = rng.point(3.0);
    c.guarded("dirichlet/conjugate", [&] {
      const auto q = quad_hexagon(1.0, [&](const HexPoint& s) { return phase(s, t, 1.0); },
                                  oscillatory(1.0, t));
      c.relative("dirichlet/conjugate-phase t=" + pt(t), dirichlet(1.0, t).value, q.value.real(), 1e-7);
      c.close("dirichlet/even t=" + pt(t), dirichlet(1.0, -t).value, dirichlet(1.0, t).value, 1e-12,
              1.0 + std::abs(dirichlet(1.0, t).value));
    });
  }
  for (int i = 0; i < 5; ++i) {
    const HexPoint t = rng.point(3.0);
    c.guarded("dirichlet/scaling", [&] {
      const double v = dirichlet(2.0, t).value;
      c.close("dirichlet/scaling t=" + pt(t), v, 4.0 * dirichlet(1.0, 2.0 * t).value, 1e-10, 1.0 + std::abs(v));
    });
  }
  for (double eps : {1e-3, 1e-5, 1e-7}) {
    const HexPoint t(0.8, 0.8 + eps);
    c.guarded("dirichlet/near-singular", [&] {
      const auto q = quad_hexagon(1.5, [&](const HexPoint& s) { return phase(s, t, -1.0); },
                                  oscillatory(1.5, t));
      c.relative("dirichlet/near-singular eps=" + fmt(eps), dirichlet(1.5, t).value, q.value.real(), 1e-7);
    });
  }
}

void suite_ekernel(Checker& c, Sampler& rng) {
  for (double rho : {0.5, 1.0, 2.0}) {
    c.guarded("ekernel/origin", [&] {
      c.relative("ekernel/origin rho=" + fmt(rho), e_kernel(rho, HexPoint()).value, 6 * rho, 1e-15);
    });
  }
  for (int i = 0; i < 20; ++i) {
    const double rho = rng.uniform(0.5, 2.0);
    const HexPoint t = rng.point(5.0);
    c.guarded("ekernel/derivative", [&] {
      const double fd = finite_diff_rho([&](double r) { return dirichlet(r, t).value; }, rho, 1e-5);
      c.close("ekernel/derivative rho=" + fmt(rho) + " t=" + pt(t), e_kernel(rho, t).value, fd, 1e-6);
    });
  }
  const std::pair<const char*, RadialProfile> profiles[] = {
      {"1", RadialProfile::constant(1.0)},
      {"rho", RadialProfile::monomial(1)},
      {"exp(-rho)", RadialProfile::exponential(1.0)}};
  for (const auto& [name, phi] : profiles) {
    for (int i = 0; i < 2; ++i) {
      const HexPoint t = rng.point(3.0);
      const double r = 1.5;
      c.guarded("ekernel/radial-reduction", [&] {
        const auto q = quad_hexagon(
            r, [&](const HexPoint& s) { return phase(s, t, 1.0) * phi(hexnorm(s)); }, oscillatory(r, t));
        const double v = radial_ft(phi, r, t);
        c.close("ekernel/radial-reduction phi=" + std::string(name) + " t=" + pt(t), v, q.value.real(),
                1e-6, std::max(1.0, std::abs(v)));
      });
    }
  }
  for (int i = 0; i < 5; ++i) {
    const double rho = rng.uniform(0.5, 3.0);
    const double u = rng.uniform(0.3, 3.0);
    const HexPoint t = rng.point(4.0);
    c.guarded("ekernel/scaling", [&] {
      const double lhs = e_kernel(rho / u, t).value;
      const double rhs = e_kernel(rho, t / u).value / u;
      c.close("ekernel/scaling rho=" + fmt(rho) + " u=" + fmt(u), lhs, rhs, 1e-10, 1.0 + std::abs(lhs));
    });
  }
}

void suite_cesaro(Checker& c, Sampler& rng, double delta) {
  for (double R : {1.0, 4.0}) {
    c.guarded("cesaro/origin", [&] {
      c.relative("cesaro/origin R=" + fmt(R) + " delta=" + fmt(delta),
                 cesaro_kernel(R, delta, HexPoint()).value,
                 6 * R * R / ((delta + 1) * (delta + 2)), 1e-12);
    });
  }
  for (int i = 0; i < 6; ++i) {
    const double R = rng.uniform(0.5, 3.0);
    const HexPoint t = rng.point(4.0);
    c.guarded("cesaro/definition", [&] {
      auto D = [&](double rho) { return dirichlet(rho, t).value; };
      const QuadratureControl ctrl{1e-13, 1e-12, 20000};
      const int panels = 8;
      double integral = 0.0;
      if (delta >= 1.0) {
        auto f = [&](double rho) { return std::pow(R - rho, delta - 1.0) * D(rho); };
        integral = quad_1d(f, 0.0, R, ctrl, panels).value;
      } else {
        integral = quad_1d_endpoint_weight(D, 0.0, R, delta - 1.0, ctrl, panels).value;
      }
      const double want = delta / std::pow(R, delta) * integral;
      c.close("cesaro/definition R=" + fmt(R) + " t=" + pt(t), cesaro_kernel(R, delta, t).value, want,
              1e-8, std::max(1.0, std::abs(want)));
    });
  }
  if (delta == std::round(delta) && delta >= 1.0 && delta <= 4.0) {
    for (int i = 0; i < 3; ++i) {
      const double R = rng.uniform(0.5, 2.0);
      const HexPoint t = rng.point(3.0);
      c.guarded("cesaro/oracle", [&] {
        const auto q = quad_hexagon(
            R,
            [&](const HexPoint& s) { return std::pow(1.0 - hexnorm(s) / R, delta) * phase(s, t, -1.0); },
            oscillatory(R, t));
        c.relative("cesaro/oracle R=" + fmt(R) + " t=" + pt(t), cesaro_kernel(R, delta, t).value,
                   q.value.real(), 1e-7);
      });
    }
  }

  double worst = 0.0;
  double most_negative = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const HexPoint t(rng.uniform(-20, 20), rng.uniform(-20, 20));
    const double gd = g_direct(t);
    worst = std::max(worst, std::abs(gd - g_sos(t)) / (1.0 + std::abs(gd)));
    most_negative = std::min(most_negative, gd / (1.0 + std::abs(gd)));
  }
  c.expect(worst <= 1e-10, "cesaro/sum-of-squares", "points=2000 max_scaled_err=" + fmt(worst));
  c.expect(most_negative >= -1e-10, "cesaro/g-nonnegative", "min_scaled=" + fmt(most_negative));

  if (delta >= 2.0) {
    c.guarded("cesaro/positivity", [&] {
      const auto rep = positivity_scan(1.0, delta, GridSpec::square(-15, 15, 201), 1e-10);
      c.expect(rep.violations == 0, "cesaro/positivity R=1 delta=" + fmt(delta),
               "grid=-15:15:201 min=" + fmt(rep.min_value) + " violations=" + std::to_string(rep.violations));
    });
    return;
  }
  for (double R : {1.0, 2.0}) {
    const HexPoint w(3 * kPi / R, -3 * kPi / R);
    c.guarded("cesaro/witness", [&] {
      const double v = cesaro_kernel(R, delta, w).value;
      const double want = R * R / (2 * kPi * kPi) * f_delta_gap(delta, 2 * kPi, 4 * kPi);
      c.relative("cesaro/witness-formula R=" + fmt(R) + " delta=" + fmt(delta), v, want, 1e-8);
      if (delta > 1.0) {
        c.expect(v < 0.0, "cesaro/witness-negative R=" + fmt(R) + " delta=" + fmt(delta), "value=" + fmt(v));
      }
    });
  }
  if (delta > 1.0) {
    c.guarded("cesaro/scan-finds-witness", [&] {
      GridSpec g;
      g.system = GridSystem::kHexPlane;
      g.center = {3 * kPi, -3 * kPi};
      g.half_width = {0.25, 0.25};
      g.resolution = {5, 5};
      const auto rep = positivity_scan(1.0, delta, g, 1e-10);
      c.expect(rep.violations >= 1, "cesaro/scan-finds-witness delta=" + fmt(delta),
               "violations=" + std::to_string(rep.violations) + " min=" + fmt(rep.min_value));
    });
  }
}

void suite_radial(Checker& c, Sampler& rng) {
  c.relative("radial/closed-origin", exp_radial_ft_closed(1.0, HexPoint()), 13.5, 1e-12);
  c.relative("radial/closed-(1,0,-1)", exp_radial_ft_closed(1.0, HexPoint(1, 0)), 1.35, 1e-12);
  c.guarded("radial/ft-origin", [&] {
    c.relative("radial/ft-origin", radial_ft(RadialProfile::exponential(2.0 / 3.0), INFINITY, HexPoint()),
               13.5, 1e-9);
  });
  for (double a : {0.5, 1.0, 2.0}) {
    const auto phi = RadialProfile::exponential(2.0 * a / 3.0);
    for (int i = 0; i < 4; ++i) {
      const HexPoint t = rng.point(3.0);
      c.guarded("radial/example", [&] {
        c.relative("radial/example a=" + fmt(a) + " t=" + pt(t), radial_ft(phi, INFINITY, t),
                   exp_radial_ft_closed(a, t), 1e-6);
      });
    }
  }
  c.guarded("radial/integral", [&] {
    c.relative("radial/integral phi=1 r=1", radial_integral(RadialProfile::constant(1), 1.0), 3.0, 1e-12);
    c.relative("radial/integral phi=rho r=1", radial_integral(RadialProfile::monomial(1), 1.0), 2.0, 1e-12);
    c.relative("radial/integral phi=exp r=inf",
               radial_integral(RadialProfile::exponential(2.0 / 3.0), INFINITY), 13.5, 1e-10);
  });
  for (int i = 0; i < 3; ++i) {
    const HexPoint t = rng.point(3.0);
    const double r = rng.uniform(0.5, 3.0);
    c.guarded("radial/partial-dirichlet", [&] {
      const double d = dirichlet(r, t).value;
      c.close("radial/partial-dirichlet r=" + fmt(r) + " t=" + pt(t), radial_ft(RadialProfile::constant(1), r, t),
              d, 1e-9, 1.0 + std::abs(d));
    });
  }
  double min_closed = INFINITY;
  for (int i = 0; i < 2000; ++i) {
    const HexPoint t(rng.uniform(-50, 50), rng.uniform(-50, 50));
    min_closed = std::min(min_closed, exp_radial_ft_closed(rng.uniform(0.1, 3.0), t));
  }
  c.expect(min_closed > 0.0, "radial/closed-positive", "points=2000 min=" + fmt(min_closed));

  const double deltas[] = {1.0, 1.5, 2.0, 3.0};
  for (int i = 0; i < 8; ++i) {
    const double delta = deltas[i % 4];
    const double R = rng.uniform(1.0, 10.0);
    const double rate = rng.uniform(0.3, 1.5);
    const HexPoint t = rng.point(3.0);
    c.guarded("radial/cesaro-riesz", [&] {
      const auto phi = RadialProfile::exponential(rate);
      const double riesz = riesz_mean_radial(phi, {R, delta, SummabilityMethod::kRiesz}, t);
      const double cesaro = cesaro_mean_radial(phi, {R, delta, SummabilityMethod::kCesaro}, t);
      c.relative("radial/cesaro-riesz R=" + fmt(R) + " delta=" + fmt(delta) + " t=" + pt(t), cesaro, riesz, 1e-6);
    });
  }

  const DiscreteMeasure single{{{1.0, 1.0}}};
  c.relative("radial/m2-mixture-origin", m2_mixture(single, 0.0), kPi / 2, 1e-15);
  c.relative("radial/m2-mixture-atom", m2_mixture(DiscreteMeasure{{{2.0, 3.0}}}, kPi / 2), 3 * m2(kPi), 1e-15);
  c.close("radial/m2-mixture-empty", m2_mixture(DiscreteMeasure{}, 1.0), 0.0, 0.0);
  c.guarded("radial/gram", [&] {
    std::vector<HexPoint> pts;
    for (int i = 0; i < 16; ++i) pts.push_back(rng.point(3.0, 0.0));
    const double lam = gram_check(single, pts);
    c.expect(lam >= -1e-8, "radial/gram N=16", "min_eig=" + fmt(lam));
    for (auto& p : pts) p = 10.0 * p;
    const double lam10 = gram_check(single, pts);
    c.expect(lam10 >= -1e-8, "radial/gram N=16 scaled=10", "min_eig=" + fmt(lam10));
  });
}

void suite_spline(Checker& c, Sampler& rng) {
  c.close("spline/bspline-interior", bspline1(0.5, 0, 1), 1.0, 0.0);
  c.close("spline/bspline-outside", bspline1(2, 0, 1), 0.0, 0.0);
  c.close("spline/bspline-knot", bspline1(1, 0, 1), 0.0, 0.0);
  double worst_int = 0.0, worst_scale = 0.0, worst_e = 0.0, worst_reflect = 0.0, min_m = 0.0;
  for (int i = 0; i < 30; ++i) {
    const HexPoint t = rng.point(4.0);
    worst_int = std::max(worst_int, std::abs(m_spline_integral(t) - 3.0));
    const double u = rng.uniform(0.2, 4.0);
    const double s = m_spline(1.0, t) / u;
    worst_scale = std::max(worst_scale, std::abs(m_spline(u, u * t) - s) / std::max(1.0, std::abs(s)));
    const double rho = rng.uniform(0.2, 5.0);
    const double e = e_kernel(rho, t).value;
    worst_e = std::max(worst_e, std::abs(e_kernel_via_spline(rho, t) - e) / std::max(1.0, std::abs(e)));
    const double v = rng.uniform(-5.0, 5.0);
    worst_reflect = std::max(worst_reflect, std::abs(m1_spline(-v, t) - m1_spline(v, -t)));
    min_m = std::min(min_m, m_spline(v, t));
  }
  c.expect(worst_int <= 1e-12, "spline/integral-3", "points=30 max_err=" + fmt(worst_int));
  c.expect(worst_scale <= 1e-12, "spline/scaling", "points=30 max_err=" + fmt(worst_scale));
  c.expect(worst_e <= 1e-10, "spline/e-kernel", "points=30 max_err=" + fmt(worst_e));
  c.expect(worst_reflect == 0.0, "spline/reflection", "points=30 max_err=" + fmt(worst_reflect));
  c.expect(min_m >= 0.0, "spline/nonnegative", "points=30 min=" + fmt(min_m));
  for (int i = 0; i < 5; ++i) {
    // t1 - t3 = d in (-1, 1), t2 - t3 = e > max(1, 1 + d)
    const double d = rng.uniform(-0.95, 0.95);
    const double e = std::max(1.0, 1.0 + d) + rng.uniform(0.05, 2.0);
    const double t3 = -(d + e) / 3.0;
    const HexPoint t(t3 + d, t3 + e);
    c.guarded("spline/omega", [&] {
      c.relative("spline/omega t=" + pt(t), m1_spline(1.0, t),
                 3 * t.t2() / ((t.t2() - t.t1()) * (t.t2() - t.t3())), 1e-12);
    });
  }
}

RegionLabel label_for(int inside) {
  RegionLabel l;
  for (int i = 0; i < 3; ++i) l.pattern[i] = i < inside ? Side::kInside : Side::kOutside;
  return l;
}

void suite_j(Checker& c, Sampler& rng) {
  c.close("j/E--- example", j_closed(HexPoint(0.2, -0.1)), 0.0, 0.0);
  c.relative("j/E--+ example", j_closed(HexPoint(0.6, 0.0)), 25 * kPi / 6, 1e-12);
  // differences (0.4, 1.5, -1.9)
  const HexPoint tb((2 * 0.4 + 1.5) / 3.0, (1.5 - 0.4) / 3.0);
  c.relative("j/E-++ example", j_closed(tb), 1.5 * kPi / (1.5 * 1.9), 1e-12);

  for (int inside = 0; inside <= 3; ++inside) {
    const std::string cls = label_for(inside).name();
    for (int k = 0; k < 2; ++k) {
      HexPoint t;
      for (;;) {
        t = rng.point(2.5, 0.1);
        const auto d = differences(t);
        bool ok = region_classify(t).inside_count() == inside;
        for (double x : d) ok = ok && std::abs(std::abs(x) - 1.0) > 0.1;
        if (ok) break;
      }
      c.guarded("j/oracle", [&] {
        c.close("j/oracle class=" + cls + " t=" + pt(t), j_closed(t), j_truncated_integral(t), 1e-3);
      });
    }
  }
  double min_j = INFINITY;
  std::size_t skipped = 0;
  for (const auto& node : grid_nodes(GridSpec::square(-6, 6, 301))) {
    try {
      min_j = std::min(min_j, j_closed(node.t));
    } catch (const BoundaryBandError&) {
      ++skipped;
    }
  }
  c.expect(min_j >= 0.0, "j/nonnegative", "grid=-6:6:301 min=" + fmt(min_j) + " skipped=" + std::to_string(skipped));
  c.guarded("j/sine-product", [&] {
    c.close("j/sine-product u=0.5", sine_m2_product(0.5), 0.0, 1e-3);
    c.close("j/sine-product u=2", sine_m2_product(2.0), kPi / 4, 1e-3);
    c.close("j/sine-product u=3", sine_m2_product(3.0), kPi / 6, 1e-3);
  });
}

void suite_psi(Checker& c, Sampler& rng) {
  const auto phi = RadialProfile::exponential(2.0 / 3.0, 4.0 / 9.0);
  c.guarded("psi/check", [&] {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double u = 0.5 * i;
      const double want = 4 * (1 - u * u) / ((1 + u * u) * (1 + u * u));
      worst = std::max(worst, std::abs(psi_transform(phi, u) - want));
    }
    c.expect(worst <= 1e-8, "psi/exponential-check", "samples=11 max_err=" + fmt(worst));
    c.close("psi/u=0", psi_transform(phi, 0.0), 4.0, 1e-8);
    c.close("psi/u=1", psi_transform(phi, 1.0), 0.0, 1e-8);
  });
  const auto ex = RadialProfile::exponential(2.0 / 3.0);
  for (int i = 0; i < 4; ++i) {
    const HexPoint t = rng.point(3.0);
    c.guarded("psi/spline-route", [&] {
      const double v = ft_via_spline(ex, t);
      c.relative("psi/spline-route t=" + pt(t), v, radial_ft(ex, INFINITY, t), 1e-6);
      c.relative("psi/spline-closed t=" + pt(t), v, exp_radial_ft_closed(1.0, t), 1e-6);
    });
  }
  c.guarded("psi/negative-psi-region", [&] {
    const auto e1 = RadialProfile::exponential(1.0);
    const HexPoint t(2.0, 0.0);
    c.relative("psi/negative-psi-region t=" + pt(t), ft_via_spline(e1, t), radial_ft(e1, INFINITY, t), 1e-6);
  });
  c.guarded("psi/zero", [&] {
    c.close("psi/zero-profile", ft_via_spline(RadialProfile::zero(), HexPoint(0.3, 0.9)), 0.0, 0.0);
  });
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"dirichlet", "ekernel", "cesaro", "radial",
                                                 "spline",    "j",       "psi",    "all"};
  return names;
}

VerifyTally run_verify(const VerifyOptions& opts, std::ostream& out) {
  const auto& names = verify_suite_names();
  if (std::find(names.begin(), names.end(), opts.suite) == names.end()) {
    throw UsageError("unknown suite '" + opts.suite + "'");
  }
  if (!(opts.delta > 0.0) || !std::isfinite(opts.delta)) throw UsageError("--delta must be > 0");
  Checker c(out);
  Sampler rng(opts.seed);
  const bool all = opts.suite == "all";
  if (all || opts.suite == "dirichlet") suite_dirichlet(c, rng);
  if (all || opts.suite == "ekernel") suite_ekernel(c, rng);
  if (all || opts.suite == "cesaro") suite_cesaro(c, rng, opts.delta);
  if (all || opts.suite == "radial") suite_radial(c, rng);
  if (all || opts.suite == "spline") suite_spline(c, rng);
  if (all || opts.suite == "j") suite_j(c, rng);
  if (all || opts.suite == "psi") suite_psi(c, rng);
  const auto t = c.tally();
  out << "suite=" << opts.suite << " checks=" << t.checks << " failures=" << t.failures << '\n';
  return t;
}

}  // namespace hexfourier::cli
