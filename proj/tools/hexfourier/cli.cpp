#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "format.hpp"
#include "hexfourier/error.hpp"
#include "hexfourier/kernels.hpp"
#include "hexfourier/radial.hpp"
#include "hexfourier/summability.hpp"
#include "verify.hpp"

namespace hexfourier::cli {
namespace {

// Output stream: the named file, or the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary = false) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

struct KernelArgs {
  std::string type;
  std::optional<double> rho;
  std::optional<double> R;
  double delta = 2.0;
  std::string grid;
  std::string point;
  std::string out;
};

struct FigureArgs {
  std::string name;
  std::string grid = "-6:6:301";
  std::string out;
};

struct ExperimentArgs {
  std::string name;
  double a = 1.0;
  double delta = 2.0;
  std::string R;
  std::vector<std::string> points;
  std::string atoms;
  std::string grid = "-5:5:101";
  double tol = 1e-3;
  std::string out;
};

std::vector<GridNode> nodes_for(const std::string& grid, const std::string& point) {
  if (grid.empty() == point.empty()) throw UsageError("give exactly one of --grid or --point");
  if (!grid.empty()) return grid_nodes(parse_grid(grid));
  const CartesianPoint x = parse_point(point);
  return {GridNode{x, hex_from_cartesian(x)}};
}

int cmd_kernel(const KernelArgs& a, std::ostream& out) {
  std::function<KernelEval(const HexPoint&)> eval;
  if (a.type == "dirichlet" || a.type == "e") {
    if (!a.rho) throw UsageError("--type " + a.type + " requires --rho");
    if (!(*a.rho > 0.0)) throw UsageError("--rho must be > 0");
    const double rho = *a.rho;
    if (a.type == "dirichlet") {
      eval = [rho](const HexPoint& t) { return dirichlet(rho, t); };
    } else {
      eval = [rho](const HexPoint& t) { return e_kernel(rho, t); };
    }
  } else {
    if (!a.R) throw UsageError("--type cesaro requires --R");
    if (!(*a.R > 0.0)) throw UsageError("--R must be > 0");
    if (!(a.delta > 0.0)) throw UsageError("--delta must be > 0");
    const double R = *a.R;
    const double delta = a.delta;
    eval = [R, delta](const HexPoint& t) { return cesaro_kernel(R, delta, t); };
  }
  const auto nodes = nodes_for(a.grid, a.point);
  std::vector<KernelEval> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = eval(nodes[i].t);

  Sink sink(a.out, out);
  std::ostream& os = *sink;
  os << "x1,x2,t1,t2,t3,value,method,err_est\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    os << fmt(n.x.x1) << ',' << fmt(n.x.x2) << ',' << fmt(n.t.t1()) << ',' << fmt(n.t.t2()) << ','
       << fmt(n.t.t3()) << ',' << fmt(values[i].value) << ',' << to_string(values[i].method) << ','
       << fmt(values[i].error_estimate) << '\n';
  }
  return kOk;
}

int cmd_figure(const FigureArgs& a, std::ostream& out) {
  const GridSpec grid = parse_grid(a.grid);
  const auto nodes = grid_nodes(grid);
  std::vector<double> values(nodes.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    try {
      values[i] = a.name == "spider" ? j_closed(nodes[i].t) : m_spline(1.0, nodes[i].t);
    } catch (const BoundaryBandError&) {
      values[i] = nan;
    } catch (const DegenerateKnotsError&) {
      values[i] = nan;
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t undefined = 0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      ++undefined;
      continue;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (undefined == values.size()) lo = hi = 0.0;

  const std::string stem = a.out.empty() ? a.name : a.out;
  {
    Sink csv(stem + ".csv", out);
    *csv << "x1,x2,t1,t2,t3,value\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      *csv << fmt(n.x.x1) << ',' << fmt(n.x.x2) << ',' << fmt(n.t.t1()) << ',' << fmt(n.t.t2()) << ','
           << fmt(n.t.t3()) << ',' << fmt(values[i]) << '\n';
    }
  }
  {
    Sink pgm(stem + ".pgm", out, true);
    write_pgm(*pgm, grid, values, lo, hi);
  }
  {
    Sink txt(stem + ".txt", out);
    *txt << "figure=" << a.name << "\ngrid=" << a.grid << "\nmin=" << fmt(lo) << "\nmax=" << fmt(hi)
         << "\nundefined=" << undefined << "\nscale=linear min->0 max->255, undefined->0\n";
  }
  out << "wrote " << stem << ".pgm " << stem << ".csv " << stem << ".txt min=" << fmt(lo)
      << " max=" << fmt(hi) << " undefined=" << undefined << '\n';
  return kOk;
}

DiscreteMeasure parse_atoms(const std::string& text) {
  DiscreteMeasure m;
  if (text.empty()) return m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("atoms must be u:w,u:w,...");
    const auto u = parse_list(item.substr(0, colon));
    const auto w = parse_list(item.substr(colon + 1));
    if (u.size() != 1 || w.size() != 1) throw UsageError("atoms must be u:w,u:w,...");
    if (!(u[0] >= 0.0) || !(w[0] >= 0.0)) throw UsageError("atoms need u >= 0 and w >= 0");
    m.atoms.push_back({u[0], w[0]});
  }
  return m;
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  if (a.name == "convergence") {
    if (a.R.empty()) throw UsageError("experiment convergence requires --R");
    const auto Rs = parse_list(a.R);
    for (double R : Rs) {
      if (!(R > 0.0)) throw UsageError("--R values must be > 0");
    }
    if (!(a.a > 0.0)) throw UsageError("--a must be > 0");
    if (!(a.delta >= 0.0)) throw UsageError("--delta must be >= 0");
    std::vector<HexPoint> points;
    for (const auto& p : a.points) {
      const auto v = parse_list(p);
      if (v.size() != 2) throw UsageError("--t takes t1,t2");
      points.emplace_back(v[0], v[1]);
    }
    if (points.empty()) points.emplace_back();
    const auto rows = convergence_experiment(a.a, a.delta, Rs, points);

    Sink sink(a.out, out);
    std::ostream& os = *sink;
    os << "R,delta,t1,t2,t3,mean,target,abs_err\n";
    for (const auto& r : rows) {
      os << fmt(r.R) << ',' << fmt(r.delta) << ',' << fmt(r.point.t1()) << ',' << fmt(r.point.t2()) << ','
         << fmt(r.point.t3()) << ',' << fmt(r.mean) << ',' << fmt(r.target) << ',' << fmt(r.abs_error) << '\n';
    }
    // Monotone along R for every point, in the order given.
    bool monotone = true;
    for (std::size_t p = 0; p < points.size(); ++p) {
      for (std::size_t k = 1; k < Rs.size(); ++k) {
        monotone = monotone && rows[k * points.size() + p].abs_error < rows[(k - 1) * points.size() + p].abs_error;
      }
    }
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_error);
    os << "# rows=" << rows.size() << " max_abs_err=" << fmt(worst)
       << " strictly_decreasing=" << (monotone ? "true" : "false") << '\n';
    return kOk;
  }

  const DiscreteMeasure alpha = parse_atoms(a.atoms);
  if (!(a.tol >= 0.0)) throw UsageError("--tol must be >= 0");
  const GridSpec grid = parse_grid(a.grid);
  const auto nodes = grid_nodes(grid);
  const auto values = pd_field(alpha, grid);
  const auto rep = summarize_field(grid, values, a.tol);

  Sink sink(a.out, out);
  std::ostream& os = *sink;
  os << "t1,t2,t3,phi_value\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& t = nodes[i].t;
    os << fmt(t.t1()) << ',' << fmt(t.t2()) << ',' << fmt(t.t3()) << ',' << fmt(values[i]) << '\n';
  }
  os << "# points=" << nodes.size() << " min=" << fmt(rep.min_value) << " violations=" << rep.violations
     << " skipped=" << rep.skipped << " tol=" << fmt(rep.tol) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier summability kernels on the hexagonal domain", "hexfourier"};
  app.require_subcommand(1);

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Evaluate D_rho, E_rho or D_R^delta as CSV");
  kernel->add_option("--type", ka.type, "dirichlet | e | cesaro")
      ->required()
      ->check(CLI::IsMember({"dirichlet", "e", "cesaro"}));
  kernel->add_option("--rho", ka.rho, "Radius for dirichlet and e");
  kernel->add_option("--R", ka.R, "Radius for cesaro");
  kernel->add_option("--delta", ka.delta, "Cesaro order (default 2)");
  kernel->add_option("--grid", ka.grid, "Cartesian grid lo:hi:n on both axes");
  kernel->add_option("--point", ka.point, "Single Cartesian point x1,x2");
  kernel->add_option("--out", ka.out, "Output file (default stdout)");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run oracle verification suites");
  verify->add_option("--suite", vo.suite, "dirichlet | ekernel | cesaro | radial | spline | j | psi | all")
      ->check(CLI::IsMember(verify_suite_names()));
  verify->add_option("--seed", vo.seed, "Random seed (default 42)");
  verify->add_option("--delta", vo.delta, "Cesaro order for the cesaro suite (default 2)");

  FigureArgs fa;
  auto* figure = app.add_subcommand("figure", "Heatmap of the spider function or M(1|.)");
  figure->add_option("--name", fa.name, "spider | spline")->required()->check(CLI::IsMember({"spider", "spline"}));
  figure->add_option("--grid", fa.grid, "Cartesian grid lo:hi:n (default -6:6:301)");
  figure->add_option("--out", fa.out, "Output stem; writes .pgm, .csv and .txt (default: the name)");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Convergence table or positive-definiteness field");
  experiment->add_option("--name", ea.name, "convergence | pdcheck")
      ->required()
      ->check(CLI::IsMember({"convergence", "pdcheck"}));
  experiment->add_option("--a", ea.a, "Decay parameter a of exp(-(2a/3)rho) (default 1)");
  experiment->add_option("--delta", ea.delta, "Riesz order (default 2)");
  experiment->add_option("--R", ea.R, "Comma-separated radii");
  experiment->add_option("--t", ea.points, "Evaluation point t1,t2 (repeatable; default origin)");
  experiment->add_option("--atoms", ea.atoms, "Measure atoms u:w,u:w,...");
  experiment->add_option("--grid", ea.grid, "Cartesian grid lo:hi:n (default -5:5:101)");
  experiment->add_option("--tol", ea.tol, "Violation tolerance (default 1e-3)");
  experiment->add_option("--out", ea.out, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(ka, out);
    if (figure->parsed()) return cmd_figure(fa, out);
    if (experiment->parsed()) return cmd_experiment(ea, out);
    const auto tally = run_verify(vo, out);
    return tally.failures == 0 ? kOk : kVerifyFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace hexfourier::cli
