// eqlab: command-line driver for the Eisenstein-series experiments.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqlab/eqlab.hpp"
#include "eqlab/io.hpp"
#include "selftest.hpp"

#ifndef EQLAB_DEFAULT_GOLDEN_DIR
#define EQLAB_DEFAULT_GOLDEN_DIR "tests/data"
#endif

namespace {

using namespace eqlab;
using nlohmann::json;

enum Exit { kOk = 0, kInvariant = 1, kConfig = 2, kAccuracy = 3 };

struct RunConfig {
  std::string command;
  std::vector<double> T;
  std::vector<double> alpha{4.0};
  double delta = 0.019;
  std::vector<double> window;
  std::string output_path;
  std::string format = "json";
  unsigned threads = 1;
  std::string golden_path;
  // command specific
  std::vector<double> y;
  std::int64_t points = 0;
  std::int64_t grid = 0;
  double center = 2.0;
  double width = 0.5;
  std::string route = "both";
  double Y = 1e4;
  double P = 4.0;
  std::int64_t M = 8;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_single_T(const RunConfig& c) {
  if (c.T.size() != 1) throw DomainError("--T takes exactly one value for this command");
}

std::pair<double, double> window_or(const RunConfig& c, double a, double b) {
  if (c.window.empty()) return {a, b};
  if (c.window.size() != 2 || !(c.window[0] < c.window[1])) throw DomainError("--window expects a,b with a < b");
  return {c.window[0], c.window[1]};
}

int cmd_eval(const RunConfig& c) {
  require_single_T(c);
  const auto [a, b] = window_or(c, 0.9, 3.4);
  eisen::SeriesOptions o;
  o.y_lo = a;
  o.y_hi = b;
  o.threads = c.threads;
  const auto s = eisen::build_series(c.T[0], o);
  std::vector<double> ys = c.y;
  if (ys.empty()) {
    const std::int64_t n = c.points > 0 ? c.points : 11;
    for (std::int64_t i = 0; i < n; ++i) ys.push_back(n == 1 ? a : a + (b - a) * i / static_cast<double>(n - 1));
  }
  Output out(c.output_path);
  if (c.format == "csv") {
    out.os() << "y,value,abs_error_bound\n";
    for (double y : ys) io::write_csv_row(out.os(), {io::fmt17(y), io::fmt17(s(y)), io::fmt17(s.abs_error_bound(y))});
  } else {
    json vals = json::array();
    for (double y : ys) vals.push_back({{"y", y}, {"value", s(y)}, {"abs_error_bound", s.abs_error_bound(y)}});
    out.os() << json{{"T", s.T}, {"n_max", s.n_max}, {"tail_bound", s.tail_bound}, {"values", vals}}.dump(2) << '\n';
  }
  return kOk;
}

int cmd_signchanges(const RunConfig& c) {
  require_single_T(c);
  const auto [a, b] = window_or(c, 1.0, 3.0);
  eisen::SeriesOptions o;
  o.y_lo = std::min(0.9, a);
  o.y_hi = std::max(3.4, b);
  o.threads = c.threads;
  const auto s = eisen::build_series(c.T[0], o);
  eisen::SignChangeOptions so;
  so.grid_points = c.grid;
  so.threads = c.threads;
  const auto rep = eisen::count_sign_changes(s, a, b, so);
  // Grid stability: the count must survive doubling the grid.
  so.grid_points = 2 * rep.grid_points;
  const auto twice = eisen::count_sign_changes(s, a, b, so);
  Output out(c.output_path);
  auto j = io::to_json(twice.count == rep.count ? rep : twice);
  j["grid_stable"] = twice.count == rep.count;
  if (c.format == "csv") {
    out.os() << "T,a,b,count,grid_points,min_gap,grid_stable\n";
    io::write_csv_row(out.os(), {io::fmt17(rep.T), io::fmt17(a), io::fmt17(b), std::to_string(j["count"].get<std::int64_t>()),
                                 std::to_string(j["grid_points"].get<std::int64_t>()),
                                 io::fmt17(j["min_gap"].get<double>()), twice.count == rep.count ? "true" : "false"});
  } else {
    out.os() << j.dump(2) << '\n';
  }
  return kOk;
}

int cmd_correlation(const RunConfig& c) {
  if (c.T.empty()) throw DomainError("--T is required");
  if (c.route != "both" && c.route != "direct") throw DomainError("--route must be 'both' or 'direct'");
  const auto psi = testfn::make_bump(c.center, c.width);
  std::vector<corr::CorrelationReport> rows;
  bool gap_ok = true;
  for (double T : c.T) {
    eisen::SeriesOptions o;
    o.threads = c.threads;
    double amax = 0.0;
    for (double al : c.alpha) amax = std::max(amax, std::abs(al));
    o.y_lo = std::min(0.9, psi.lo() / (1.0 + amax / T) - 0.01);
    o.y_hi = std::max(3.4, psi.hi() * (1.0 + amax / T) + 0.01);
    const auto s = eisen::build_series(T, o);
    corr::FGrid grid;
    if (c.route == "both")
      grid = corr::compute_F_grid(s, psi, corr::default_t_step(psi), corr::default_t_max(T, psi), c.threads);
    for (double al : c.alpha) {
      corr::CorrelationReport r;
      if (c.route == "both") {
        r = corr::correlation_report(s, al, psi, &grid, c.threads);
        gap_ok = gap_ok && r.route_gap <= 1e-6 * std::max(1.0, std::abs(r.I_direct));
      } else {
        const auto d = corr::correlation_direct(s, al, psi);
        r.T = T;
        r.alpha = al;
        r.psi = psi;
        r.l1_sq = testfn::psi_norms(psi).l1_sq;
        r.I_direct = d.value;
        r.direct_error = d.abs_error;
        r.I_parseval = std::nan("");
        r.main_term = corr::main_term(T, al, r.l1_sq);
        r.deviation = r.I_direct - r.main_term;
        r.route_gap = std::nan("");
      }
      rows.push_back(r);
    }
  }
  Output out(c.output_path);
  if (c.format == "csv" || rows.size() > 1) {
    if (c.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(io::to_json(r));
      out.os() << arr.dump(2) << '\n';
    } else {
      io::write_csv(out.os(), rows);
    }
  } else {
    out.os() << io::to_json(rows.front()).dump(2) << '\n';
  }
  if (!gap_ok) {
    std::cerr << "eqlab: route gap exceeds 1e-6 relative\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_windows(const RunConfig& c) {
  require_single_T(c);
  if (c.alpha.size() != 1) throw DomainError("--alpha takes exactly one value for this command");
  const double T = c.T[0], alpha = c.alpha[0];
  if (!(T >= 100.0)) throw DomainError("windows: T must be >= 100");
  if (!(c.delta >= 0.0 && c.delta < 1.0 / 51.0)) throw DomainError("--delta must lie in [0, 1/51)");
  auto o = experiment::windows_series_options(T, c.delta, alpha);
  o.threads = c.threads;
  const auto s = eisen::build_series(T, o);
  const auto rows = experiment::run_windows(s, c.delta, alpha, c.threads);
  Output out(c.output_path);
  if (c.format == "csv") {
    io::write_csv(out.os(), rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(io::to_json(r));
    out.os() << json{{"T", T}, {"delta", c.delta}, {"alpha", alpha}, {"windows", arr}}.dump(2) << '\n';
  }
  for (const auto& r : rows)
    if (r.negative && !r.signchange_found) {
      std::cerr << "eqlab: window " << r.j << " has I < 0 but no located sign change\n";
      return kInvariant;
    }
  return kOk;
}

int cmd_scs(const RunConfig& c) {
  require_single_T(c);
  if (c.M < 1) throw DomainError("--M must be >= 1");
  std::vector<std::int64_t> ms;
  for (std::int64_t m = 1; m <= c.M; ++m) {
    ms.push_back(m);
    ms.push_back(-m);
  }
  const auto sw = scs::scs_sweep(c.T[0], c.Y, c.P, ms, c.threads);
  Output out(c.output_path);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : sw.rows) arr.push_back(io::to_json(r));
    out.os() << json{{"rows", arr}, {"total_error", sw.total_error}, {"summed_bound", sw.summed_bound}}.dump(2)
             << '\n';
  } else {
    io::write_csv(out.os(), sw.rows);
  }
  return kOk;
}

int cmd_selftest(const RunConfig& c) {
  const std::string dir = golden::resolve_dir(c.golden_path, EQLAB_DEFAULT_GOLDEN_DIR);
  std::vector<cli::SuiteResult> results;
  try {
    results = cli::run_selftest(dir);
  } catch (const golden::MissingDataError& e) {
    std::cerr << "eqlab: missing golden data: " << e.what() << '\n';
    return kConfig;
  }
  bool all = true;
  Output out(c.output_path);
  for (const auto& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
    out.os() << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << buf << " s)";
    if (!r.passed) out.os() << ": " << r.detail;
    out.os() << '\n';
    all = all && r.passed;
  }
  return all ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments with the Eisenstein series E*_T(iy)"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.output_path, "Output file (default stdout)");
  app.add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--golden", c.golden_path, std::string("Golden data directory (else $") + golden::kEnvVar + ")");
  app.fallthrough();

  auto add_T = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--T", c.T, "Spectral parameter(s)")->delimiter(',');
    if (required) opt->required();
  };
  auto* eval = app.add_subcommand("eval", "Evaluate E*_T(iy)");
  add_T(eval);
  eval->add_option("--y", c.y, "Points y")->delimiter(',');
  eval->add_option("--points", c.points, "Number of equispaced points in the window");
  eval->add_option("--window", c.window, "Series window a,b")->delimiter(',');

  auto* sc = app.add_subcommand("signchanges", "Count sign changes of E*_T(iy)");
  add_T(sc);
  sc->add_option("--window", c.window, "Interval a,b (default 1,3)")->delimiter(',');
  sc->add_option("--grid", c.grid, "Grid points (default max(4096, 64 T (b-a)))");

  auto* co = app.add_subcommand("correlation", "Correlation integral by both routes");
  add_T(co);
  co->add_option("--alpha", c.alpha, "Shift(s) alpha")->delimiter(',');
  co->add_option("--center", c.center, "Bump center");
  co->add_option("--width", c.width, "Bump width");
  co->add_option("--route", c.route, "both | direct");

  auto* wi = app.add_subcommand("windows", "Negative-correlation windows psi_{T,j}");
  add_T(wi);
  wi->add_option("--delta", c.delta, "Window exponent delta");
  wi->add_option("--alpha", c.alpha, "Shift alpha (default 4)")->delimiter(',');

  auto* ss = app.add_subcommand("scs", "Shifted divisor sums against the main term");
  add_T(ss);
  ss->add_option("--Y", c.Y, "Support scale");
  ss->add_option("--P", c.P, "Derivative scale of the weight");
  ss->add_option("--M", c.M, "Largest |m|");

  auto* st = app.add_subcommand("selftest", "Run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (eval->parsed()) return cmd_eval(c);
    if (sc->parsed()) return cmd_signchanges(c);
    if (co->parsed()) return cmd_correlation(c);
    if (wi->parsed()) return cmd_windows(c);
    if (ss->parsed()) return cmd_scs(c);
    if (st->parsed()) return cmd_selftest(c);
  } catch (const AccuracyError& e) {
    std::cerr << "eqlab: accuracy failure: " << e.what() << '\n';
    return kAccuracy;
  } catch (const golden::MissingDataError& e) {
    std::cerr << "eqlab: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "eqlab: configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const CapacityError& e) {
    std::cerr << "eqlab: configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "eqlab: " << e.what() << '\n';
    return kInvariant;
  }
  return kConfig;
}
