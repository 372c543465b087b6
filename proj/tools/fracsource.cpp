// fracsource: forward and inverse solver for the two-snapshot fractional source problem.
//
// Exit codes: 0 success, 1 invariant failure, 2 input or configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracsource/catalog.hpp"
#include "fracsource/errors.hpp"
#include "fracsource/forward.hpp"
#include "fracsource/inverse.hpp"
#include "fracsource/io.hpp"
#include "fracsource/mittag_leffler.hpp"
#include "fracsource/verify.hpp"

namespace fs = std::filesystem;
using namespace fracsource;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitInput = 2;
constexpr double kMinTime = 1e-6;

// Every setting that can come from a flag or the config file, keyed by flag name.
const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {"alpha", "gamma", "tm",   "t-final", "modes", "tol",
                                                "input", "outdir", "times", "grid",   "plot",  "c",
                                                "beta",  "rho",   "x",     "source", "trace", "level"};
  return keys;
}

const std::map<std::string, std::string>& default_settings() {
  static const std::map<std::string, std::string> d = {
      {"alpha", "0.5"}, {"gamma", "0.5"}, {"tm", "0.3"},  {"t-final", "1"}, {"modes", "20"}, {"tol", "1e-11"},
      {"input", ""},    {"outdir", "out"}, {"times", ""}, {"grid", "101"},  {"plot", "false"}, {"c", "2"},
      {"beta", "1"},    {"rho", "1"},     {"x", "-1"},   {"source", ""},   {"trace", ""},    {"level", "quick"}};
  return d;
}

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;  // resolved, every key present
  std::vector<std::string> warnings;

  const std::string& str(const std::string& key) const { return values.at(key); }

  double real(const std::string& key) const {
    const std::string& s = str(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InputError("--" + key + " expects a number, got '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw InputError("--" + key + " expects a finite number, got '" + s + "'");
    return v;
  }

  int integer(const std::string& key) const {
    const double v = real(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw InputError("--" + key + " expects an integer");
    return static_cast<int>(v);
  }

  bool flag(const std::string& key) const {
    const std::string& s = str(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no" || s.empty()) return false;
    throw InputError("--" + key + " expects true or false");
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      RunConfig tmp;
      tmp.values[key] = item;
      out.push_back(tmp.real(key));
    }
    return out;
  }

  FractionalOrders orders() const {
    FractionalOrders o{real("alpha"), real("gamma")};
    o.validate();
    return o;
  }

  TimePair times() const {
    TimePair t{real("tm"), real("t-final")};
    t.validate();
    return t;
  }

  int modes() const {
    const int n = integer("modes");
    if (n < 1) throw InputError("--modes must be >= 1");
    return n;
  }

  std::vector<double> x_grid() const {
    const int m = integer("grid");
    if (m < 2) throw InputError("--grid must be >= 2");
    std::vector<double> xs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (m - 1);
    xs.back() = 1.0;
    return xs;
  }

  // Requested output times, clamped to t >= kMinTime.
  std::vector<double> t_list(const std::vector<double>& fallback) {
    std::vector<double> ts = str("times").empty() ? fallback : reals("times");
    if (ts.empty()) throw InputError("--times is empty");
    for (double& t : ts) {
      if (t < kMinTime) {
        warnings.push_back("time " + format_real(t) + " clamped to " + format_real(kMinTime));
        t = kMinTime;
      }
    }
    return ts;
  }

  AnalyzeOptions analyze_options() const {
    AnalyzeOptions a;
    a.quad_tol = real("tol");
    if (!(a.quad_tol > 0.0)) throw InputError("--tol must be positive");
    return a;
  }

  fs::path outdir() const { return fs::path(str("outdir")); }

  void header(Report& r) const {
    r.comment("fracsource " + command);
    r.add("command", command);
    for (const auto& key : setting_keys()) r.add("config." + key, str(key));
  }
};

void ensure_outdir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.outdir(), ec);
  if (ec) throw InputError("cannot create output directory '" + cfg.str("outdir") + "': " + ec.message());
}

std::string to_text(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& name, const std::function<void(std::ostream&)>& writer) {
  write_file((cfg.outdir() / name).string(), to_text(writer));
}

// Finishes a report: warnings, invariant verdict, stdout copy and optional file.
int finish(const RunConfig& cfg, Report& r, bool invariants_ok, const std::string& file = {}) {
  for (std::size_t i = 0; i < cfg.warnings.size(); ++i) r.add("warning." + std::to_string(i), cfg.warnings[i]);
  r.add("invariants", std::string(invariants_ok ? "pass" : "fail"));
  const std::string text = to_text([&](std::ostream& os) { r.write(os); });
  std::cout << text;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
  if (!file.empty()) write_file((cfg.outdir() / file).string(), text);
  return invariants_ok ? kExitOk : kExitInvariant;
}

SolutionGrid solution_grid(const SolutionField& field, const std::vector<double>& xs, const std::vector<double>& ts) {
  SolutionGrid g;
  g.x = xs;
  g.t = ts;
  for (double t : ts) g.u.push_back(evaluate_u_grid(field, xs, t));
  return g;
}

std::vector<double> sample(const SeriesField& field, const std::vector<double>& xs) {
  std::vector<double> v;
  v.reserve(xs.size());
  for (double x : xs) v.push_back(synthesize(field, x));
  return v;
}

void emit_plot_script(const RunConfig& cfg, const std::string& stem, const std::vector<double>& ts, bool has_source) {
  if (!cfg.flag("plot")) return;
  emit(cfg, stem + ".gp", [&](std::ostream& os) {
    os << "set xlabel 'x'\nset key outside\n";
    if (has_source) os << "set term pngcairo size 900,600\nset output '" << stem << "_f.png'\nplot '" << stem
                       << "_f.dat' using 1:2 with lines title 'f(x)'\n";
    os << "set term pngcairo size 900,600\nset output '" << stem << "_u.png'\nplot ";
    for (std::size_t j = 0; j < ts.size(); ++j) {
      os << (j ? ", " : "") << "'" << stem << "_u.dat' using 1:($2==" << format_real(ts[j])
         << " ? $3 : 1/0) with lines title 't=" << ts[j] << "'";
    }
    os << '\n';
  });
}

void add_diagnostics(Report& r, const HypothesisReport& d) {
  const auto& names = HypothesisReport::residual_names();
  for (std::size_t i = 0; i < names.size(); ++i) r.add(std::string("diag.") + names[i], d.boundary_residuals[i]);
  r.add("diag.coef_decay_exponent", d.coef_decay_exponent);
  r.add("diag.z_decay_exponent", d.z_decay_exponent);
  r.add("diag.h_decay_exponent", d.h_decay_exponent);
  r.add("diag.ingestion_error", d.ingestion_error);
  const auto w = d.warnings();
  for (std::size_t i = 0; i < w.size(); ++i) r.add("diag.warning." + std::to_string(i), w[i]);
}

// Max |u(x, t) - Pi_N g(x)| over the grid for both snapshots.
double snapshot_error(const ReconstructionResult& rec, const TimePair& times, const std::vector<double>& xs) {
  double worst = 0.0;
  const std::vector<double> uz = evaluate_u_grid(rec.solution, xs, times.Tm);
  const std::vector<double> uh = evaluate_u_grid(rec.solution, xs, times.T);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(uz[i] - synthesize(rec.z_coefficients, xs[i])));
    worst = std::max(worst, std::abs(uh[i] - synthesize(rec.h_coefficients, xs[i])));
  }
  return worst;
}

// Shared tail of the inverse-type commands: files, report entries, snapshot check.
int finish_reconstruction(RunConfig& cfg, Report& r, const ReconstructionResult& rec, const TimePair& times,
                          const std::string& stem, const std::vector<double>& default_ts, bool extra_ok) {
  const std::vector<double> xs = cfg.x_grid();
  const std::vector<double> ts = cfg.t_list(default_ts);
  ensure_outdir(cfg);
  emit(cfg, stem + "_f.series", [&](std::ostream& os) { write_series_field(os, rec.source); });
  emit(cfg, stem + "_f.dat", [&](std::ostream& os) { write_profile(os, xs, sample(rec.source, xs), "f"); });
  emit(cfg, stem + "_u.dat", [&](std::ostream& os) { write_solution_grid(os, solution_grid(rec.solution, xs, ts)); });
  emit_plot_script(cfg, stem, ts, true);

  add_diagnostics(r, rec.diagnostics);
  const double snap = snapshot_error(rec, times, xs);
  r.add("check.snapshot_error", snap);
  r.add("check.snapshot_threshold", 1e-9);
  double u_at_one = 0.0;
  for (double t : ts) u_at_one = std::max(u_at_one, std::abs(evaluate_u(rec.solution, 1.0, t)));
  r.add("check.u_at_x1", u_at_one);
  r.add("output.f_series", (cfg.outdir() / (stem + "_f.series")).string());
  r.add("output.f_profile", (cfg.outdir() / (stem + "_f.dat")).string());
  r.add("output.u_grid", (cfg.outdir() / (stem + "_u.dat")).string());
  return finish(cfg, r, extra_ok && snap <= 1e-9 && u_at_one == 0.0, stem + "_report.txt");
}

int cmd_ml(RunConfig& cfg) {
  const double tol = cfg.str("tol") == default_settings().at("tol") ? kDefaultMLTol : cfg.real("tol");
  const int rho = cfg.integer("rho");
  const MLResult res = ml_eval({cfg.real("alpha"), cfg.real("beta"), rho, cfg.real("x")}, tol);
  Report r;
  cfg.header(r);
  r.add("ml.tol", tol);
  r.add("ml.value", res.value);
  r.add("ml.est_abs_error", res.est_abs_error);
  r.add("ml.regime", std::string(to_string(res.regime)));
  return finish(cfg, r, res.est_abs_error <= tol);
}

int cmd_forward(RunConfig& cfg) {
  if (cfg.str("source").empty()) throw InputError("forward needs --source FILE (series field of f)");
  const FractionalOrders orders = cfg.orders();
  const TimePair times = cfg.times();
  std::istringstream fs_in(read_file(cfg.str("source")));
  const SeriesField source = read_series_field(fs_in);
  SeriesField trace = SeriesField::zeros(source.N());
  if (!cfg.str("trace").empty()) {
    std::istringstream ts_in(read_file(cfg.str("trace")));
    trace = read_series_field(ts_in);
    if (trace.N() != source.N()) throw InputError("--source and --trace differ in N");
  }
  const SolutionField field = SolutionField::from_coefficients(orders, times, source, trace);
  const std::vector<double> xs = cfg.x_grid();
  const std::vector<double> ts = cfg.t_list({times.Tm, times.T});
  ensure_outdir(cfg);
  emit(cfg, "forward_u.dat", [&](std::ostream& os) { write_solution_grid(os, solution_grid(field, xs, ts)); });
  emit(cfg, "forward_z.series", [&](std::ostream& os) { write_series_field(os, snapshot(field, times.Tm)); });
  emit(cfg, "forward_h.series", [&](std::ostream& os) { write_series_field(os, snapshot(field, times.T)); });
  emit(cfg, "forward_measurements.dat", [&](std::ostream& os) {
    MeasurementTable table;
    const int m = std::max(cfg.integer("grid"), static_cast<int>(kMinTablePoints));
    for (int i = 0; i < m; ++i) table.x.push_back(static_cast<double>(i) / (m - 1));
    table.z = evaluate_u_grid(field, table.x, times.Tm);
    table.h = evaluate_u_grid(field, table.x, times.T);
    write_measurement_table(os, table);
  });
  emit_plot_script(cfg, "forward", ts, false);
  Report r;
  cfg.header(r);
  r.add("forward.N", source.N());
  double flux = 0.0;
  for (double t : ts) flux = std::max(flux, std::abs(flux_mismatch(field, t)));
  r.add("check.flux_mismatch", flux);
  r.add("output.u_grid", (cfg.outdir() / "forward_u.dat").string());
  r.add("output.measurements", (cfg.outdir() / "forward_measurements.dat").string());
  return finish(cfg, r, flux <= 1e-5 * std::max(1.0, source.l1_norm() + trace.l1_norm()), "forward_report.txt");
}

int cmd_inverse(RunConfig& cfg) {
  if (cfg.str("input").empty()) throw InputError("inverse needs --input FILE (# x z h table)");
  const FractionalOrders orders = cfg.orders();
  const TimePair times = cfg.times();
  std::istringstream in(read_file(cfg.str("input")));
  const MeasurementPair m = measurement_from_table(read_measurement_table(in), times);
  const ReconstructionResult rec = reconstruct(m, orders, cfg.modes(), cfg.analyze_options());
  Report r;
  cfg.header(r);
  return finish_reconstruction(cfg, r, rec, times, "inverse", {times.Tm, times.T}, true);
}

int cmd_example1(RunConfig& cfg) {
  const FractionalOrders orders = cfg.orders();
  const TimePair times = cfg.times();
  const double c = cfg.real("c");
  if (!(c > 0.0)) throw InputError("--c must be positive");
  const ReconstructionResult rec = reconstruct(example1_pair(c, times), orders, cfg.modes(), cfg.analyze_options());
  const ModeCoefficients ref = example1_closed_form(c, orders, times);
  const ModeCoefficients got = rec.solution.mode({1, 0}).coefs;
  double others = 0.0;
  for (std::size_t i = 1; i < rec.solution.modes.size(); ++i)
    others = std::max({others, std::abs(rec.solution.modes[i].coefs.f), std::abs(rec.solution.modes[i].coefs.c)});
  const double err = std::max({std::abs(got.f - ref.f), std::abs(got.c - ref.c), others});
  Report r;
  cfg.header(r);
  r.add("example1.f10", got.f);
  r.add("example1.c10", got.c);
  r.add("example1.f10_closed_form", ref.f);
  r.add("example1.c10_closed_form", ref.c);
  r.add("example1.f_sup_norm", 2.0 * std::abs(got.f));
  r.add("check.closed_form_error", err);
  r.add("check.closed_form_threshold", 1e-10);
  return finish_reconstruction(cfg, r, rec, times, "example1", {times.Tm, times.T}, err <= 1e-10);
}

int cmd_example2(RunConfig& cfg) {
  const FractionalOrders orders = cfg.orders();
  const TimePair times = cfg.times();
  const ReconstructionResult rec = reconstruct(example2_pair(times), orders, cfg.modes(), cfg.analyze_options());
  Report r;
  cfg.header(r);
  double flux = 0.0;
  for (double t : cfg.t_list({0.2, 0.3, 0.6, 1.0})) flux = std::max(flux, std::abs(flux_mismatch(rec.solution, t)));
  r.add("check.flux_mismatch", flux);
  r.add("check.flux_threshold", 1e-5);
  cfg.warnings.clear();  // t_list runs again below
  return finish_reconstruction(cfg, r, rec, times, "example2", {0.2, 0.3, 0.6, 1.0}, flux <= 1e-5);
}

int cmd_verify(RunConfig& cfg) {
  const std::string& level = cfg.str("level");
  if (level != "quick" && level != "full") throw InputError("--level must be quick or full");
  const VerifyReport report = run_verify(level == "full" ? VerifyLevel::full : VerifyLevel::quick);
  report.write(std::cout);
  return report.passed() ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse solver for a fractional diffusion source problem"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> options;
  auto add = [&](CLI::App* where, const std::string& key, const std::string& help) {
    options[key] = where->add_option("--" + key, flags[key], help + " (default " + default_settings().at(key) + ")");
  };
  add(&app, "alpha", "order alpha, 0 < alpha <= gamma");
  add(&app, "gamma", "order gamma, alpha <= gamma <= 1");
  add(&app, "tm", "first measurement time Tm");
  add(&app, "t-final", "final measurement time T > Tm");
  add(&app, "modes", "truncation order N");
  add(&app, "tol", "quadrature tolerance; ml: Mittag-Leffler tolerance (1e-13 unless given)");
  add(&app, "input", "measurement table with header '# x z h'");
  add(&app, "outdir", "output directory");
  add(&app, "times", "comma-separated output times");
  add(&app, "grid", "number of x grid points");
  add(&app, "plot", "also write a gnuplot script (true/false)");
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags override it");

  CLI::App* ml = app.add_subcommand("ml", "evaluate E^rho_{alpha,beta}(x)");
  add(ml, "beta", "beta");
  add(ml, "rho", "rho, 1 or 2");
  add(ml, "x", "argument");
  CLI::App* forward = app.add_subcommand("forward", "solution u(x,t) from source and trace series files");
  add(forward, "source", "series file of the source f");
  add(forward, "trace", "series file of the initial trace (default zero)");
  CLI::App* inverse = app.add_subcommand("inverse", "reconstruct f and u from a measurement table");
  CLI::App* ex1 = app.add_subcommand("example1", "linear pair z = 2(1-x), h = 2c(1-x)");
  add(ex1, "c", "ratio c > 0");
  CLI::App* ex2 = app.add_subcommand("example2", "cubic/quartic pair, N = 20");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add(verify, "level", "quick or full");
  (void)inverse;
  (void)ex2;

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.values = default_settings();
    if (!config_path.empty()) {
      std::istringstream in(read_file(config_path));
      for (const auto& [key, value] : read_key_values(in)) {
        if (!cfg.values.count(key)) throw InputError("unknown config key '" + key + "'");
        cfg.values[key] = value;
      }
    }
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) cfg.values[key] = flags[key];
    }
    if (cfg.command == "ml") return cmd_ml(cfg);
    if (cfg.command == "forward") return cmd_forward(cfg);
    if (cfg.command == "inverse") return cmd_inverse(cfg);
    if (cfg.command == "example1") return cmd_example1(cfg);
    if (cfg.command == "example2") return cmd_example2(cfg);
    return cmd_verify(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IndexError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
