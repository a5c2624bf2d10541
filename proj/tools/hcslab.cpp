// Command line front end: parameter sweeps, figure data, Wigner grids,
// heralding simulations, and the closed-form validation report.
//
// Exit codes: 0 success, 2 parameter error, 3 numerical error, 4 herald failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcslab/figures.hpp"
#include "hcslab/io.hpp"
#include "hcslab/kerr.hpp"
#include "hcslab/metrics.hpp"
#include "hcslab/validation.hpp"
#include "hcslab/version.hpp"

namespace {

using namespace hcslab;

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitHerald = 4;

// ---- shared option bundles ----------------------------------------------------

struct StateFlags {
  std::vector<double> epsilons{};
  std::string theta = "0";
  std::string phi = "0";
  std::string alpha = "0,0";
  std::string alpha_mag{};
  std::string alpha_arg = "0";
  int cutoff = 0;  // <= 0: automatic
  bool lenient = false;

  void attach(CLI::App* cmd, bool multi_eps) {
    auto* eps = cmd->add_option("--epsilon", epsilons,
                                "superposition weight(s) in [0,1]; repeat for extra columns")
                    ->required();
    if (!multi_eps) eps->expected(1);
    cmd->add_option("--theta", theta, "coherent-branch phase (radians or pi form)");
    cmd->add_option("--phi", phi, "photon-added-branch phase (radians or pi form)");
    cmd->add_option("--alpha", alpha, "coherent amplitude as re,im");
    cmd->add_option("--alpha-mag", alpha_mag, "coherent amplitude magnitude (alternative form)");
    cmd->add_option("--alpha-arg", alpha_arg, "coherent amplitude argument (with --alpha-mag)");
    cmd->add_option("--cutoff", cutoff, "Fock cutoff override (default: automatic)");
    cmd->add_flag("--lenient", lenient,
                  "warn instead of erroring when the cutoff leaves a non-negligible tail");
  }

  Complex alpha_value() const {
    if (!alpha_mag.empty()) {
      const double mag = io::parse_complex(alpha_mag).real();
      if (mag < 0.0) throw std::invalid_argument("--alpha-mag must be >= 0");
      return std::polar(mag, io::parse_angle(alpha_arg));
    }
    return io::parse_complex(alpha);
  }

  HcsParams params(double eps) const {
    HcsParams p;
    p.epsilon = eps;
    p.theta = io::parse_angle(theta);
    p.phi = io::parse_angle(phi);
    p.alpha = alpha_value();
    return p;
  }
};

struct SweepFlags {
  std::string variable{};
  std::string from{};
  std::string to{};
  int steps = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sweep", variable, "sweep variable: alpha-mag, epsilon, theta or phi");
    cmd->add_option("--from", from, "sweep start");
    cmd->add_option("--to", to, "sweep end");
    cmd->add_option("--steps", steps, "number of sweep points (>= 2)");
  }
  bool active() const { return !variable.empty(); }
};

struct OutputFlags {
  std::string output{};
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--output", output, "output file path");
    cmd->add_option("--format", format, "output format: csv, json or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
  }
};

struct MetricState {
  HcsParams params;
  MomentSet m;
};

MetricState evaluate_state(const StateFlags& flags, const HcsParams& p) {
  const TailPolicy policy = flags.lenient ? TailPolicy::Lenient : TailPolicy::Strict;
  const int cutoff = flags.cutoff > 0 ? flags.cutoff : auto_cutoff(p);
  FockVector state = build_hcs_fock(p, cutoff, policy);
  if (flags.lenient) {
    const double tail = tail_mass(state);
    if (tail > kTailTol)
      std::cerr << "warning: cutoff " << cutoff << " leaves tail mass " << tail
                << "; results are approximate\n";
    state = normalized_copy(state);
  }
  return {p, moments(state, policy)};
}

void emit_table(const io::CsvTable& table, const OutputFlags& out,
                const std::function<std::string()>& svg) {
  std::string body;
  if (out.format == "csv")
    body = io::render_csv(table);
  else if (out.format == "json")
    body = io::render_json(table);
  else {
    if (out.output.empty())
      throw std::invalid_argument("--format svg requires --output");
    body = svg();
  }
  if (out.output.empty())
    std::cout << body;
  else
    io::write_text_file(out.output, body);
}

void print_value(double v) { std::printf("%.6f\n", v); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

void append_state_meta(io::CsvTable& t, const StateFlags& flags) {
  t.metadata.emplace_back("theta", io::format_number(io::parse_angle(flags.theta)));
  t.metadata.emplace_back("phi", io::format_number(io::parse_angle(flags.phi)));
  const Complex a = flags.alpha_value();
  t.metadata.emplace_back("alpha", io::format_number(a.real()) + "," + io::format_number(a.imag()));
  t.metadata.emplace_back(
      "cutoff", flags.cutoff > 0 ? std::to_string(flags.cutoff)
                                 : "auto (poisson tail 1e-12, guarded margin)");
}

// ---- metric commands -----------------------------------------------------------

// Shared driver for mandel / skew / quad-squeeze / as-squeeze.
int run_metric(const std::string& name, const StateFlags& state, const SweepFlags& sweep,
               const OutputFlags& out, const std::function<double(const MetricState&)>& metric) {
  if (!sweep.active()) {
    if (state.epsilons.size() != 1)
      throw std::invalid_argument(name + ": exactly one --epsilon expected without --sweep");
    const double value = metric(evaluate_state(state, state.params(state.epsilons.front())));
    print_value(value);
    if (!out.output.empty()) {
      io::CsvTable t;
      t.metadata.emplace_back("command", name);
      t.metadata.emplace_back("epsilon", io::format_number(state.epsilons.front()));
      append_state_meta(t, state);
      t.columns = {name};
      t.rows = {{value}};
      emit_table(t, out, [] { return std::string(); });
    }
    return kExitOk;
  }

  if (sweep.steps < 2) throw std::invalid_argument("--steps must be >= 2");
  const bool angle_sweep = sweep.variable == "theta" || sweep.variable == "phi";
  const double lo = angle_sweep ? io::parse_angle(sweep.from) : std::stod(sweep.from);
  const double hi = angle_sweep ? io::parse_angle(sweep.to) : std::stod(sweep.to);
  const std::vector<double> xs = linspace(lo, hi, sweep.steps);

  io::CsvTable t;
  t.metadata.emplace_back("command", name);
  t.metadata.emplace_back("sweep", sweep.variable);
  append_state_meta(t, state);
  t.columns = {sweep.variable};

  if (sweep.variable == "epsilon") {
    t.columns.push_back(name);
    for (double x : xs) {
      const double value = metric(evaluate_state(state, state.params(x)));
      t.rows.push_back({x, value});
    }
  } else if (sweep.variable == "alpha-mag" || angle_sweep) {
    for (double eps : state.epsilons) {
      char col[48];
      std::snprintf(col, sizeof col, "%s[eps=%.2f]", name.c_str(), eps);
      t.columns.push_back(col);
    }
    for (double x : xs) {
      std::vector<double> row{x};
      for (double eps : state.epsilons) {
        HcsParams p = state.params(eps);
        if (sweep.variable == "alpha-mag")
          p.alpha = std::polar(x, io::parse_angle(state.alpha_arg));
        else if (sweep.variable == "theta")
          p.theta = x;
        else
          p.phi = x;
        row.push_back(metric(evaluate_state(state, p)));
      }
      t.rows.push_back(std::move(row));
    }
  } else {
    throw std::invalid_argument("unknown sweep variable: " + sweep.variable);
  }

  emit_table(t, out, [&] {
    std::vector<io::Series> series;
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
      io::Series s;
      s.label = t.columns[c];
      for (const auto& row : t.rows) s.y.push_back(row[c]);
      series.push_back(std::move(s));
    }
    std::vector<double> x;
    for (const auto& row : t.rows) x.push_back(row[0]);
    return io::svg_line_plot(name, sweep.variable, name, x, series);
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid coherent states: construction, nonclassicality metrics, Wigner "
               "functions and cross-Kerr heralding"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.set_config("--config", "", "flat key=value config file mirroring the flags");
  app.require_subcommand(1);

  // photon-dist
  auto* dist_cmd = app.add_subcommand("photon-dist", "photon number distribution P_n");
  StateFlags dist_state;
  OutputFlags dist_out;
  int n_max = 20;
  dist_state.attach(dist_cmd, /*multi_eps=*/true);
  dist_cmd->add_option("--n-max", n_max, "highest photon number to tabulate");
  dist_out.attach(dist_cmd);

  // scalar metric commands
  struct MetricCmd {
    CLI::App* cmd;
    StateFlags state;
    SweepFlags sweep;
    OutputFlags out;
  };
  const auto make_metric_cmd = [&](const char* name, const char* desc) {
    MetricCmd mc;
    mc.cmd = app.add_subcommand(name, desc);
    mc.state.attach(mc.cmd, /*multi_eps=*/true);
    mc.sweep.attach(mc.cmd);
    mc.out.attach(mc.cmd);
    return mc;
  };
  MetricCmd mandel_cmd = make_metric_cmd("mandel", "Mandel Q factor");
  MetricCmd skew_cmd = make_metric_cmd("skew", "Wigner-Yanase skew information");
  MetricCmd quad_cmd = make_metric_cmd("quad-squeeze", "quadrature squeezing parameter");
  std::string phi_quad = "0";
  int scan_angles = 0;
  quad_cmd.cmd->add_option("--phi-quad", phi_quad, "quadrature angle (radians or pi form)");
  quad_cmd.cmd->add_option("--scan", scan_angles,
                           "scan this many angles in [0, pi) and report the minimum");
  MetricCmd ass_cmd = make_metric_cmd("as-squeeze", "amplitude-squared squeezing factor S_ass");

  // wigner
  auto* wig_cmd = app.add_subcommand("wigner", "Wigner function point or grid");
  StateFlags wig_state;
  OutputFlags wig_out;
  std::string point{};
  std::string method = "closed";
  double half_width = 4.0;
  int nx = kDefaultGridPoints, np = kDefaultGridPoints;
  std::vector<double> explicit_bounds;
  wig_state.attach(wig_cmd, /*multi_eps=*/false);
  wig_cmd->add_option("--point", point, "evaluate at a single phase-space point re,im");
  wig_cmd->add_option("--method", method, "closed or oracle")
      ->check(CLI::IsMember({"closed", "oracle"}));
  wig_cmd->add_option("--half-width", half_width, "grid half width around alpha");
  wig_cmd->add_option("--nx", nx, "grid points along x");
  wig_cmd->add_option("--np", np, "grid points along p");
  wig_cmd->add_option("--bounds", explicit_bounds, "explicit bounds x_min x_max p_min p_max")
      ->expected(4);
  wig_out.attach(wig_cmd);

  // kerr-sim
  auto* kerr_cmd = app.add_subcommand("kerr-sim", "cross-Kerr heralding simulation");
  OutputFlags kerr_out;
  std::string kerr_alpha = "1,0";
  std::string theta_ps = "-pi/2";
  double phi0 = 0.01;
  int kerr_cutoff = 0;
  std::string evolution = "exact";
  std::optional<double> t_single;
  double t_from = 0.0, t_to = 1.0;
  int t_steps = 0;
  bool include_crossing = false;
  bool with_wigner = false;
  int wigner_points = 81;
  kerr_cmd->add_option("--alpha", kerr_alpha, "signal coherent amplitude re,im");
  kerr_cmd->add_option("--phi0", phi0, "Kerr cross-phase per photon pair");
  kerr_cmd->add_option("--theta-ps", theta_ps, "phase-shifter angle (radians or pi form)");
  kerr_cmd->add_option("--cutoff", kerr_cutoff, "signal cutoff override");
  kerr_cmd->add_option("--evolution", evolution, "exact or first-order")
      ->check(CLI::IsMember({"exact", "first-order"}));
  kerr_cmd->add_option("--t", t_single, "single VBS transmissivity in [0,1]");
  kerr_cmd->add_option("--t-from", t_from, "sweep start transmissivity");
  kerr_cmd->add_option("--t-to", t_to, "sweep end transmissivity");
  kerr_cmd->add_option("--t-steps", t_steps, "sweep point count (>= 2)");
  kerr_cmd->add_flag("--include-crossing", include_crossing,
                     "insert t = 1/sqrt(2), where the coherent branch cancels");
  kerr_cmd->add_flag("--with-wigner", with_wigner, "also integrate Wigner negativity per row");
  kerr_cmd->add_option("--wigner-points", wigner_points, "grid points per axis for --with-wigner");
  kerr_out.attach(kerr_cmd);

  // reproduce-figures
  auto* fig_cmd = app.add_subcommand("reproduce-figures", "write the full figure-data set");
  std::string out_dir;
  fig_cmd->add_option("--out-dir", out_dir, "output directory")->required();

  // validate
  auto* val_cmd = app.add_subcommand("validate", "closed-form vs oracle discrepancy report");
  OutputFlags val_out;
  std::uint64_t seed = io::kValidationSeed;
  int draws = 200;
  io::ValidationTolerances tols;
  val_cmd->add_option("--seed", seed, "pseudo-random parameter seed");
  val_cmd->add_option("--draws", draws, "number of parameter draws");
  val_cmd->add_option("--tol-moments", tols.moments_rel, "relative tolerance for moment rows");
  val_cmd->add_option("--tol-wigner", tols.wigner_abs, "absolute tolerance for Wigner rows");
  val_cmd->add_option("--tol-photon", tols.photon_abs, "absolute tolerance for P_n rows");
  val_cmd->add_option("--tol-herald", tols.herald_infidelity,
                      "infidelity tolerance for heralded-model rows");
  val_cmd->add_option("--output", val_out.output, "report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParam;
  }

  try {
    if (app.got_subcommand(dist_cmd)) {
      if (n_max < 0) throw std::invalid_argument("--n-max must be >= 0");
      io::CsvTable t;
      t.metadata.emplace_back("command", "photon-dist");
      append_state_meta(t, dist_state);
      t.columns = {"n"};
      for (double eps : dist_state.epsilons) {
        char col[32];
        std::snprintf(col, sizeof col, "P[eps=%.2f]", eps);
        t.columns.push_back(col);
      }
      for (int n = 0; n <= n_max; ++n) {
        std::vector<double> row{double(n)};
        for (double eps : dist_state.epsilons)
          row.push_back(photon_probability(dist_state.params(eps), n));
        t.rows.push_back(std::move(row));
      }
      emit_table(t, dist_out, [&] {
        std::vector<io::Series> series;
        for (std::size_t c = 1; c < t.columns.size(); ++c) {
          io::Series s;
          s.label = t.columns[c];
          for (const auto& row : t.rows) s.y.push_back(row[c]);
          series.push_back(std::move(s));
        }
        std::vector<double> x;
        for (const auto& row : t.rows) x.push_back(row[0]);
        return io::svg_line_plot("Photon distribution", "n", "P_n", x, series);
      });
      return kExitOk;
    }

    if (app.got_subcommand(mandel_cmd.cmd))
      return run_metric("mandel", mandel_cmd.state, mandel_cmd.sweep, mandel_cmd.out,
                        [](const MetricState& s) { return mandel_q(s.m); });
    if (app.got_subcommand(skew_cmd.cmd))
      return run_metric("skew", skew_cmd.state, skew_cmd.sweep, skew_cmd.out,
                        [](const MetricState& s) { return skew_information(s.m); });
    if (app.got_subcommand(quad_cmd.cmd)) {
      if (scan_angles > 0) {
        if (quad_cmd.state.epsilons.size() != 1)
          throw std::invalid_argument("quad-squeeze --scan: exactly one --epsilon expected");
        const HcsParams p = quad_cmd.state.params(quad_cmd.state.epsilons.front());
        const QuadratureScanResult best =
            quadrature_min_scan(build_hcs_fock(p, quad_cmd.state.cutoff > 0
                                                      ? quad_cmd.state.cutoff
                                                      : auto_cutoff(p)),
                                scan_angles);
        std::printf("%.6f %.6f\n", best.angle, best.value);
        if (!quad_cmd.out.output.empty()) {
          io::CsvTable t;
          t.metadata.emplace_back("command", "quad-squeeze --scan");
          append_state_meta(t, quad_cmd.state);
          t.columns = {"angle", "value"};
          t.rows = {{best.angle, best.value}};
          emit_table(t, quad_cmd.out, [] { return std::string(); });
        }
        return kExitOk;
      }
      const double angle = io::parse_angle(phi_quad);
      return run_metric("quad-squeeze", quad_cmd.state, quad_cmd.sweep, quad_cmd.out,
                        [angle](const MetricState& s) {
                          return quadrature_squeezing(s.m, {angle});
                        });
    }
    if (app.got_subcommand(ass_cmd.cmd))
      return run_metric("as-squeeze", ass_cmd.state, ass_cmd.sweep, ass_cmd.out,
                        [](const MetricState& s) { return s_ass(s.m); });

    if (app.got_subcommand(wig_cmd)) {
      const HcsParams p = wig_state.params(wig_state.epsilons.front());
      if (!point.empty()) {
        const Complex z = io::parse_complex(point);
        double value;
        if (method == "closed") {
          value = wigner_closed(p, z);
        } else {
          const FockVector state = build_hcs_fock(p, wig_state.cutoff > 0 ? wig_state.cutoff
                                                                          : auto_cutoff(p));
          const double scale = std::sqrt(std::max(0.0, moments(state).mean_n));
          const int needed =
              std::max(static_cast<int>(std::ceil(4.0 * std::norm(z))) + 1,
                       choose_cutoff(scale + std::abs(z)));
          value = wigner_point_oracle(
              padded(state, std::max(needed, state.cutoff())), z,
              wig_state.lenient ? TailPolicy::Lenient : TailPolicy::Strict);
        }
        print_value(value);
        return kExitOk;
      }
      GridBounds bounds = explicit_bounds.size() == 4
                              ? GridBounds{explicit_bounds[0], explicit_bounds[1],
                                           explicit_bounds[2], explicit_bounds[3]}
                              : default_bounds(p.alpha, half_width);
      const WignerGrid grid =
          method == "closed"
              ? wigner_grid(p, bounds, nx, np, WignerMethod::ClosedForm)
              : wigner_grid(build_hcs_fock(p, wig_state.cutoff > 0 ? wig_state.cutoff
                                                                   : auto_cutoff(p)),
                            bounds, nx, np);
      const NegativityReport rep = negativity_report(grid);
      std::printf("min=%.6f at %.6f,%.6f neg_volume=%.6f integral=%.6f\n", rep.min_value,
                  rep.min_location.real(), rep.min_location.imag(), rep.negative_volume,
                  grid_integral(grid));
      if (!wig_out.output.empty()) {
        io::CsvTable t;
        t.metadata.emplace_back("command", "wigner");
        t.metadata.emplace_back("epsilon", io::format_number(p.epsilon));
        append_state_meta(t, wig_state);
        t.metadata.emplace_back("method", method);
        t.metadata.emplace_back("nx", std::to_string(nx));
        t.metadata.emplace_back("np", std::to_string(np));
        t.columns = {"x", "p", "W"};
        for (int ix = 0; ix < grid.nx; ++ix)
          for (int ip = 0; ip < grid.np; ++ip)
            t.rows.push_back({grid.x_at(ix), grid.p_at(ip), grid.at(ix, ip)});
        emit_table(t, wig_out, [&] { return io::svg_heatmap(grid, "Wigner function"); });
      }
      return kExitOk;
    }

    if (app.got_subcommand(kerr_cmd)) {
      KerrSchemeParams kp;
      kp.alpha = io::parse_complex(kerr_alpha);
      kp.phi0 = phi0;
      kp.theta_ps = io::parse_angle(theta_ps);
      kp.cutoff = kerr_cutoff;
      const KerrEvolution evo =
          evolution == "exact" ? KerrEvolution::Exact : KerrEvolution::FirstOrder;
      if (evo == KerrEvolution::FirstOrder && !first_order_guard_ok(kp))
        std::cerr << "warning: |phi0|(|alpha|^2+|alpha|) >= 0.1; the first-order expansion is "
                     "outside its validity range\n";
      if (t_single.has_value()) {
        kp.transmissivity = *t_single;
        const HeraldedResult res = run_kerr_scheme(kp, evo);
        std::printf("epsilon_fit=%.6f success=%.6g fidelity=%.6f\n", res.fitted.epsilon,
                    res.success_probability, res.fidelity_to_fit);
        return kExitOk;
      }
      if (t_steps < 2) throw std::invalid_argument("kerr-sim: need --t or --t-steps >= 2");
      std::vector<double> ts = linspace(t_from, t_to, t_steps);
      if (include_crossing) {
        ts.push_back(1.0 / std::sqrt(2.0));
        std::sort(ts.begin(), ts.end());
      }
      SweepOptions opts;
      opts.evolution = evo;
      opts.with_wigner = with_wigner;
      opts.wigner_points = wigner_points;
      const std::vector<SweepRow> rows = transmissivity_sweep(kp, ts, opts);
      io::CsvTable t;
      t.metadata.emplace_back("command", "kerr-sim");
      t.metadata.emplace_back("alpha", io::format_number(kp.alpha.real()) + "," +
                                           io::format_number(kp.alpha.imag()));
      t.metadata.emplace_back("phi0", io::format_number(kp.phi0));
      t.metadata.emplace_back("theta_ps", io::format_number(kp.theta_ps));
      t.metadata.emplace_back("evolution", evolution);
      t.metadata.emplace_back(
          "cutoff", kp.cutoff > 0 ? std::to_string(kp.cutoff)
                                  : "auto (poisson tail 1e-12, guarded margin)");
      t.columns = {"t",       "epsilon_fit", "success_prob", "fidelity",
                   "Q",       "S_phi0",      "S_ass",        "neg_volume"};
      for (const SweepRow& r : rows)
        t.rows.push_back({r.t, r.epsilon_fit, r.success_probability, r.fidelity, r.q, r.s_phi0,
                          r.s_ass, r.neg_volume});
      emit_table(t, kerr_out, [&] {
        throw std::invalid_argument("kerr-sim has no svg rendering; use csv or json");
        return std::string();
      });
      return kExitOk;
    }

    if (app.got_subcommand(fig_cmd)) {
      const io::FigureSet set = io::reproduce_figures(out_dir);
      std::printf("wrote %zu files under %s\n", set.written.size(), out_dir.c_str());
      if (!set.failures.empty()) {
        for (const auto& [figure, reason] : set.failures)
          std::cerr << "figure " << figure << " failed: " << reason << "\n";
        return kExitNumerical;
      }
      return kExitOk;
    }

    if (app.got_subcommand(val_cmd)) {
      const io::DiscrepancyReport report = io::run_validation(seed, draws, tols);
      const std::string body = io::render_report_csv(report);
      if (val_out.output.empty())
        std::cout << body;
      else
        io::write_text_file(val_out.output, body);
      return kExitOk;
    }
  } catch (const HeraldFailed& e) {
    std::cerr << "herald failure: " << e.what() << "\n";
    return kExitHerald;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParam;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  }
  return kExitOk;
}
