#include "cli.hpp"

#include <CLI11.hpp>
#include <climits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "openrcd/io.hpp"
#include "openrcd/version.hpp"

namespace openrcd::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text);

template <>
double parse_number<double>(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw config_error("config field " + key + ": not a number: " + text);
  }
  if (pos != text.size() || !std::isfinite(v)) {
    throw config_error("config field " + key + ": not a number: " + text);
  }
  return v;
}

template <>
std::int64_t parse_number<std::int64_t>(const std::string& key,
                                        const std::string& text) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw config_error("config field " + key + ": not an integer: " + text);
  }
  if (pos != text.size()) {
    throw config_error("config field " + key + ": not an integer: " + text);
  }
  return v;
}

template <>
int parse_number<int>(const std::string& key, const std::string& text) {
  const std::int64_t v = parse_number<std::int64_t>(key, text);
  if (v < INT_MIN || v > INT_MAX) {
    throw config_error("config field " + key + ": out of range: " + text);
  }
  return static_cast<int>(v);
}

template <>
std::uint64_t parse_number<std::uint64_t>(const std::string& key,
                                          const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw config_error("config field " + key + ": not an integer: " + text);
  }
  if (pos != text.size()) {
    throw config_error("config field " + key + ": not an integer: " + text);
  }
  return v;
}

}  // namespace

RawOptions parse_config_stream(std::istream& is) {
  RawOptions opts;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected key = value");
    }

    if (key == "n") {
      opts.n = parse_number<int>(key, value);
    } else if (key == "alpha") {
      opts.alpha = parse_number<double>(key, value);
    } else if (key == "beta") {
      opts.beta = parse_number<double>(key, value);
    } else if (key == "kappa") {
      opts.kappa = parse_number<double>(key, value);
    } else if (key == "p") {
      opts.p = parse_number<double>(key, value);
    } else if (key == "rho-r") {
      opts.rho_r = parse_number<double>(key, value);
    } else if (key == "t") {
      opts.t = parse_number<std::int64_t>(key, value);
    } else if (key == "trials") {
      opts.trials = parse_number<int>(key, value);
    } else if (key == "workers") {
      opts.workers = parse_number<int>(key, value);
    } else if (key == "seed") {
      opts.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "mode") {
      opts.mode = value;
    } else if (key == "step") {
      opts.step = value;
    } else if (key == "out") {
      opts.out = value;
    } else {
      throw config_error("config field " + key + ": unknown key");
    }
  }
  return opts;
}

RawOptions parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("config file: cannot read " + path);
  return parse_config_stream(is);
}

ExperimentConfig resolve_config(const RawOptions& file,
                                const RawOptions& flags) {
  ExperimentConfig cfg;
  cfg.kappa = 10.0;     // headline conditioning unless overridden
  cfg.rho_r = 0.0125;   // one replacement per 81 events unless overridden

  if (file.n) cfg.n = *file.n;
  if (flags.n) cfg.n = *flags.n;
  if (file.alpha) cfg.alpha = *file.alpha;
  if (flags.alpha) cfg.alpha = *flags.alpha;

  if (file.beta && file.kappa) {
    throw config_error("config field beta/kappa: mutually exclusive");
  }
  if (flags.beta && flags.kappa) {
    throw config_error("config field beta/kappa: mutually exclusive");
  }
  if (file.beta || file.kappa) {
    cfg.beta = file.beta;
    cfg.kappa = file.kappa;
  }
  if (flags.beta || flags.kappa) {
    cfg.beta = flags.beta;
    cfg.kappa = flags.kappa;
  }

  if (file.p && file.rho_r) {
    throw config_error("config field p/rho-r: mutually exclusive");
  }
  if (flags.p && flags.rho_r) {
    throw config_error("config field p/rho-r: mutually exclusive");
  }
  if (file.p || file.rho_r) {
    cfg.p = file.p;
    cfg.rho_r = file.rho_r;
  }
  if (flags.p || flags.rho_r) {
    cfg.p = flags.p;
    cfg.rho_r = flags.rho_r;
  }

  if (file.t) cfg.horizon = *file.t;
  if (flags.t) cfg.horizon = *flags.t;
  if (file.trials) cfg.trials = *file.trials;
  if (flags.trials) cfg.trials = *flags.trials;
  if (file.workers) cfg.workers = *file.workers;
  if (flags.workers) cfg.workers = *flags.workers;
  if (file.seed) cfg.master_seed = *file.seed;
  if (flags.seed) cfg.master_seed = *flags.seed;
  if (file.out) cfg.out = *file.out;
  if (flags.out) cfg.out = *flags.out;

  const std::optional<std::string>& mode = flags.mode ? flags.mode : file.mode;
  if (mode && !parse_replacement_mode(*mode, cfg.mode)) {
    throw config_error("config field mode: expected rr, ar or "
                       "quadratic-uniform, got " + *mode);
  }
  const std::optional<std::string>& step = flags.step ? flags.step : file.step;
  if (step && !parse_step_rule(*step, cfg.step)) {
    throw config_error("config field step: expected two-beta or beta, got " +
                       *step);
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  return cfg;
}

namespace {

void register_common(CLI::App* cmd, RawOptions& opts, std::string& config_path) {
  cmd->add_option("--config", config_path, "flat key = value config file");
  cmd->add_option("--n", opts.n, "number of agents (>= 2)");
  cmd->add_option("--alpha", opts.alpha, "strong convexity floor");
  cmd->add_option("--beta", opts.beta, "smoothness ceiling (excludes --kappa)");
  cmd->add_option("--kappa", opts.kappa,
                  "condition number beta/alpha (excludes --beta)");
  cmd->add_option("--p", opts.p, "update probability (excludes --rho-r)");
  cmd->add_option("--rho-r", opts.rho_r,
                  "replacement/update rate ratio (excludes --p)");
  cmd->add_option("--t", opts.t, "horizon: events per trajectory");
  cmd->add_option("--trials", opts.trials, "Monte Carlo trials");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--mode", opts.mode,
                  "replacement mode: rr | ar | quadratic-uniform");
  cmd->add_option("--step", opts.step, "step rule: two-beta | beta");
  cmd->add_option("--workers", opts.workers, "trial worker threads");
  cmd->add_option("--out", opts.out, "output path stem");
}

ExperimentConfig build_config(const RawOptions& flags,
                              const std::string& config_path) {
  const RawOptions file =
      config_path.empty() ? RawOptions{} : parse_config_file(config_path);
  return resolve_config(file, flags);
}

int cmd_run(ExperimentConfig cfg) {
  if (cfg.out.empty()) cfg.out = "openrcd_run.csv";
  const AggregateResult result = run_experiment(cfg);
  const CheckpointStats& last = result.checkpoints.back();
  std::cout << "run: " << cfg.trials << " trials, horizon " << cfg.horizon
            << ", mode " << to_string(cfg.mode) << "\n"
            << "  final reg/T  " << format_full(last.mean_reg_rate)
            << "  (bound " << format_full(last.bound_reg_rate_finite) << ")\n"
            << "  final pot/T  " << format_full(last.mean_pot_rate)
            << "  (bound " << format_full(last.bound_pot_rate) << ")\n"
            << "  wrote " << cfg.out << ", " << cfg.out << ".summary.csv, "
            << cfg.out << ".manifest\n";
  if (result.any_flagged()) {
    std::cerr << "warning: empirical mean exceeded a bound by more than 3 "
                 "standard errors\n";
    return 2;
  }
  return 0;
}

int cmd_trace(ExperimentConfig cfg) {
  if (cfg.out.empty()) cfg.out = "openrcd_trace.csv";
  const Trajectory tr = single_realization_trace(cfg);
  write_file(cfg.out, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
  write_file(cfg.out + ".manifest",
             [&](std::ostream& os) { write_manifest(os, cfg); });
  std::int64_t replacements = 0;
  for (const StepRecord& rec : tr.steps) {
    if (!rec.event.is_update()) ++replacements;
  }
  std::cout << "trace: " << tr.horizon << " events, " << replacements
            << " replacements, wrote " << cfg.out << "\n";
  return 0;
}

int cmd_bounds(const ExperimentConfig& cfg, const std::string& out) {
  const double beta = cfg.resolved_beta();
  const double prob = cfg.resolved_p();
  BoundParams bp = BoundParams::make(cfg.n, cfg.alpha, beta, prob, 0.0);
  bp = BoundParams::make(cfg.n, cfg.alpha, beta, prob, worst_case_c0(bp));

  std::ostringstream table;
  table << "quantity,value\n";
  const auto row = [&table](const char* name, double v) {
    table << name << ',' << format_full(v) << '\n';
  };
  table << "n," << bp.n << '\n';
  row("alpha", bp.alpha);
  row("beta", bp.beta);
  row("kappa", bp.kappa);
  row("p", bp.p);
  row("rho_r", bp.rho_r);
  row("gamma", contraction_factor(bp));
  row("eta", bp.eta);
  row("m_f", bp.m_f);
  row("theta_general", bp.theta_general);
  row("theta_quad", bp.theta_quad);
  row("pot_rate_bound", pot_bound_rate(bp));
  row("reg_rate_asymptotic_general", reg_bound_asymptotic(bp, false));
  row("reg_rate_asymptotic_quadratic", reg_bound_asymptotic(bp, true));
  row("crude_gap_bound", crude_gap_bound(bp));
  row("c0_worst_case", bp.c0);
  table << "horizon," << cfg.horizon << '\n';
  row("pot_bound_at_horizon", pot_bound(bp, cfg.horizon));
  if (bp.p > 0.0) {
    row("reg_bound_finite_general_at_horizon",
        reg_bound_finite(bp, cfg.horizon, bp.theta_general));
    row("reg_bound_finite_quadratic_at_horizon",
        reg_bound_finite(bp, cfg.horizon, bp.theta_quad));
  }

  std::cout << table.str();
  if (!out.empty()) {
    write_file(out, [&](std::ostream& os) { os << table.str(); });
  }
  return 0;
}

int cmd_selftest(const ExperimentConfig& cfg) {
  const ClassParams cls{cfg.alpha, cfg.resolved_beta()};
  const double reach = 2.0 * cfg.n;  // shares never exceed the budget n
  int failures = 0;
  const auto report = [&failures](bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  const ReplacementMode modes[] = {ReplacementMode::RR, ReplacementMode::AR,
                                   ReplacementMode::QuadraticUniform};
  for (const ReplacementMode mode : modes) {
    ReplacementDistribution dist(mode, cls, derive_seed(cfg.master_seed, 11));
    bool in_class = true;
    bool inverse_ok = true;
    for (int k = 0; k < 1000; ++k) {
      const CostFunction f = dist.sample();
      in_class = in_class && verify_class(f, 201, reach);
      for (int g = 0; g <= 20; ++g) {
        const double x = reach * g / 20.0;
        const double back = f.derivative_inverse(f.derivative(x));
        if (std::abs(back - x) > 1e-10 * std::max(1.0, x)) inverse_ok = false;
      }
    }
    report(in_class, std::string("class certificates hold for 1000 draws, mode ") +
                         to_string(mode));
    report(inverse_ok, std::string("derivative_inverse round-trip, mode ") +
                           to_string(mode));
  }

  {
    ReplacementDistribution a(ReplacementMode::RR, cls, 99);
    ReplacementDistribution b(ReplacementMode::RR, cls, 99);
    bool identical = true;
    for (int k = 0; k < 100; ++k) {
      if (serialize_function(a.sample()) != serialize_function(b.sample())) {
        identical = false;
      }
    }
    report(identical, "equal seeds reproduce identical function sequences");
  }

  {
    const double v[] = {3.0, -1.0};
    const std::vector<double> proj = project_simplex(v);
    report(std::abs(proj[0] - 2.0) < 1e-12 && std::abs(proj[1]) < 1e-12,
           "simplex projection clips to the active face");
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"event-driven simulator for distributed resource allocation "
               "under agent churn"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RawOptions run_opts, trace_opts, bounds_opts, selftest_opts;
  std::string run_cfg, trace_cfg, bounds_cfg, selftest_cfg;

  CLI::App* run = app.add_subcommand(
      "run", "Monte Carlo experiment: metric curves vs bounds");
  register_common(run, run_opts, run_cfg);
  CLI::App* trace = app.add_subcommand(
      "trace", "single realization, full per-event dump");
  register_common(trace, trace_opts, trace_cfg);
  CLI::App* bounds = app.add_subcommand("bounds", "closed-form bound table");
  register_common(bounds, bounds_opts, bounds_cfg);
  CLI::App* selftest = app.add_subcommand(
      "selftest", "function-class and determinism self-checks");
  register_common(selftest, selftest_opts, selftest_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse failure
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(build_config(run_opts, run_cfg));
    if (trace->parsed()) return cmd_trace(build_config(trace_opts, trace_cfg));
    if (bounds->parsed()) {
      const ExperimentConfig cfg = build_config(bounds_opts, bounds_cfg);
      return cmd_bounds(cfg, bounds_opts.out.value_or(""));
    }
    if (selftest->parsed()) {
      return cmd_selftest(build_config(selftest_opts, selftest_cfg));
    }
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace openrcd::cli
