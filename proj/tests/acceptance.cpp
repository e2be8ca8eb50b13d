// Acceptance gate: end-to-end checks of the simulator against its contracts.
// Each criterion prints one [PASS]/[FAIL] line; the exit code is the number
// of failures. Tolerances are pinned here, not shared with the library.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "openrcd/experiment.hpp"
#include "openrcd/io.hpp"
#include "openrcd/metrics.hpp"
#include "support/oracles.hpp"
#include "support/states.hpp"

using namespace openrcd;
using openrcd::testing::draw_state;
using openrcd::testing::projected_gradient_opt;
using openrcd::testing::reg_bound_direct;

namespace {

const ClassParams kHeadlineCls{1.0, 10.0};
constexpr double kHeadlineP = 1.0 / 1.0125;  // one replacement per 81 events

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;  // keep the first failure
    ok = false;
  }
};

// ---------------------------------------------------------------------------
// 1. A million mixed events never leave the feasible set.

Check feasibility_over_long_horizon() {
  Check c;
  EventStreamConfig cfg;
  cfg.n = 5;
  cfg.p = kHeadlineP;
  cfg.mode = ReplacementMode::RR;
  cfg.cls = kHeadlineCls;
  cfg.seed = 1001;
  const RcdConfig rcd{StepRule::TwoBeta, cfg.cls};
  TrajectoryRunner runner(cfg, rcd);

  const std::int64_t horizon = 1000000;
  std::int64_t replacements = 0;
  try {
    runner.run(horizon, [&](const StepRecord& rec, const AllocationState& s) {
      double sum = 0.0;
      for (const double xi : s.x) {
        if (!(xi >= 0.0)) {
          c.fail("negative share at t = " + std::to_string(rec.event.t));
        }
        sum += xi;
      }
      if (std::abs(sum - 5.0) > 1e-9 * 5.0) {
        c.fail("budget drift " + std::to_string(sum - 5.0) + " at t = " +
               std::to_string(rec.event.t));
      }
      replacements += rec.event.is_update() ? 0 : 1;
    });
  } catch (const std::exception& e) {
    c.fail(std::string("trajectory aborted: ") + e.what());
  }
  if (c.ok && replacements < 10000) {
    c.fail("replacement channel silent: only " +
           std::to_string(replacements) + " arrivals");
  }
  if (c.ok) {
    c.detail = std::to_string(horizon) + " events, " +
               std::to_string(replacements) + " replacements, state feasible";
  }
  return c;
}

// ---------------------------------------------------------------------------
// 2. The dual-bisection optimum matches projected gradient everywhere.

Check optimum_against_projected_gradient() {
  Check c;
  int instances = 0;
  double worst = 0.0;
  std::uint64_t seed = 2001;
  for (int rep = 0; rep < 20 && c.ok; ++rep) {
    for (int n = 2; n <= 6 && c.ok; ++n) {
      const ReplacementMode mode =
          rep % 2 == 0 ? ReplacementMode::RR : ReplacementMode::AR;
      const AllocationState s = draw_state(n, mode, kHeadlineCls, seed++);
      const StrategyPoint opt = optimal_point(s);
      const std::vector<double> ref = projected_gradient_opt(s);
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(opt.x[i] - ref[i]));
      }
      if (worst > 1e-6) {
        c.fail("solvers disagree by " + std::to_string(worst) + " on n = " +
               std::to_string(n));
      }
      ++instances;
    }
  }

  // analytic two-agent fixture: phi = (1/2, 5) splits 2 units as (20, 2)/11
  AllocationState frozen;
  frozen.funcs = {CostFunction::quadratic(0.5, kHeadlineCls),
                  CostFunction::quadratic(5.0, kHeadlineCls)};
  frozen.x = {1.0, 1.0};
  const StrategyPoint opt = optimal_point(frozen);
  if (std::abs(opt.x[0] - 20.0 / 11.0) > 1e-10 ||
      std::abs(opt.x[1] - 2.0 / 11.0) > 1e-10) {
    c.fail("two-agent analytic optimum missed");
  }
  if (std::abs(opt.value - 20.0 / 11.0) > 1e-12 * (20.0 / 11.0)) {
    c.fail("two-agent analytic value missed");
  }
  if (c.ok) {
    std::ostringstream os;
    os << instances << " instances, max deviation " << worst;
    c.detail = os.str();
  }
  return c;
}

// ---------------------------------------------------------------------------
// 3. Averaging one exchange over every pair contracts the gap by gamma.

Check exhaustive_pair_contraction() {
  Check c;
  double worst_margin = -1e300;
  for (int n = 3; n <= 5 && c.ok; ++n) {
    const double gamma = contraction_factor(n, kHeadlineCls.kappa());
    for (int rep = 0; rep < 50 && c.ok; ++rep) {
      const AllocationState base = draw_state(
          n, ReplacementMode::RR, kHeadlineCls, 3001 + 100 * n + rep);
      const StrategyPoint opt = optimal_point(base);
      const double gap = suboptimality(base, opt);
      const RcdConfig rcd{StepRule::TwoBeta, kHeadlineCls};

      double total = 0.0;
      int pairs = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          AllocationState next = base;
          rcd_update(next, i, j, rcd);
          total += suboptimality(next, opt);
          ++pairs;
        }
      }
      const double margin = total / pairs - gamma * gap;
      worst_margin = std::max(worst_margin, margin);
      if (margin > 1e-9) {
        c.fail("pair average exceeded gamma C by " + std::to_string(margin) +
               " at n = " + std::to_string(n));
      }
    }
  }
  if (c.ok) {
    std::ostringstream os;
    os << "150 states, worst margin " << worst_margin;
    c.detail = os.str();
  }
  return c;
}

// ---------------------------------------------------------------------------
// 4. Without churn the gap collapses: C_T <= 1e-6 C_0 after 10^4 updates.

Check closed_system_decay() {
  Check c;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    EventStreamConfig cfg;
    cfg.n = 3;
    cfg.p = 1.0;
    cfg.mode = ReplacementMode::RR;
    cfg.cls = ClassParams{1.0, 2.0};
    cfg.seed = derive_seed(4001, trial);
    const RcdConfig rcd{StepRule::TwoBeta, cfg.cls};
    TrajectoryRunner runner(cfg, rcd);
    const double c0 = runner.initial_gap();
    if (c0 <= 1e-12) continue;  // degenerate draw: already optimal

    StepRecord last;
    runner.run(10000, [&last](const StepRecord& rec, const AllocationState&) {
      last = rec;
    });
    const double ratio = last.c / c0;
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 1e-6) {
      c.fail("trial " + std::to_string(trial) + " kept C_T / C_0 = " +
             std::to_string(ratio));
    }
  }
  if (c.ok) {
    std::ostringstream os;
    os << "50 closed runs, worst C_T / C_0 = " << worst_ratio;
    c.detail = os.str();
  }
  return c;
}

// ---------------------------------------------------------------------------
// 5. Measured replacement impact stays within its ceilings.

Check replacement_impact_ceilings() {
  Check c;
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.alpha = 1.0;
  cfg.beta = 10.0;
  cfg.p = kHeadlineP;
  cfg.master_seed = 5001;

  cfg.mode = ReplacementMode::RR;
  const ImpactStudyResult general = replacement_impact_study(cfg, 10000);
  if (general.mean > 23.5 + 5.0 * general.std_error) {
    c.fail("general-mode impact " + std::to_string(general.mean) +
           " above 23.5");
  }

  cfg.mode = ReplacementMode::QuadraticUniform;
  const ImpactStudyResult quad = replacement_impact_study(cfg, 10000);
  if (quad.mean > 10.98 + 5.0 * quad.std_error) {
    c.fail("quadratic-mode impact " + std::to_string(quad.mean) +
           " above 10.98");
  }
  if (c.ok) {
    std::ostringstream os;
    os << "mean jumps " << general.mean << " <= 23.5, " << quad.mean
       << " <= 10.98";
    c.detail = os.str();
  }
  return c;
}

// ---------------------------------------------------------------------------
// 6. Monte Carlo metric curves respect the closed-form ceilings.

Check monte_carlo_bound_validation() {
  Check c;
  struct ModeCase {
    ReplacementMode mode;
    double reg_rate_ceiling;
  };
  const ModeCase cases[] = {
      {ReplacementMode::AR, 11.75},
      {ReplacementMode::RR, 11.75},
      {ReplacementMode::QuadraticUniform, 5.49},
  };
  double worst_pot_margin = -1e300;
  double worst_reg_margin = -1e300;
  for (const ModeCase& mc : cases) {
    ExperimentConfig cfg;
    cfg.n = 5;
    cfg.alpha = 1.0;
    cfg.kappa = 10.0;
    cfg.rho_r = 0.0125;
    cfg.horizon = 10000;
    cfg.trials = 200;
    cfg.master_seed = 6001;
    cfg.mode = mc.mode;
    cfg.workers = 4;
    const AggregateResult result = run_experiment(cfg);
    for (const CheckpointStats& st : result.checkpoints) {
      const double pot_margin =
          st.mean_pot_rate - (22.5 + 3.0 * st.se_pot_rate);
      const double reg_margin =
          st.mean_reg_rate - (mc.reg_rate_ceiling + 3.0 * st.se_reg_rate);
      worst_pot_margin = std::max(worst_pot_margin, pot_margin);
      worst_reg_margin = std::max(worst_reg_margin, reg_margin);
      if (pot_margin > 0.0) {
        c.fail(std::string("potential rate above 22.5 for mode ") +
               to_string(mc.mode) + " at T = " + std::to_string(st.t));
      }
      if (reg_margin > 0.0) {
        c.fail(std::string("regret rate above its ceiling for mode ") +
               to_string(mc.mode) + " at T = " + std::to_string(st.t));
      }
    }
  }
  if (c.ok) {
    std::ostringstream os;
    os << "3 modes x 200 trials, worst margins: pot " << worst_pot_margin
       << ", reg " << worst_reg_margin;
    c.detail = os.str();
  }
  return c;
}

// ---------------------------------------------------------------------------
// 7. The ledger identities hold step by step along a mixed trajectory.

Check ledger_identities() {
  Check c;
  EventStreamConfig cfg;
  cfg.n = 4;
  cfg.p = 0.98;
  cfg.mode = ReplacementMode::RR;
  cfg.cls = kHeadlineCls;
  cfg.seed = 7001;
  const RcdConfig rcd{StepRule::TwoBeta, cfg.cls};
  TrajectoryRunner runner(cfg, rcd);

  MetricsLedger ledger;
  double prev_c = runner.initial_gap();
  for (int k = 0; k < 5000 && c.ok; ++k) {
    const StepRecord rec = runner.step();
    const double stitched = prev_c + rec.delta_f - rec.delta_f_star;
    const double tol = 1e-9 * std::max(1.0, std::abs(rec.f_est));
    if (std::abs(rec.c - stitched) > tol) {
      c.fail("gap recursion broke at t = " + std::to_string(rec.event.t));
    }
    const double reg_inc = rec.f_est - rec.f_opt;
    const double ben_inc = rec.f_selfish - rec.f_est;
    const double pot_inc = rec.f_selfish - rec.f_opt;
    if (std::abs(pot_inc - (ben_inc + reg_inc)) >
        1e-9 * std::max(1.0, std::abs(pot_inc))) {
      c.fail("three-way split broke at t = " + std::to_string(rec.event.t));
    }
    ledger.accumulate(rec.f_est, rec.f_opt, rec.f_selfish);
    prev_c = rec.c;
  }
  if (c.ok) {
    const double lhs = ledger.potential();
    const double rhs = ledger.benefit() + ledger.regret();
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) {
      c.fail("cumulative potential != benefit + regret");
    }
  }
  if (c.ok) c.detail = "5000 steps, gap recursion and three-way split hold";
  return c;
}

// ---------------------------------------------------------------------------
// 8. Closed-form bounds are self-consistent.

Check bound_self_consistency() {
  Check c;
  // closed form vs direct summation
  const double alphas[] = {0.5, 1.0};
  const double kappas[] = {1.0, 2.0, 10.0};
  const double ps[] = {0.25, 0.9, kHeadlineP};
  for (const double alpha : alphas) {
    for (const double kappa : kappas) {
      for (const double p : ps) {
        for (const int n : {2, 5}) {
          const BoundParams bp =
              BoundParams::make(n, alpha, alpha * kappa, p, 3.7);
          for (const double theta : {bp.theta_general, bp.theta_quad}) {
            const double closed = reg_bound_finite(bp, 1000, theta);
            const double direct = reg_bound_direct(bp, 1000, theta);
            if (std::abs(closed - direct) >
                1e-9 * std::max(1.0, std::abs(direct))) {
              c.fail("closed form drifts from direct sum");
            }
          }
        }
      }
    }
  }

  // finite-horizon rate approaches the long-run rate
  const BoundParams bp = BoundParams::make(5, 1.0, 10.0, kHeadlineP, 122.5);
  const double finite_rate =
      reg_bound_finite(bp, 1000000, bp.theta_general) / 1e6;
  const double asym = reg_bound_asymptotic(bp, false);
  if (std::abs(finite_rate - asym) > 0.01 * asym) {
    c.fail("finite rate misses the asymptote by more than 1%");
  }

  // the long-run rate is exactly rho_R theta / (1 - gamma)
  for (const double p : {0.3, 0.8, kHeadlineP}) {
    const BoundParams b2 = BoundParams::make(5, 1.0, 10.0, p, 0.0);
    const double gap = 1.0 - contraction_factor(b2);
    const double lhs = reg_bound_asymptotic(b2, false);
    const double rhs = b2.rho_r * b2.theta_general / gap;
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, rhs)) {
      c.fail("asymptotic rate identity broke");
    }
  }
  if (c.ok) {
    std::ostringstream os;
    os << "72 closed-vs-direct cases; finite rate at T = 1e6 within "
       << std::abs(finite_rate - asym) / asym * 100.0 << "% of the asymptote";
    c.detail = os.str();
  }
  return c;
}

// ---------------------------------------------------------------------------
// 9. The command line is deterministic, including across worker counts.

int call_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "openrcd");
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return openrcd::cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Check cli_determinism() {
  Check c;
  const std::string t1 = "acceptance_trace_1.csv";
  const std::string t2 = "acceptance_trace_2.csv";
  const std::vector<std::string> trace_args = {
      "trace", "--n", "5", "--kappa", "10", "--rho-r", "0.0125",
      "--t", "2000", "--seed", "17", "--out"};
  auto run_trace = [&trace_args](const std::string& out) {
    std::vector<std::string> args = trace_args;
    args.push_back(out);
    return call_cli(args);
  };
  if (run_trace(t1) != 0 || run_trace(t2) != 0) {
    c.fail("trace subcommand failed");
  } else if (slurp(t1) != slurp(t2) || slurp(t1).empty()) {
    c.fail("repeated traces differ");
  }

  const std::string r1 = "acceptance_run_w1.csv";
  const std::string r4 = "acceptance_run_w4.csv";
  auto run_run = [](const std::string& workers, const std::string& out) {
    return call_cli({"run", "--n", "5", "--kappa", "10", "--rho-r", "0.0125",
                     "--t", "1000", "--trials", "16", "--seed", "17",
                     "--workers", workers, "--out", out});
  };
  if (c.ok) {
    if (run_run("1", r1) != 0 || run_run("4", r4) != 0) {
      c.fail("run subcommand failed");
    } else if (slurp(r1) != slurp(r4) || slurp(r1).empty()) {
      c.fail("worker count changed the aggregate output");
    } else if (slurp(r1 + ".summary.csv") != slurp(r4 + ".summary.csv")) {
      c.fail("worker count changed the summary output");
    }
  }
  for (const std::string& p : {t1, t2}) {
    std::remove(p.c_str());
    std::remove((p + ".manifest").c_str());
  }
  for (const std::string& p : {r1, r4}) {
    std::remove(p.c_str());
    std::remove((p + ".summary.csv").c_str());
    std::remove((p + ".manifest").c_str());
  }
  if (c.ok) c.detail = "trace replay and 1-vs-4-worker runs byte-identical";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> fn;
  };
  const Criterion criteria[] = {
      {"feasibility over 1e6 mixed events", feasibility_over_long_horizon},
      {"optimum matches projected gradient", optimum_against_projected_gradient},
      {"exhaustive pair average contracts by gamma",
       exhaustive_pair_contraction},
      {"closed-system gap collapse", closed_system_decay},
      {"replacement impact within ceilings", replacement_impact_ceilings},
      {"Monte Carlo curves under closed-form bounds",
       monte_carlo_bound_validation},
      {"ledger identities along a mixed trajectory", ledger_identities},
      {"closed-form bound self-consistency", bound_self_consistency},
      {"deterministic command line across workers", cli_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criterion.fn();
    } catch (const std::exception& e) {
      result.fail(std::string("unexpected exception: ") + e.what());
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::printf("[%s] %-45s (%lld ms)%s%s\n", result.ok ? "PASS" : "FAIL",
                criterion.name, static_cast<long long>(elapsed),
                result.detail.empty() ? "" : " - ", result.detail.c_str());
    failures += result.ok ? 0 : 1;
  }
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures;
}
