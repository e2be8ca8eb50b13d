#include "openrcd/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "openrcd/io.hpp"
#include "openrcd/metrics.hpp"

namespace openrcd {

double ExperimentConfig::resolved_beta() const {
  if (beta) return *beta;
  if (kappa) return alpha * *kappa;
  throw std::invalid_argument("config field beta/kappa: exactly one required");
}

double ExperimentConfig::resolved_kappa() const {
  return resolved_beta() / alpha;
}

double ExperimentConfig::resolved_p() const {
  if (p) return *p;
  if (rho_r) return 1.0 / (1.0 + *rho_r);
  throw std::invalid_argument("config field p/rho-r: exactly one required");
}

double ExperimentConfig::resolved_rho_r() const {
  const double prob = resolved_p();
  return (1.0 - prob) / prob;
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("config field n: must be >= 2");
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("config field alpha: must be positive");
  }
  if (beta && kappa) {
    throw std::invalid_argument("config field beta/kappa: mutually exclusive");
  }
  if (!beta && !kappa) {
    throw std::invalid_argument("config field beta/kappa: exactly one required");
  }
  if (beta && !(*beta >= alpha)) {
    throw std::invalid_argument("config field beta: must be >= alpha");
  }
  if (kappa && !(*kappa >= 1.0)) {
    throw std::invalid_argument("config field kappa: must be >= 1");
  }
  if (p && rho_r) {
    throw std::invalid_argument("config field p/rho-r: mutually exclusive");
  }
  if (!p && !rho_r) {
    throw std::invalid_argument("config field p/rho-r: exactly one required");
  }
  if (p && (!(*p > 0.0) || !(*p <= 1.0))) {
    throw std::invalid_argument("config field p: must lie in (0, 1]");
  }
  if (rho_r && !(*rho_r >= 0.0)) {
    throw std::invalid_argument("config field rho-r: must be nonnegative");
  }
  if (horizon < 1) throw std::invalid_argument("config field t: must be >= 1");
  if (trials < 1) {
    throw std::invalid_argument("config field trials: must be >= 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("config field workers: must be >= 1");
  }
}

bool AggregateResult::any_flagged() const {
  for (const CheckpointStats& cp : checkpoints) {
    if (cp.flagged) return true;
  }
  return false;
}

std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("checkpoint_grid: horizon must be >= 1");
  }
  std::vector<std::int64_t> grid;
  for (std::int64_t c = 1; c < horizon; c *= 2) grid.push_back(c);
  grid.push_back(horizon);
  return grid;
}

namespace {

// Runs body(trial) for every trial index on up to `workers` threads.
// Any stored results must be slotted by trial index; the first exception is
// rethrown after all threads join.
void for_each_trial(int trials, int workers,
                    const std::function<void(int)>& body) {
  if (workers <= 1 || trials <= 1) {
    for (int trial = 0; trial < trials; ++trial) body(trial);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const int pool_size = std::min(workers, trials);
  std::vector<std::thread> pool;
  pool.reserve(pool_size);
  for (int w = 0; w < pool_size; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int trial = next.fetch_add(1);
        if (trial >= trials) return;
        try {
          body(trial);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct SeriesStats {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and standard error of one slot across trials (fixed iteration order).
SeriesStats reduce(const std::vector<double>& values, int trials, int stride,
                   int slot) {
  SeriesStats st;
  for (int k = 0; k < trials; ++k) st.mean += values[k * stride + slot];
  st.mean /= trials;
  if (trials > 1) {
    double ss = 0.0;
    for (int k = 0; k < trials; ++k) {
      const double d = values[k * stride + slot] - st.mean;
      ss += d * d;
    }
    st.se = std::sqrt(ss / (static_cast<double>(trials) - 1.0) /
                      static_cast<double>(trials));
  }
  return st;
}

}  // namespace

AggregateResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const double beta = cfg.resolved_beta();
  const double prob = cfg.resolved_p();
  const ClassParams cls{cfg.alpha, beta};

  const std::vector<std::int64_t> grid = checkpoint_grid(cfg.horizon);
  const int slots = static_cast<int>(grid.size());

  // Per-trial cumulative metrics at each checkpoint, slotted by trial index
  // so the later reduction is independent of thread scheduling.
  std::vector<double> reg(static_cast<std::size_t>(cfg.trials) * slots, 0.0);
  std::vector<double> ben(reg.size(), 0.0);
  std::vector<double> pot(reg.size(), 0.0);
  std::vector<double> c0(cfg.trials, 0.0);

  for_each_trial(cfg.trials, cfg.workers, [&](int trial) {
    EventStreamConfig ecfg;
    ecfg.p = prob;
    ecfg.n = cfg.n;
    ecfg.mode = cfg.mode;
    ecfg.cls = cls;
    ecfg.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial));
    const RcdConfig rcd{cfg.step, cls};

    TrajectoryRunner runner(ecfg, rcd);
    c0[trial] = runner.initial_gap();

    MetricsLedger ledger;
    std::size_t slot = 0;
    runner.run(cfg.horizon, [&](const StepRecord& rec, const AllocationState&) {
      ledger.accumulate(rec.f_est, rec.f_opt, rec.f_selfish);
      if (slot < grid.size() && rec.event.t == grid[slot]) {
        const std::size_t base = static_cast<std::size_t>(trial) * slots + slot;
        reg[base] = ledger.regret();
        ben[base] = ledger.benefit();
        pot[base] = ledger.potential();
        ++slot;
      }
    });
  });

  AggregateResult result;
  result.config = cfg;
  double c0_sum = 0.0;
  for (const double v : c0) c0_sum += v;
  result.mean_c0 = c0_sum / cfg.trials;

  const BoundParams bp =
      BoundParams::make(cfg.n, cfg.alpha, beta, prob, result.mean_c0);
  const bool quadratic_family = cfg.mode == ReplacementMode::QuadraticUniform;
  result.theta = quadratic_family ? bp.theta_quad : bp.theta_general;

  result.checkpoints.reserve(slots);
  for (int slot = 0; slot < slots; ++slot) {
    CheckpointStats cp;
    cp.t = grid[slot];
    const double t = static_cast<double>(cp.t);

    const SeriesStats sreg = reduce(reg, cfg.trials, slots, slot);
    const SeriesStats sben = reduce(ben, cfg.trials, slots, slot);
    const SeriesStats spot = reduce(pot, cfg.trials, slots, slot);
    cp.mean_reg = sreg.mean;
    cp.se_reg = sreg.se;
    cp.mean_ben = sben.mean;
    cp.se_ben = sben.se;
    cp.mean_pot = spot.mean;
    cp.se_pot = spot.se;
    cp.mean_reg_rate = sreg.mean / t;
    cp.se_reg_rate = sreg.se / t;
    cp.mean_ben_rate = sben.mean / t;
    cp.se_ben_rate = sben.se / t;
    cp.mean_pot_rate = spot.mean / t;
    cp.se_pot_rate = spot.se / t;

    cp.bound_pot_rate = pot_bound_rate(bp);
    cp.bound_reg_rate_finite = reg_bound_finite(bp, cp.t, result.theta) / t;
    cp.bound_reg_rate_asymptotic = reg_bound_asymptotic(bp, quadratic_family);
    cp.flagged =
        cp.mean_pot_rate > cp.bound_pot_rate + 3.0 * cp.se_pot_rate ||
        cp.mean_reg_rate > cp.bound_reg_rate_finite + 3.0 * cp.se_reg_rate;
    result.checkpoints.push_back(cp);
  }

  if (!cfg.out.empty()) {
    write_file(cfg.out,
               [&](std::ostream& os) { write_aggregate_csv(os, result); });
    write_file(cfg.out + ".summary.csv",
               [&](std::ostream& os) { write_metrics_summary_csv(os, result); });
    write_file(cfg.out + ".manifest",
               [&](std::ostream& os) { write_manifest(os, cfg); });
  }
  return result;
}

ImpactStudyResult replacement_impact_study(const ExperimentConfig& cfg,
                                           std::int64_t samples) {
  cfg.validate();
  if (samples < 1000) {
    throw std::invalid_argument(
        "replacement_impact_study: samples must be >= 1000");
  }
  const double beta = cfg.resolved_beta();
  const ClassParams cls{cfg.alpha, beta};
  const RcdConfig rcd{cfg.step, cls};
  const double kappa = cfg.resolved_kappa();
  const std::int64_t warmup =
      static_cast<std::int64_t>(std::ceil(10.0 * kappa * (cfg.n - 1)));

  // Welford accumulation of the one-replacement cost jump.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const std::uint64_t seed =
        derive_seed(cfg.master_seed, static_cast<std::uint64_t>(k));
    ReplacementDistribution dist(cfg.mode, cls, derive_seed(seed, 2));
    Rng rng(derive_seed(seed, 1));

    std::vector<CostFunction> funcs;
    funcs.reserve(cfg.n);
    for (int i = 0; i < cfg.n; ++i) funcs.push_back(dist.sample());
    AllocationState state = AllocationState::selfish_start(std::move(funcs));

    // Pure update phase (p = 1): settle near the current optimum.
    for (std::int64_t t = 0; t < warmup; ++t) {
      const int i = static_cast<int>(rng.uniform_index(cfg.n));
      int j = static_cast<int>(rng.uniform_index(cfg.n - 1));
      if (j >= i) ++j;
      rcd_update(state, i, j, rcd);
    }

    const double before = global_cost(state);
    const int leaving = static_cast<int>(rng.uniform_index(cfg.n));
    apply_replacement(state, leaving, dist.sample());
    const double jump = global_cost(state) - before;

    const double d = jump - mean;
    mean += d / static_cast<double>(k + 1);
    m2 += d * (jump - mean);
  }

  const BoundParams bp = BoundParams::make(cfg.n, cfg.alpha, beta,
                                           cfg.resolved_p(), 0.0);
  ImpactStudyResult res;
  res.mean = mean;
  res.std_error = std::sqrt(m2 / (static_cast<double>(samples) - 1.0) /
                            static_cast<double>(samples));
  res.theta =
      cfg.mode == ReplacementMode::RR ? bp.theta_general : bp.theta_quad;
  res.samples = samples;
  res.within_margin = res.mean <= res.theta + 5.0 * res.std_error;
  return res;
}

Trajectory single_realization_trace(const ExperimentConfig& cfg) {
  cfg.validate();
  const ClassParams cls{cfg.alpha, cfg.resolved_beta()};
  EventStreamConfig ecfg;
  ecfg.p = cfg.resolved_p();
  ecfg.n = cfg.n;
  ecfg.mode = cfg.mode;
  ecfg.cls = cls;
  ecfg.seed = derive_seed(cfg.master_seed, 0);
  const RcdConfig rcd{cfg.step, cls};
  return TrajectoryRunner(ecfg, rcd).run(cfg.horizon);
}

}  // namespace openrcd
