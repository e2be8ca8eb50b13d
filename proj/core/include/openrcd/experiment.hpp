#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "openrcd/bounds.hpp"
#include "openrcd/events.hpp"

namespace openrcd {

/// Full description of a Monte Carlo run. Exactly one of (beta, kappa) and
/// exactly one of (p, rho_r) must be set; the resolved_* accessors return the
/// derived value either way (beta = alpha kappa, p = 1/(1 + rho_r)).
struct ExperimentConfig {
  int n = 5;
  double alpha = 1.0;
  std::optional<double> beta;
  std::optional<double> kappa;
  std::optional<double> p;
  std::optional<double> rho_r;
  std::int64_t horizon = 10000;
  int trials = 100;
  std::uint64_t master_seed = 0;
  ReplacementMode mode = ReplacementMode::RR;
  StepRule step = StepRule::TwoBeta;
  int workers = 1;
  std::string out;  // output stem; empty runs fully in memory

  double resolved_beta() const;
  double resolved_kappa() const;
  double resolved_p() const;
  double resolved_rho_r() const;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Cross-trial statistics at one checkpoint, with the matching bound values.
/// Rates divide the cumulative metrics by the checkpoint horizon t.
struct CheckpointStats {
  std::int64_t t = 0;
  double mean_reg = 0.0, se_reg = 0.0;
  double mean_ben = 0.0, se_ben = 0.0;
  double mean_pot = 0.0, se_pot = 0.0;
  double mean_reg_rate = 0.0, se_reg_rate = 0.0;
  double mean_ben_rate = 0.0, se_ben_rate = 0.0;
  double mean_pot_rate = 0.0, se_pot_rate = 0.0;
  double bound_pot_rate = 0.0;
  double bound_reg_rate_finite = 0.0;      // per-horizon guarantee / t
  double bound_reg_rate_asymptotic = 0.0;  // long-run ceiling
  bool flagged = false;  // mean exceeds its guarantee by more than 3 s.e.
};

struct AggregateResult {
  ExperimentConfig config;  // as resolved for the run
  std::vector<CheckpointStats> checkpoints;
  double mean_c0 = 0.0;  // across trials; seeds the finite regret bound
  double theta = 0.0;    // replacement-impact ceiling used for the run's mode
  bool any_flagged() const;
};

/// Geometric grid 1, 2, 4, ... capped by and always ending at `horizon`.
std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon);

/// Runs cfg.trials independent trajectories (trial k on seed
/// derive_seed(master_seed, k)), accumulates the metrics ledger per trial,
/// and reduces mean and standard error at every checkpoint. Trials may run on
/// cfg.workers threads; the reduction order is fixed by trial index, so the
/// result is bit-identical for any worker count. Checkpoints where a mean
/// exceeds its bound by more than 3 standard errors are flagged, not errors.
/// When cfg.out is set, writes <out> (curves), <out>.summary.csv and
/// <out>.manifest next to it.
AggregateResult run_experiment(const ExperimentConfig& cfg);

struct ImpactStudyResult {
  double mean = 0.0;
  double std_error = 0.0;
  double theta = 0.0;  // applicable ceiling for the sampled function family
  std::int64_t samples = 0;
  bool within_margin = false;  // mean <= theta + 5 s.e.
};

/// Estimates the expected one-replacement cost jump E[df | replacement] from
/// warm-started states: each sample runs 10 kappa (n-1) pure update events
/// from the selfish start, applies one uniformly drawn replacement, and
/// measures the cost change. samples >= 1000.
ImpactStudyResult replacement_impact_study(const ExperimentConfig& cfg,
                                           std::int64_t samples);

/// One fully recorded realization on seed derive_seed(master_seed, 0), so it
/// reproduces trial 0 of run_experiment with the same config.
Trajectory single_realization_trace(const ExperimentConfig& cfg);

}  // namespace openrcd
