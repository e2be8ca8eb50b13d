#pragma once

#include <cstdint>

#include "openrcd/errors.hpp"

namespace openrcd {

/// Running totals over a trajectory of the three comparison metrics:
///
///   regret     sum_t f^t(x^t)    - f^t(x*^t)   cost of following the
///                                              algorithm instead of the
///                                              per-step optimum
///   benefit    sum_t f^t(x_bar)  - f^t(x^t)    gain over never cooperating
///   potential  sum_t f^t(x_bar)  - f^t(x*^t)   headroom between selfish and
///                                              optimal play
///
/// potential = benefit + regret holds by construction at every step.
class MetricsLedger {
 public:
  /// Folds in one step's values. Throws oracle_violation_error when
  /// f_opt > f_est + 1e-6 (a feasible cost below the claimed optimum means
  /// the optimum solver is broken; up to 1e-9 is accepted as solver noise).
  void accumulate(double f_est, double f_opt, double f_selfish);

  std::int64_t steps() const { return steps_; }
  double regret() const { return regret_; }
  double benefit() const { return benefit_; }
  double potential() const { return potential_; }

  struct Rates {
    double reg = 0.0;
    double ben = 0.0;
    double pot = 0.0;
  };

  /// Per-step averages. Throws std::logic_error on an empty ledger.
  Rates averaged() const;

 private:
  double regret_ = 0.0;
  double benefit_ = 0.0;
  double potential_ = 0.0;
  std::int64_t steps_ = 0;
};

}  // namespace openrcd
