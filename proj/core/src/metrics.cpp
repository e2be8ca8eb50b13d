#include "openrcd/metrics.hpp"

#include <stdexcept>

namespace openrcd {

void MetricsLedger::accumulate(double f_est, double f_opt, double f_selfish) {
  if (f_opt > f_est + 1e-6) {
    throw oracle_violation_error(
        "MetricsLedger: optimal value exceeds a feasible cost");
  }
  regret_ += f_est - f_opt;
  benefit_ += f_selfish - f_est;
  potential_ += f_selfish - f_opt;
  ++steps_;
}

MetricsLedger::Rates MetricsLedger::averaged() const {
  if (steps_ == 0) throw std::logic_error("MetricsLedger: empty ledger");
  const double t = static_cast<double>(steps_);
  return Rates{regret_ / t, benefit_ / t, potential_ / t};
}

}  // namespace openrcd
