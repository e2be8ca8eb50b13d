#include "openrcd/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace openrcd {

BoundParams BoundParams::make(int n, double alpha, double beta, double p,
                              double c0) {
  if (n < 1) throw std::invalid_argument("BoundParams: n must be >= 1");
  ClassParams{alpha, beta}.validate();
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("BoundParams: p must lie in [0, 1]");
  }
  if (!(c0 >= 0.0)) {
    throw std::invalid_argument("BoundParams: c0 must be nonnegative");
  }

  BoundParams bp;
  bp.n = n;
  bp.alpha = alpha;
  bp.beta = beta;
  bp.kappa = beta / alpha;
  bp.p = p;
  bp.rho_r = p > 0.0 ? (1.0 - p) / p : std::numeric_limits<double>::infinity();
  bp.c0 = c0;
  bp.eta = n >= 2 ? 1.0 - p / (bp.kappa * (n - 1))
                  : std::numeric_limits<double>::quiet_NaN();
  const double nn = static_cast<double>(n);
  bp.m_f = 0.5 * nn * (beta * nn - alpha);
  bp.theta_general = 0.5 * (5.0 * beta - 3.0 * alpha);
  bp.theta_quad = (beta - alpha) * (3.0 * nn * nn - 3.0 * nn + 1.0) / (2.0 * nn * nn);
  return bp;
}

double pot_bound_rate(const BoundParams& bp) {
  return 0.5 * static_cast<double>(bp.n) * bp.alpha * (bp.kappa - 1.0);
}

double pot_bound(const BoundParams& bp, std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("pot_bound: negative horizon");
  return pot_bound_rate(bp) * static_cast<double>(horizon);
}

double reg_bound_finite(const BoundParams& bp, std::int64_t horizon,
                        double theta) {
  if (horizon < 1) {
    throw std::invalid_argument("reg_bound_finite: horizon must be >= 1");
  }
  if (bp.n < 2) throw std::domain_error("reg_bound_finite: requires n >= 2");
  if (!(bp.p > 0.0)) {
    throw std::domain_error("reg_bound_finite: requires p > 0 (eta < 1)");
  }
  if (!(theta >= 0.0)) {
    throw std::invalid_argument("reg_bound_finite: theta must be nonnegative");
  }

  const double T = static_cast<double>(horizon);
  // 1 - eta computed directly from p to dodge cancellation when eta ~ 1.
  const double q = bp.p / (bp.kappa * (bp.n - 1));
  const double eta = 1.0 - q;

  // 1 - eta^T via expm1(T log(eta)); exact at eta = 0 as well.
  const double decay = -std::expm1(T * std::log1p(-q));
  const double eta_pow_T = std::pow(eta, T);
  const double eta_pow_Tm1 = std::pow(eta, T - 1.0);

  const double sum_1_to_T = eta * decay / q;   // sum_{t=1..T} eta^t
  const double sum_0_to_Tm1 = decay / q;       // sum_{t=0..T-1} eta^t
  // sum_{t=0..T-1} t eta^t
  const double sum_t_weighted =
      eta * (1.0 - T * eta_pow_Tm1 + (T - 1.0) * eta_pow_T) / (q * q);

  return bp.c0 * sum_1_to_T +
         (1.0 - bp.p) * ((bp.m_f + T * theta) * sum_0_to_Tm1 -
                         theta * sum_t_weighted);
}

double reg_bound_asymptotic(const BoundParams& bp, bool quadratic) {
  if (bp.n < 2) {
    throw std::domain_error("reg_bound_asymptotic: requires n >= 2");
  }
  if (bp.p <= 0.0) return std::numeric_limits<double>::infinity();
  if (bp.p >= 1.0) return 0.0;
  const double nn = static_cast<double>(bp.n);
  if (quadratic) {
    return bp.rho_r * (nn - 1.0) * (3.0 * nn * nn - 3.0 * nn + 1.0) /
           (2.0 * nn * nn) * bp.beta * (bp.kappa - 1.0);
  }
  return bp.rho_r * (nn - 1.0) * bp.beta * (5.0 * bp.kappa - 3.0) / 2.0;
}

double crude_gap_bound(const BoundParams& bp) { return bp.m_f; }

double worst_case_c0(const BoundParams& bp) { return bp.m_f; }

}  // namespace openrcd
