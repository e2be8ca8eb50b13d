#pragma once

#include <cstdint>

#include "openrcd/rcd.hpp"

namespace openrcd {

/// Closed-form ingredients of the regret and potential-benefit guarantees.
/// All derived fields are fixed at construction:
///
///   eta            1 - p / (kappa (n-1)), the expected per-event decay of
///                  the suboptimality gap (contraction diluted by the update
///                  probability); NaN when n < 2
///   m_f            (n/2)(beta n - alpha), the crude worst-case gap between
///                  any feasible cost and any optimal cost
///   theta_general  (5 beta - 3 alpha)/2, ceiling on the expected cost jump
///                  of one replacement for arbitrary in-class costs
///   theta_quad     (beta - alpha)(3n^2 - 3n + 1)/(2 n^2), the tighter
///                  ceiling when every cost is quadratic
struct BoundParams {
  int n = 2;
  double alpha = 1.0;
  double beta = 1.0;
  double kappa = 1.0;
  double p = 1.0;
  double rho_r = 0.0;
  double c0 = 0.0;

  double eta = 0.0;
  double m_f = 0.0;
  double theta_general = 0.0;
  double theta_quad = 0.0;

  /// Validates n >= 1, 0 < alpha <= beta, p in [0, 1], c0 >= 0 and fills the
  /// derived fields.
  static BoundParams make(int n, double alpha, double beta, double p,
                          double c0);
};

/// gamma for the configured population and conditioning.
inline double contraction_factor(const BoundParams& bp) {
  return contraction_factor(bp.n, bp.kappa);
}

/// Cumulative potential-benefit ceiling (n/2) alpha (kappa - 1) T.
double pot_bound(const BoundParams& bp, std::int64_t horizon);

/// Per-step version (n/2) alpha (kappa - 1).
double pot_bound_rate(const BoundParams& bp);

/// Expected-regret ceiling after T events,
///   c0 sum_{t=1..T} eta^t
///     + (1-p) sum_{t=0..T-1} eta^t (m_f + (T-t) theta),
/// evaluated in closed form (geometric and arithmetico-geometric sums).
/// theta selects the replacement-impact ceiling (general or quadratic).
/// Throws std::domain_error when p = 0 (eta would reach 1) or n < 2.
double reg_bound_finite(const BoundParams& bp, std::int64_t horizon,
                        double theta);

/// Long-run per-step regret ceiling:
///   general    rho_R (n-1) beta (5 kappa - 3)/2
///   quadratic  rho_R (n-1) (3n^2 - 3n + 1)/(2n^2) beta (kappa - 1)
/// Equals rho_R theta / (1 - gamma). Boundaries are reported explicitly:
/// +infinity when p = 0, 0 when p = 1.
double reg_bound_asymptotic(const BoundParams& bp, bool quadratic);

/// Worst-case gap m_f between any feasible cost and any optimal cost.
double crude_gap_bound(const BoundParams& bp);

/// Default seed for the regret bound when the realized initial gap is
/// unknown: the crude gap bound.
double worst_case_c0(const BoundParams& bp);

}  // namespace openrcd
