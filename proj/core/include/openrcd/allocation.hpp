#pragma once

#include <span>
#include <vector>

#include "openrcd/cost_function.hpp"
#include "openrcd/errors.hpp"

namespace openrcd {

/// Shared estimates of n agents on the scaled simplex
/// S_n = { x >= 0 : sum_i x_i = n }, paired with their local costs.
struct AllocationState {
  std::vector<double> x;
  std::vector<CostFunction> funcs;

  int n() const { return static_cast<int>(x.size()); }
  double sum() const;

  /// Throws infeasible_state_error unless x/funcs sizes match, every share is
  /// nonnegative and |sum - n| <= 1e-9 n.
  void check_feasible() const;

  /// Everyone keeps one unit: the state reached when nobody cooperates.
  static AllocationState selfish_start(std::vector<CostFunction> funcs);
};

enum class StrategyKind { Optimal, Selfish, Estimate };

struct StrategyPoint {
  StrategyKind kind = StrategyKind::Estimate;
  std::vector<double> x;
  double value = 0.0;
};

/// Total cost sum_i f_i(x_i). Validates feasibility first.
double global_cost(const AllocationState& s);

/// sum_i f_i(1) without materializing the all-ones point.
double selfish_value(const AllocationState& s);

/// The all-ones strategy and its cost.
StrategyPoint selfish_point(const AllocationState& s);

/// Minimizer of the global cost over S_n, found by bisecting the shared
/// marginal price lambda with per-agent shares x_i = (f_i')^{-1}(lambda).
/// Since alpha x <= f_i'(x) <= beta x, the bracket [min alpha_i, max beta_i]
/// always straddles the root; tol bounds the constraint residual |sum - n|
/// (the search continues to machine resolution once tol is met, so the
/// returned value is accurate well past tol). Throws bracket_failure_error
/// when a function escapes its class, std::invalid_argument for tol <= 0.
StrategyPoint optimal_point(const AllocationState& s, double tol);

/// Same with the default residual tolerance 1e-10 * n.
StrategyPoint optimal_point(const AllocationState& s);

/// Euclidean projection onto S_n (n = v.size()) by sort and threshold.
std::vector<double> project_simplex(std::span<const double> v);

}  // namespace openrcd
