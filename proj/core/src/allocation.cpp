#include "openrcd/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace openrcd {

double AllocationState::sum() const {
  double total = 0.0;
  for (const double v : x) total += v;
  return total;
}

void AllocationState::check_feasible() const {
  if (x.size() != funcs.size()) {
    throw infeasible_state_error("AllocationState: x/funcs size mismatch");
  }
  if (x.empty()) {
    throw infeasible_state_error("AllocationState: empty state");
  }
  for (const double v : x) {
    if (!(v >= 0.0)) {  // also rejects NaN
      throw infeasible_state_error("AllocationState: negative share");
    }
  }
  const double total = sum();
  const double budget = static_cast<double>(n());
  if (std::abs(total - budget) > 1e-9 * budget) {
    throw infeasible_state_error("AllocationState: budget violated, sum = " +
                                 std::to_string(total));
  }
}

AllocationState AllocationState::selfish_start(std::vector<CostFunction> funcs) {
  AllocationState s;
  s.x.assign(funcs.size(), 1.0);
  s.funcs = std::move(funcs);
  return s;
}

double global_cost(const AllocationState& s) {
  s.check_feasible();
  double total = 0.0;
  for (int i = 0; i < s.n(); ++i) total += s.funcs[i].value(s.x[i]);
  return total;
}

double selfish_value(const AllocationState& s) {
  double total = 0.0;
  for (const CostFunction& f : s.funcs) total += f.value(1.0);
  return total;
}

StrategyPoint selfish_point(const AllocationState& s) {
  StrategyPoint pt;
  pt.kind = StrategyKind::Selfish;
  pt.x.assign(s.funcs.size(), 1.0);
  pt.value = selfish_value(s);
  return pt;
}

StrategyPoint optimal_point(const AllocationState& s, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("optimal_point: tol must be positive");
  }
  if (s.funcs.empty() || s.x.size() != s.funcs.size()) {
    throw std::invalid_argument("optimal_point: state has no valid functions");
  }
  const int n = s.n();
  const double budget = static_cast<double>(n);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const CostFunction& f : s.funcs) {
    f.class_params().validate();
    lo = std::min(lo, f.class_params().alpha);
    hi = std::max(hi, f.class_params().beta);
  }

  std::vector<double> shares(n);
  const auto residual = [&](double lambda) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      shares[i] = s.funcs[i].derivative_inverse(lambda);
      total += shares[i];
    }
    return total - budget;
  };

  // lambda/beta_i <= x_i(lambda) <= lambda/alpha_i, so the residual is <= 0
  // at lambda = min alpha_i and >= 0 at lambda = max beta_i.
  if (residual(lo) > tol || residual(hi) < -tol) {
    throw bracket_failure_error(
        "optimal_point: multiplier bracket failed; a cost function violates "
        "its curvature class");
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }

  const double lambda = hi;  // residual(hi) >= 0, one ulp from the root
  const double gap = residual(lambda);
  if (std::abs(gap) > tol) {
    throw bracket_failure_error("optimal_point: residual did not converge");
  }

  StrategyPoint pt;
  pt.kind = StrategyKind::Optimal;
  pt.x = shares;
  pt.value = 0.0;
  for (int i = 0; i < n; ++i) pt.value += s.funcs[i].value(shares[i]);
  return pt;
}

StrategyPoint optimal_point(const AllocationState& s) {
  return optimal_point(s, 1e-10 * static_cast<double>(s.n()));
}

std::vector<double> project_simplex(std::span<const double> v) {
  const int n = static_cast<int>(v.size());
  if (n == 0) throw std::invalid_argument("project_simplex: empty input");
  for (const double d : v) {
    if (!std::isfinite(d)) {
      throw std::invalid_argument("project_simplex: non-finite input");
    }
  }
  const double budget = static_cast<double>(n);

  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  // Largest active set k with uniform shift tau keeping all k entries positive.
  double cumulative = 0.0;
  double tau = 0.0;
  for (int k = 0; k < n; ++k) {
    cumulative += sorted[k];
    const double shift = (cumulative - budget) / (k + 1);
    if (sorted[k] - shift > 0.0) tau = shift;
  }

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

}  // namespace openrcd
