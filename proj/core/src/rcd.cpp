#include "openrcd/rcd.hpp"

#include <stdexcept>

namespace openrcd {

const char* to_string(StepRule rule) {
  return rule == StepRule::TwoBeta ? "two-beta" : "beta";
}

bool parse_step_rule(std::string_view text, StepRule& out) {
  if (text == "two-beta") {
    out = StepRule::TwoBeta;
  } else if (text == "beta") {
    out = StepRule::Beta;
  } else {
    return false;
  }
  return true;
}

double rcd_update(AllocationState& s, int i, int j, const RcdConfig& cfg) {
  const int n = s.n();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw std::out_of_range("rcd_update: agent index out of range");
  }
  if (i == j) throw std::invalid_argument("rcd_update: i == j");
  cfg.cls.validate();
  s.check_feasible();

  const double h = cfg.step_size();
  const double gap = s.funcs[i].derivative(s.x[i]) - s.funcs[j].derivative(s.x[j]);
  const double transfer = h * gap;

  // Under TwoBeta, |transfer| <= max(x_i, x_j)/2 on the losing side, so both
  // shares stay nonnegative without projection.
  const double xi_next = s.x[i] - transfer;
  const double xj_next = s.x[j] + transfer;

  const double delta = s.funcs[i].value(xi_next) + s.funcs[j].value(xj_next) -
                       s.funcs[i].value(s.x[i]) - s.funcs[j].value(s.x[j]);
  s.x[i] = xi_next;
  s.x[j] = xj_next;
  return delta;
}

double suboptimality(const AllocationState& s, const StrategyPoint& opt) {
  if (opt.kind != StrategyKind::Optimal ||
      opt.x.size() != static_cast<std::size_t>(s.n())) {
    throw mismatched_functions_error(
        "suboptimality: point is not an optimum for this state");
  }
  const double gap = global_cost(s) - opt.value;
  if (gap < -1e-9) {
    throw mismatched_functions_error(
        "suboptimality: state beats the claimed optimum");
  }
  return gap > 0.0 ? gap : 0.0;
}

double contraction_factor(int n, double kappa) {
  if (n < 2) throw std::invalid_argument("contraction_factor: n must be >= 2");
  if (!(kappa >= 1.0)) {
    throw std::invalid_argument("contraction_factor: kappa must be >= 1");
  }
  return 1.0 - 1.0 / (kappa * (n - 1));
}

}  // namespace openrcd
