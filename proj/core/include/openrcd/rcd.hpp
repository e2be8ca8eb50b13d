#pragma once

#include "openrcd/allocation.hpp"

namespace openrcd {

/// Step size for the pairwise exchange. TwoBeta (1 / 2 beta) certifies
/// x_i never drops below half its previous share, so iterates stay feasible;
/// Beta (1 / beta) is the aggressive variant kept for ablations and carries
/// no such certificate.
enum class StepRule { TwoBeta, Beta };

const char* to_string(StepRule rule);
bool parse_step_rule(std::string_view text, StepRule& out);

struct RcdConfig {
  StepRule step = StepRule::TwoBeta;
  ClassParams cls;

  double step_size() const {
    return step == StepRule::TwoBeta ? 1.0 / (2.0 * cls.beta) : 1.0 / cls.beta;
  }
};

/// One randomized-pair descent exchange between agents i and j:
///   g = f_i'(x_i) - f_j'(x_j),  x_i -= h g,  x_j += h g.
/// Mutates exactly two coordinates; the transfer is symmetric so the budget
/// is conserved to roundoff. Returns the resulting change in global cost
/// f_i(x_i') + f_j(x_j') - f_i(x_i) - f_j(x_j), which is <= 0 under TwoBeta.
double rcd_update(AllocationState& s, int i, int j, const RcdConfig& cfg);

/// global_cost(s) - opt.value, clamped to 0 below solver noise. Throws
/// mismatched_functions_error when opt is not an Optimal point of a state of
/// this size, or when the gap is below -1e-9 (opt cannot be the optimum of
/// these functions).
double suboptimality(const AllocationState& s, const StrategyPoint& opt);

/// Expected one-event contraction rate of the suboptimality gap under
/// uniform pair choice: gamma = 1 - 1/(kappa (n-1)). Requires n >= 2,
/// kappa >= 1.
double contraction_factor(int n, double kappa);

}  // namespace openrcd
