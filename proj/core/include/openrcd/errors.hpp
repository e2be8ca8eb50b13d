#pragma once

#include <stdexcept>

namespace openrcd {

/// The allocation left the feasible set (negative share or broken budget).
struct infeasible_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The dual bisection could not bracket the shared multiplier; some cost
/// function violates its declared curvature class.
struct bracket_failure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value claimed to be optimal exceeds an evaluated feasible cost by more
/// than solver noise (signals a broken optimum solver).
struct oracle_violation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A strategy point does not belong to the state it is compared against.
struct mismatched_functions_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace openrcd
