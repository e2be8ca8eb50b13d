#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "openrcd/allocation.hpp"
#include "openrcd/cost_function.hpp"
#include "openrcd/rcd.hpp"

namespace openrcd {

struct UpdateEvent {
  int i = 0;
  int j = 0;
};

struct ReplacementEvent {
  int leaving = 0;
  CostFunction incoming;
};

/// One step of the i.i.d. event process: with probability p an update on a
/// uniformly chosen unordered pair, otherwise a replacement of a uniformly
/// chosen agent.
struct Event {
  std::int64_t t = 0;
  std::variant<UpdateEvent, ReplacementEvent> body{UpdateEvent{}};

  bool is_update() const { return std::holds_alternative<UpdateEvent>(body); }
  const UpdateEvent& update() const { return std::get<UpdateEvent>(body); }
  const ReplacementEvent& replacement() const {
    return std::get<ReplacementEvent>(body);
  }
};

struct EventStreamConfig {
  double p = 1.0;  // update probability, (0, 1]; replacements come at 1 - p
  int n = 0;
  ReplacementMode mode = ReplacementMode::RR;
  ClassParams cls;
  std::uint64_t seed = 0;

  /// Replacement-to-update rate ratio (1 - p) / p.
  double rho_r() const { return (1.0 - p) / p; }

  void validate() const;  // n >= 2, p in (0, 1], valid class
};

/// Draws the event sequence. The event coin and the incoming-function sampler
/// run on separate sub-streams derived from the config seed, so equal
/// configs give identical event sequences.
class EventStream {
 public:
  explicit EventStream(const EventStreamConfig& cfg);

  Event next();

  /// Incoming-function sampler; also used to draw the population present at
  /// t = 0 so one seed pins the whole realization.
  ReplacementDistribution& distribution() { return dist_; }

  std::int64_t step() const { return t_; }

 private:
  double p_;
  int n_;
  std::int64_t t_ = 0;
  Rng rng_;
  ReplacementDistribution dist_;
};

/// Swap agent `leaving` for a newcomer holding the incoming cost: the
/// departing share is first redistributed evenly (x_i += (x_out - x_i)/n for
/// the n-1 remaining agents, dropping the total to n - 1), then the newcomer
/// enters the vacated slot with one unit. Indices are stable: the slot is
/// reused.
void apply_replacement(AllocationState& s, int leaving,
                       const CostFunction& incoming);

/// Values recorded after applying the event at step t. f_est is maintained
/// incrementally across updates and recomputed at replacements; f_opt and
/// f_selfish change only at replacements. c = max(0, f_est - f_opt), and
/// delta_f / delta_f_star are the one-step changes of f_est / f_opt, so
/// c_{t+1} = c_t + delta_f - delta_f_star holds along every trajectory.
struct StepRecord {
  Event event;
  double f_est = 0.0;
  double f_opt = 0.0;
  double f_selfish = 0.0;
  double c = 0.0;
  double delta_f = 0.0;
  double delta_f_star = 0.0;
};

struct Trajectory {
  std::int64_t horizon = 0;
  double f_est0 = 0.0, f_opt0 = 0.0, f_selfish0 = 0.0, c0 = 0.0;
  std::vector<StepRecord> steps;  // exactly horizon records
};

using StepSink = std::function<void(const StepRecord&, const AllocationState&)>;

/// Drives one realization: draws events, applies them, and keeps the
/// estimate / optimal / selfish values current. The optimum is recomputed
/// only after replacements (updates leave it unchanged).
class TrajectoryRunner {
 public:
  /// Starts from the selfish point with the initial population drawn from
  /// the stream's replacement distribution.
  TrajectoryRunner(const EventStreamConfig& cfg, const RcdConfig& rcd);

  /// Starts from a caller-supplied feasible state.
  TrajectoryRunner(AllocationState x0, const EventStreamConfig& cfg,
                   const RcdConfig& rcd);

  const AllocationState& state() const { return state_; }
  std::int64_t step_index() const { return stream_.step(); }

  double initial_cost() const { return f_est0_; }
  double initial_optimal() const { return f_opt0_; }
  double initial_selfish() const { return f_selfish0_; }
  double initial_gap() const { return c0_; }  // C_0, the bound seed

  /// Draws and applies one event; feasibility is asserted afterwards.
  StepRecord step();

  /// Runs `horizon` steps (>= 1) recording every step.
  Trajectory run(std::int64_t horizon);

  /// Streaming variant: per-step records go to the sink and are not stored,
  /// so the horizon is limited only by time, not memory.
  void run(std::int64_t horizon, const StepSink& sink);

 private:
  void capture_initial();

  EventStream stream_;
  RcdConfig rcd_;
  AllocationState state_;
  double opt_tol_ = 0.0;
  double f_est0_ = 0.0, f_opt0_ = 0.0, f_selfish0_ = 0.0, c0_ = 0.0;
  double f_est_ = 0.0, f_opt_ = 0.0, f_selfish_ = 0.0;
};

/// Convenience wrapper: selfish start, population drawn from the stream.
Trajectory run_trajectory(const EventStreamConfig& cfg, const RcdConfig& rcd,
                          std::int64_t horizon);

}  // namespace openrcd
