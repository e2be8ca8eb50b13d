#include "openrcd/events.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace openrcd {

namespace {
constexpr std::uint64_t kEventCoinStream = 1;
constexpr std::uint64_t kIncomingStream = 2;
}  // namespace

void EventStreamConfig::validate() const {
  if (n < 2) throw std::invalid_argument("EventStreamConfig: n must be >= 2");
  if (!(p > 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("EventStreamConfig: p must lie in (0, 1]");
  }
  cls.validate();
}

EventStream::EventStream(const EventStreamConfig& cfg)
    : p_((cfg.validate(), cfg.p)),  // validate before any member uses cfg
      n_(cfg.n),
      rng_(derive_seed(cfg.seed, kEventCoinStream)),
      dist_(cfg.mode, cfg.cls, derive_seed(cfg.seed, kIncomingStream)) {}

Event EventStream::next() {
  ++t_;
  if (rng_.bernoulli(p_)) {
    // Ordered draw without repetition; the exchange is symmetric in (i, j),
    // so every unordered pair comes up with probability 2/(n(n-1)).
    const int i = static_cast<int>(rng_.uniform_index(n_));
    int j = static_cast<int>(rng_.uniform_index(n_ - 1));
    if (j >= i) ++j;
    return Event{t_, UpdateEvent{i, j}};
  }
  const int leaving = static_cast<int>(rng_.uniform_index(n_));
  return Event{t_, ReplacementEvent{leaving, dist_.sample()}};
}

void apply_replacement(AllocationState& s, int leaving,
                       const CostFunction& incoming) {
  const int n = s.n();
  if (leaving < 0 || leaving >= n) {
    throw std::out_of_range("apply_replacement: leaving index out of range");
  }
  s.check_feasible();

  // Departure first: the leaving share is spread evenly, the total drops to
  // n - 1. Arrival second: the newcomer takes the vacated slot with one unit.
  const double departing = s.x[leaving];
  for (int i = 0; i < n; ++i) {
    if (i != leaving) s.x[i] += (departing - s.x[i]) / n;
  }
  s.x[leaving] = 1.0;
  s.funcs[leaving] = incoming;
}

TrajectoryRunner::TrajectoryRunner(const EventStreamConfig& cfg,
                                   const RcdConfig& rcd)
    : stream_(cfg), rcd_(rcd) {
  std::vector<CostFunction> funcs;
  funcs.reserve(cfg.n);
  for (int i = 0; i < cfg.n; ++i) funcs.push_back(stream_.distribution().sample());
  state_ = AllocationState::selfish_start(std::move(funcs));
  capture_initial();
}

TrajectoryRunner::TrajectoryRunner(AllocationState x0,
                                   const EventStreamConfig& cfg,
                                   const RcdConfig& rcd)
    : stream_(cfg), rcd_(rcd), state_(std::move(x0)) {
  if (state_.n() != cfg.n) {
    throw std::invalid_argument("TrajectoryRunner: state size != cfg.n");
  }
  capture_initial();
}

void TrajectoryRunner::capture_initial() {
  state_.check_feasible();
  opt_tol_ = 1e-10 * static_cast<double>(state_.n());
  f_est_ = global_cost(state_);
  f_opt_ = optimal_point(state_, opt_tol_).value;
  f_selfish_ = selfish_value(state_);
  f_est0_ = f_est_;
  f_opt0_ = f_opt_;
  f_selfish0_ = f_selfish_;
  c0_ = std::max(0.0, f_est0_ - f_opt0_);
}

StepRecord TrajectoryRunner::step() {
  Event event = stream_.next();
  const double f_est_prev = f_est_;
  const double f_opt_prev = f_opt_;

  if (event.is_update()) {
    const UpdateEvent& up = event.update();
    // Incremental cost maintenance: only the two touched terms change.
    f_est_ += rcd_update(state_, up.i, up.j, rcd_);
  } else {
    const ReplacementEvent& rep = event.replacement();
    apply_replacement(state_, rep.leaving, rep.incoming);
    // Every share moved and one cost changed: recompute from scratch, which
    // also resets any drift accumulated by the incremental path.
    f_est_ = global_cost(state_);
    f_opt_ = optimal_point(state_, opt_tol_).value;
    f_selfish_ = selfish_value(state_);
  }
  state_.check_feasible();

  StepRecord rec;
  rec.event = std::move(event);
  rec.f_est = f_est_;
  rec.f_opt = f_opt_;
  rec.f_selfish = f_selfish_;
  rec.c = std::max(0.0, f_est_ - f_opt_);
  rec.delta_f = f_est_ - f_est_prev;
  rec.delta_f_star = f_opt_ - f_opt_prev;
  return rec;
}

Trajectory TrajectoryRunner::run(std::int64_t horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("TrajectoryRunner::run: horizon must be >= 1");
  }
  Trajectory tr;
  tr.horizon = horizon;
  tr.f_est0 = f_est0_;
  tr.f_opt0 = f_opt0_;
  tr.f_selfish0 = f_selfish0_;
  tr.c0 = c0_;
  tr.steps.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 0; t < horizon; ++t) tr.steps.push_back(step());
  return tr;
}

void TrajectoryRunner::run(std::int64_t horizon, const StepSink& sink) {
  if (horizon < 1) {
    throw std::invalid_argument("TrajectoryRunner::run: horizon must be >= 1");
  }
  if (!sink) {
    throw std::invalid_argument("TrajectoryRunner::run: null sink");
  }
  for (std::int64_t t = 0; t < horizon; ++t) {
    const StepRecord rec = step();
    sink(rec, state_);
  }
}

Trajectory run_trajectory(const EventStreamConfig& cfg, const RcdConfig& rcd,
                          std::int64_t horizon) {
  return TrajectoryRunner(cfg, rcd).run(horizon);
}

}  // namespace openrcd
