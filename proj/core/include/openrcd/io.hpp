#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "openrcd/events.hpp"
#include "openrcd/experiment.hpp"

namespace openrcd {

/// Full-precision scientific notation ("%.17e"): parses back to the same bits.
std::string format_full(double v);

/// Tagged one-line record, e.g.
///   quadratic|phi=...|alpha=...|beta=...
///   piecewise-quadratic|phi1=...|phi2=...|breakpoint=...|alpha=...|beta=...
std::string serialize_function(const CostFunction& f);

/// Columns: t, event_kind, leaving_or_pair, f_est, f_opt, f_selfish, C_t,
/// dF, dFstar, incoming_function. Row t = 0 (kind "init") carries the values
/// before the first event; replacement rows carry the incoming cost record.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

/// Long format, columns: checkpoint_T, series, mean, stderr. Empirical series
/// reg_rate / ben_rate / pot_rate plus bound curves (stderr 0) share the grid.
void write_aggregate_csv(std::ostream& os, const AggregateResult& result);

/// Wide per-checkpoint totals, columns: T, mean_reg, mean_ben, mean_pot,
/// mean_reg_per_T, mean_pot_per_T, trial_count.
void write_metrics_summary_csv(std::ostream& os, const AggregateResult& result);

/// Resolved key = value config echo (re-parses to the same effective config)
/// plus the code version as a comment.
void write_manifest(std::ostream& os, const ExperimentConfig& cfg);

/// Opens `path` for writing and fails loudly. Used by every artifact writer.
void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& body);

}  // namespace openrcd
