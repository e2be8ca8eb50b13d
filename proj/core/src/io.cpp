#include "openrcd/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "openrcd/version.hpp"

namespace openrcd {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::string serialize_function(const CostFunction& f) {
  const ClassParams& cls = f.class_params();
  const std::string tail =
      "|alpha=" + format_full(cls.alpha) + "|beta=" + format_full(cls.beta);
  if (f.family() == Family::Quadratic) {
    return "quadratic|phi=" + format_full(f.phi()) + tail;
  }
  return "piecewise-quadratic|phi1=" + format_full(f.phi1()) +
         "|phi2=" + format_full(f.phi2()) +
         "|breakpoint=" + format_full(f.breakpoint()) + tail;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,event_kind,leaving_or_pair,f_est,f_opt,f_selfish,C_t,dF,dFstar,"
        "incoming_function\n";
  os << "0,init,," << format_full(tr.f_est0) << ',' << format_full(tr.f_opt0)
     << ',' << format_full(tr.f_selfish0) << ',' << format_full(tr.c0)
     << ",0,0,\n";
  for (const StepRecord& rec : tr.steps) {
    os << rec.event.t << ',';
    if (rec.event.is_update()) {
      const UpdateEvent& up = rec.event.update();
      os << "update," << up.i << '-' << up.j << ',';
    } else {
      os << "replacement," << rec.event.replacement().leaving << ',';
    }
    os << format_full(rec.f_est) << ',' << format_full(rec.f_opt) << ','
       << format_full(rec.f_selfish) << ',' << format_full(rec.c) << ','
       << format_full(rec.delta_f) << ',' << format_full(rec.delta_f_star)
       << ',';
    if (!rec.event.is_update()) {
      os << serialize_function(rec.event.replacement().incoming);
    }
    os << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const AggregateResult& result) {
  os << "checkpoint_T,series,mean,stderr\n";
  const auto row = [&os](std::int64_t t, const char* series, double mean,
                         double se) {
    os << t << ',' << series << ',' << format_full(mean) << ','
       << format_full(se) << '\n';
  };
  for (const CheckpointStats& cp : result.checkpoints) {
    row(cp.t, "reg_rate", cp.mean_reg_rate, cp.se_reg_rate);
    row(cp.t, "ben_rate", cp.mean_ben_rate, cp.se_ben_rate);
    row(cp.t, "pot_rate", cp.mean_pot_rate, cp.se_pot_rate);
    row(cp.t, "bound_pot_rate", cp.bound_pot_rate, 0.0);
    row(cp.t, "bound_reg_rate_finite", cp.bound_reg_rate_finite, 0.0);
    row(cp.t, "bound_reg_rate_asymptotic", cp.bound_reg_rate_asymptotic, 0.0);
  }
}

void write_metrics_summary_csv(std::ostream& os,
                               const AggregateResult& result) {
  os << "T,mean_reg,mean_ben,mean_pot,mean_reg_per_T,mean_pot_per_T,"
        "trial_count\n";
  for (const CheckpointStats& cp : result.checkpoints) {
    os << cp.t << ',' << format_full(cp.mean_reg) << ','
       << format_full(cp.mean_ben) << ',' << format_full(cp.mean_pot) << ','
       << format_full(cp.mean_reg_rate) << ',' << format_full(cp.mean_pot_rate)
       << ',' << result.config.trials << '\n';
  }
}

void write_manifest(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# experiment manifest (resolved config)\n";
  os << "# version = " << kVersion << '\n';
  os << "n = " << cfg.n << '\n';
  os << "alpha = " << format_full(cfg.alpha) << '\n';
  os << "beta = " << format_full(cfg.resolved_beta()) << '\n';
  os << "p = " << format_full(cfg.resolved_p()) << '\n';
  os << "t = " << cfg.horizon << '\n';
  os << "trials = " << cfg.trials << '\n';
  os << "seed = " << cfg.master_seed << '\n';
  os << "mode = " << to_string(cfg.mode) << '\n';
  os << "step = " << to_string(cfg.step) << '\n';
  os << "workers = " << cfg.workers << '\n';
  if (!cfg.out.empty()) os << "out = " << cfg.out << '\n';
}

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  body(os);
  os.flush();
  if (!os) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace openrcd
