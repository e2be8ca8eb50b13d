#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "openrcd/experiment.hpp"

namespace openrcd::cli {

/// Bad flag/config-file input; the message names the offending field.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One layer of settings (config file or command-line flags); unset fields
/// fall through to the layer below.
struct RawOptions {
  std::optional<int> n;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> kappa;
  std::optional<double> p;
  std::optional<double> rho_r;
  std::optional<std::int64_t> t;
  std::optional<int> trials;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> step;
  std::optional<std::string> out;
};

/// Parses flat "key = value" lines ('#' starts a comment). Unknown keys and
/// malformed values raise config_error naming the key. Keys mirror the flag
/// names: n, alpha, beta, kappa, p, rho-r, t, trials, seed, mode, step,
/// workers, out.
RawOptions parse_config_stream(std::istream& is);
RawOptions parse_config_file(const std::string& path);

/// Defaults <- file <- flags, with the paired knobs (beta|kappa, p|rho-r)
/// resolved per layer: setting either member of a pair in a higher layer
/// overrides both members below; setting both in one layer is an error.
ExperimentConfig resolve_config(const RawOptions& file, const RawOptions& flags);

/// Full command-line entry point. Exit code 0 on success, 1 on config
/// errors, 2 when a run finished but a bound was breached beyond 3 standard
/// errors.
int run_cli(int argc, const char* const* argv);

}  // namespace openrcd::cli
