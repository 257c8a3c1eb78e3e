#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "quenchbat/model_zoo.hpp"

namespace quenchbat::cli {

// Config dialect "quenchbat-ini-v1": INI sections of key = value pairs,
// '#' or ';' comments, one top-level key `command`. Exactly one model
// section ([ising], [xy], [cluster], [ssh]) defines phase A; [quench]
// param/amount derives phase B from it. Unknown sections or keys,
// duplicate keys, and malformed values are ConfigError, naming the field.

enum class Command { kCurve, kSweep, kPower, kScaling, kKinks, kRecurrence };
enum class ModelKind { kIsing, kXy, kCluster, kSsh };
// What a sweep value is applied to: the initial phase (final fixed at base
// plus quench), the final phase (initial fixed at base), or both phases
// co-moving (initial at the value, final at the value plus the quench).
enum class SweepTarget { kInitial, kFinal, kBoth };

struct TauRange {
  double from = 1e-3;
  double to = 50.0;
  std::size_t count = 400;
  bool log_spacing = true;
};

struct RunConfig {
  Command command = Command::kCurve;

  ModelKind model = ModelKind::kIsing;
  IsingParams ising;
  XYParams xy;
  ClusterIsingParams cluster;
  SshParams ssh;
  bool ssh_protocol = false;
  SshProtocolParams protocol;
  double protocol_delta1 = 0.0;

  std::string quench_param;
  double quench_amount = 0.0;

  bool finite_grid = true;
  std::size_t grid_modes = 256;
  bool integer_offset = false;
  double grid_rel_tol = 1e-9;

  double beta = std::numeric_limits<double>::infinity();
  double mu = 0.0;

  double tau_value = std::numeric_limits<double>::infinity();
  TauRange tau_range;
  // Explicit curve tau samples; when nonempty these replace tau_range.
  std::vector<double> tau_values;

  std::string sweep_param;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  double sweep_step = 0.0;
  SweepTarget sweep_target = SweepTarget::kInitial;

  std::vector<std::size_t> scaling_n_list;

  double kink_threshold = 10.0;

  // Defaults to twice the chain size when the config omits it.
  double recurrence_tau_max = 100.0;
  double recurrence_dt = 0.05;
  std::size_t recurrence_window = 50;
  double recurrence_onset_factor = 5.0;

  std::string output_dir = ".";
};

// Parses config text; throws ConfigError with the offending field's name.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Fully resolved config re-serialized in the dialect, defaults filled in,
// keys in fixed order. Parsing it back reproduces the same RunConfig, so a
// run is repeatable byte for byte from its manifest.
std::string canonical_ini(const RunConfig& config);

struct RunOutputs {
  std::vector<std::string> files;  // paths written, manifest last
};

// Executes the configured command, writing CSV outputs and manifest.json
// into out_dir (created if absent). workers = 0 resolves from the
// environment; seed is recorded in the manifest.
RunOutputs run(const RunConfig& config, const std::string& out_dir, int workers,
               std::uint64_t seed);

// Full command-line entry: --config PATH [--out DIR] [--workers N]
// [--seed S]. Returns 0 on success, 2 on configuration errors, 3 on
// numerical failures.
int cli_main(int argc, const char* const* argv);

}  // namespace quenchbat::cli
