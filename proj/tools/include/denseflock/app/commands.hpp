#pragma once

#include "denseflock/config.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace denseflock::app {

enum ExitCode : int { Ok = 0, ConfigFailure = 1, IntegrationFailure = 2, VerificationFailure = 3 };

/// Runs one config and writes trajectory.csv, diagnostics.csv, clusters.csv and the plot
/// data files into config.output_dir.
int cmd_run(const RunConfig& config, std::ostream& log);

struct SweepOptions {
  std::filesystem::path summary = "sweep.csv";
  unsigned jobs = 0;        // 0 uses every hardware thread
  bool write_runs = false;  // also write each run's files into <output_dir>/run_<k>
};

struct SweepRow {
  std::size_t index = 0;
  std::vector<std::string> values;  // one per axis
  std::uint64_t seed = 0;
  std::string status;               // ok | config_error | integration_fault | error
  std::string regime, predicted;    // three_body only
  double mom0 = 0.0, mom1 = 0.0;
  int n_clusters = 0;
  std::string message;
};

/// Runs every grid point. Unless `seed` is swept, run k gets derive_seed(seed, k), so rows do
/// not depend on scheduling. Per-run failures land in their row.
std::vector<SweepRow> run_sweep(const ConfigDocument& document, unsigned jobs, bool write_runs = false);
void write_sweep_csv(std::ostream& out, const ConfigDocument& document, const std::vector<SweepRow>& rows);
int cmd_sweep(const ConfigDocument& document, const SweepOptions& options, std::ostream& log);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
  std::string detail;
};

/// The built-in invariant suite. Every numeric tolerance is multiplied by `tolerance_scale`.
std::vector<CheckResult> run_verification(double tolerance_scale = 1.0);
int cmd_verify(double tolerance_scale, std::ostream& out);

/// Simulates a three_body config and prints simulated and predicted regimes.
int cmd_classify(const RunConfig& config, std::ostream& out);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_text(const std::filesystem::path& path);

}  // namespace denseflock::app
