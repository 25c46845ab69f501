#pragma once

#include "hsfroute/fault_model.hpp"
#include "hsfroute/sim_engine.hpp"
#include "hsfroute/verification.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hsfroute {

enum class Mode { Simulate, Verify, Trace };
std::string to_string(Mode m);
Mode parse_mode(const std::string &s);

struct ExperimentSpec {
  NetworkConfig grid;
  FaultModel model = FaultModel::Random;
  std::vector<double> fault_pcts{1, 2, 3, 4, 5};
  int runs = 100;
  std::uint64_t seed = 42;
  std::filesystem::path out_dir = "results";
  Mode mode = Mode::Simulate;
  std::optional<Coord> trace_dst;
  std::optional<std::filesystem::path> faults_file;
  int jobs = 1;

  /// Throws UsageError.
  void validate() const;
};

/// Default output directory: $HSFROUTE_OUT_DIR when set, else "results".
std::filesystem::path default_out_dir();

/// Throws UsageError for bad flags or values. `--help` also throws
/// UsageError carrying the help text, with `help_requested` set.
ExperimentSpec parse_args(int argc, const char *const *argv, bool *help_requested = nullptr);

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2, kExitIo = 3 };

/// One sampled configuration carried through verification and simulation.
struct RunOutcome {
  FaultSet faults;
  Report report;
  std::optional<RunMetrics> metrics; // empty when the configuration is invalid
  std::string error;                 // why simulation was skipped or failed
};

FaultSet sample_faults(const NetworkConfig &grid, FaultModel model, double pct,
                       std::uint64_t seed);

RunOutcome run_configuration(const Network &net, const FaultSet &faults, double pct,
                             bool simulate = true);

/// Runs `count` configurations with seeds seed, seed+1, ... on `jobs`
/// threads. Results come back in seed order.
std::vector<RunOutcome> run_point(const Network &net, FaultModel model, double pct,
                                  std::uint64_t seed, int count, int jobs, bool simulate);

/// Executes the spec, writing artifacts under spec.out_dir and a short log
/// to `log`. Returns an ExitCode; I/O failures throw IoError.
int run_experiment(const ExperimentSpec &spec, std::ostream &log);

} // namespace hsfroute
