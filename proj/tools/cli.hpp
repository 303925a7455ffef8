#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavn/domain.hpp"
#include "wavn/sim.hpp"

namespace wavn::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kRuntime = 2,
  kVerifyFailed = 3,
};

/// Bad flag, bad config-file key or value, or a config invariant violation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  WorldConfig config;
  std::optional<DegradationScenario> scenario;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::filesystem::path> verify_file;
  bool help = false;
  std::string help_text;
};

/// Defaults, then `--config FILE` (JSON keyed by long flag names), then
/// flags. Throws UsageError; the message names the offending flag or key.
Options parse_config(const std::vector<std::string>& args);

struct RunSummary {
  std::size_t total_blocks = 0;
  std::uint64_t total_transactions = 0;
  std::uint64_t pair_observations = 0;
  std::optional<std::size_t> max_common_landmarks;
  std::optional<std::size_t> min_common_landmarks;
  std::vector<std::size_t> generator_histogram;
  std::vector<double> final_stakes;
  double wall_clock_seconds = 0.0;
};

RunSummary summarize(const ExperimentState& state, double wall_clock_seconds);

/// Structured report written to summary.json. Wall-clock time is left out so
/// repeated runs export identical bytes.
std::string summary_json(const RunSummary& summary);

/// Human-readable report printed to standard output.
void print_summary(std::ostream& out, const RunSummary& summary);

void write_trajectories_csv(std::ostream& out, const ExperimentState& state);
void write_timeseries_csv(std::ostream& out, const ExperimentState& state);

inline constexpr const char* kLedgerFile = "ledger.jsonl";
inline constexpr const char* kTrajectoriesFile = "trajectories.csv";
inline constexpr const char* kTimeseriesFile = "timeseries.csv";
inline constexpr const char* kSummaryFile = "summary.json";

/// Runs the experiment and, when `out_dir` is set, writes the ledger dump,
/// trajectories, time series and summary into it. Throws std::runtime_error
/// on I/O failure.
RunSummary run_and_export(const WorldConfig& config,
                          const std::optional<DegradationScenario>& scenario,
                          const std::optional<std::filesystem::path>& out_dir);

struct VerifyOutcome {
  bool valid = false;
  std::size_t blocks = 0;
  std::optional<std::size_t> first_invalid;
  std::string error;  // set when the file could not be decoded
};

/// Throws std::runtime_error when the file cannot be opened.
VerifyOutcome verify_ledger_file(const std::filesystem::path& path);

/// Whole command: parse, dispatch, map failures to exit codes.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavn::cli
