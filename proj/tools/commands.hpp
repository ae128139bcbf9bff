#ifndef STRMON_TOOLS_COMMANDS_HPP
#define STRMON_TOOLS_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace strmon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolated = 2;

struct RunConfig {
  std::filesystem::path signal_path;
  std::filesystem::path spec_path;
  std::optional<std::int64_t> t;  // defaults to the signal's first time
  std::int64_t dt_max = 50;
  std::string norm = "l2";          // l2 | linf
  std::string padding = "strict";   // strict | clamp
  std::filesystem::path out_dir = ".";
  int jobs = 1;
  bool naive = false;
  std::vector<std::string> labels;  // explain: top-level conjunct names
};

struct OracleCheckConfig {
  RunConfig run;
  double grid_step = 0.25;
  double grid_cap = 2.0;
  /// Verifier mode: check this envelope file instead of running the monitor.
  std::optional<std::filesystem::path> envelope_path;
};

/// Writes envelope.csv and report.json under out_dir.
/// Exit 0 when the envelope is non-empty, 2 when violated, 1 on error.
int cmd_monitor(const RunConfig& cfg);

/// Writes one <label>.csv per top-level conjunct, binding.csv naming the
/// binding conjunct per temporal level, root.csv, and report.json.
int cmd_explain(const RunConfig& cfg);

/// Emits the synthetic case-study inputs ("f16like" or "robotaxi").
int cmd_generate(const std::string& casename,
                 const std::filesystem::path& out_dir);

/// Checks the monitor (or a supplied envelope file) against the brute-force
/// ground truth and the qualitative semantics; writes verdict.json.
int cmd_oracle_check(const OracleCheckConfig& cfg);

}  // namespace strmon::cli

#endif  // STRMON_TOOLS_COMMANDS_HPP
