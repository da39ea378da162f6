#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace polybox::cli {

inline constexpr const char* kToolName = "polybox";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

/// Flag name without dashes -> value ("true" for switches).
using Params = std::map<std::string, std::string>;

struct Report {
  nlohmann::json json;  // {"manifest": ..., "result": ...}
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kExitOk;

  std::string csv() const;
};

/// Leaf command names, e.g. "count-box", "detlab ord", "ec scan19".
std::vector<std::string> command_names();

/// Runs one leaf command on already-parsed flags. Library errors propagate.
Report execute(const std::string& command, const Params& params, unsigned jobs = 1);

/// Re-runs the command recorded in a manifest (or in a report embedding one).
Report replay(const nlohmann::json& manifest_or_report, unsigned jobs = 1);

/// argv without the program name. Reports go to `out`, error JSON and usage text to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Report with manifest.timestamp removed.
nlohmann::json strip_timestamp(nlohmann::json report);

/// 16 hex digits of FNV-1a over the manifest without its timestamp.
std::string manifest_hash(const nlohmann::json& manifest);

}  // namespace polybox::cli
