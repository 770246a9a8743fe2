#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace obtf::cli {

/// Process exit statuses.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUserError = 2,
  kEnvironmentError = 3,
};

enum class OutputFormat { kTable, kJson, kCsv };

struct IntRange {
  int lo;
  int hi;
};

/// "3" or "2..5".
IntRange parse_range(const std::string& text);

struct RunConfig {
  std::string command;             // census | verify | analyze | posets
  std::optional<std::string> quantity;
  std::optional<std::string> range;
  std::optional<std::string> convention;  // t0 | t1; both when unset
  std::optional<std::string> method;
  int workers = 1;
  std::optional<std::string> cache;       // defaults to $OBTF_CACHE
  OutputFormat format = OutputFormat::kTable;
  std::uint64_t seed = 20240611;
  bool big = false;
  std::optional<std::string> mutant;      // verify only: "obtf-inverted"
  std::optional<std::string> path;        // analyze input
  std::optional<std::string> formula_path;
  std::optional<std::string> poset_path;
};

/// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obtf::cli
