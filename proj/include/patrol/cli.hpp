// Command-line front end: analyze, tour, extremity, patrol, attack, evaluate, oracle, value, fixtures.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "patrol/io.hpp"

namespace patrol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolation = 3;

struct CommandReport {
  int exit_code = kExitOk;
  /// Empty for --help and for errors.
  Json document;
};

/// `args` excludes the program name. The report is written to `out` (as JSON or a table),
/// usage and error messages to `err`.
CommandReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Renders a report as aligned "key: value" lines; exact/decimal pairs print as "p/q (0.xxx)".
std::string render_table(const Json& doc);

}  // namespace patrol::cli
