#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ivest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // numeric, sampling or I/O failure
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Normal output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

struct Validation {
  bool ok = false;
  std::size_t rows = 0;
  std::string message;
};

/// Checks experiment CSV, scatter CSV or experiment JSON against the schema
/// the CLI writes.
Validation validate_output(const std::string& text);

}  // namespace ivest::cli
