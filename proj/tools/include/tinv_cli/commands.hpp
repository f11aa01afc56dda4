#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tinv_cli/config.hpp"

namespace tinv::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kMathError = 2,
  kVerificationFailed = 3,
};

const std::vector<std::string>& command_names();

/// Command line settings that override the config.
struct RunOptions {
  std::string config;                       // path or built-in name
  std::vector<std::vector<double>> points;  // replaces the config's points when non-empty
  std::optional<std::uint64_t> points_seed;
  std::optional<double> tol;
  std::optional<std::string> format;
  std::optional<RicciConvention> ricci;
  std::optional<std::string> out_dir;
  bool source_derivatives = false;
};

/// Runs one command; errors are reported on `err` and mapped to exit codes.
int run(const std::string& command, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// "1,2,3" -> {1, 2, 3}; throws ConfigError.
std::vector<double> parse_point(const std::string& text);

}  // namespace tinv::cli
