#pragma once

#include <string>

#include <json.hpp>

#include "pairwave/config.hpp"

namespace pairwave {

inline constexpr const char* kToolVersion = "pairwave 0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

struct RunResult {
  std::string payload;      // CSV or JSON text
  nlohmann::json metadata;  // sidecar record
  int exit_code = kExitOk;
};

/// Executes one configured experiment in memory.
RunResult execute(const RunConfig& config);

/// Executes and writes the payload (atomically) plus `<out>.meta.json`.
/// Without an output path the payload goes to stdout and no sidecar is
/// written. Returns the process exit status.
int run(const RunConfig& config);

}  // namespace pairwave
