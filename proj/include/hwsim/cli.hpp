//===- cli.hpp - Command-line entry points ----------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hwsim {

/// Exit codes: 0 success, 1 parse error, 2 preprocess/static error,
/// 3 runtime error, 4 assertion or fatal failure.
struct RunOptions {
  std::string designPath;
  std::string topSymbol; // empty: taken from the stimulus
  std::string stimPath;
  std::string vcdPath; // empty: no waveform written
  std::optional<uint64_t> maxEvalSteps;
  std::optional<uint64_t> seed; // randomized scheduler tie-breaking
  bool traceAll = false;
  std::string logPath; // redirect sv task output; empty: stdout
  std::vector<std::string> fdMappings; // "0x00000001=stdout" entries
};

int cliRun(const RunOptions &opts, std::ostream &out, std::ostream &err);
int cliCheck(const std::string &designPath, std::ostream &out,
             std::ostream &err);
int cliFmt(const std::string &designPath, std::ostream &out,
           std::ostream &err);

/// Full argv interface used by the hwsim tool.
int cliMain(int argc, const char *const *argv);

} // namespace hwsim
