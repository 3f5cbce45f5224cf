//===- stimulus.hpp - JSON stimulus files -----------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hwsim/value.hpp"

namespace hwsim {

/// Declarative per-cycle input description. Inputs omitted from a cycle hold
/// their previous value; on the first cycle an unspecified input is all-X.
struct Stimulus {
  std::string top;
  std::vector<std::map<std::string, std::string>> cycles;
  std::optional<std::vector<std::string>> record; // signal names / paths
  std::optional<uint64_t> maxEvalSteps;
};

/// Parse a stimulus JSON document. Throws SimError(Err::BadFormat) on
/// malformed documents.
Stimulus parseStimulus(const std::string &jsonText);
Stimulus loadStimulusFile(const std::string &path);

/// Convert a stimulus literal ("0", "1", "42", "0x2a", "x", "z") to a value
/// of the given port type.
TypedValue literalToValue(const std::string &literal, const TypeRef &ty);

} // namespace hwsim
