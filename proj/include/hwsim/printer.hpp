//===- printer.hpp - Canonical generic-form text output --------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <string>

#include "hwsim/ast.hpp"

namespace hwsim {

/// Emit a source file in generic form such that parsing the output yields a
/// structurally identical tree. Deterministic; attribute entries keep source
/// order.
std::string printFile(const SourceFile &file);

std::string printOperation(const Operation &op, unsigned indent = 0);

} // namespace hwsim
