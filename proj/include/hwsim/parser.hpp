//===- parser.hpp - Generic MLIR text parsing ------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <string_view>

#include "hwsim/ast.hpp"

namespace hwsim {

/// Parse MLIR source text (generic form, plus custom forms for the supported
/// hw/comb/seq/sv operations). Throws SimError(Err::Parse) with a source
/// position on malformed input.
SourceFile parseSource(std::string_view text);

/// Parse a single type from text, e.g. "i8" or "!hw.array<4xi8>".
TypeRef parseTypeString(std::string_view text);

/// Parse a single attribute value from text, e.g. "5 : i8".
AttrRef parseAttrString(std::string_view text);

} // namespace hwsim
