//===- static_sem.hpp - MLIR static semantics ------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Preprocessing turns a parsed SourceFile into the MLIR state: resolved
// alias maps, operations in canonical form, and a symbol table. The lookup
// functions rta/raa/rop are the interface the hardware layers use.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hwsim/ast.hpp"

namespace hwsim {

enum class Phase { Preprocess, Simulation, Debug };

struct CanonOp;

struct CanonBlock {
  std::string label; // empty if the entry block was unlabeled
  std::vector<std::pair<std::string, TypeRef>> args;
  std::vector<CanonOp> ops;
};

struct CanonRegion {
  std::vector<CanonBlock> blocks;
};

/// Canonical operation: properties merged into one attribute dictionary,
/// aliases resolved, locations stripped, value ids unique within the whole
/// top-level operation, result groups expanded, function type distributed
/// onto operandTypes/resultTypes.
struct CanonOp {
  std::string name;
  std::vector<std::string> operands;
  DictAttr attrs;
  std::vector<CanonRegion> regions;
  std::vector<std::string> resultIds;
  std::vector<TypeRef> operandTypes;
  std::vector<TypeRef> resultTypes;
  uint32_t seq = 0; // stable preorder number, used for scheduling ties
  SourceLoc loc;

  const AttrRef *attr(std::string_view key) const {
    return dictGet(attrs, key);
  }
};

bool canonOpEquals(const CanonOp &a, const CanonOp &b);

struct MlirState {
  Phase phase = Phase::Preprocess;
  std::map<std::string, TypeRef> types; // alias name (no '!') -> resolved
  std::map<std::string, AttrRef> attrs; // alias name (no '#') -> resolved
  std::map<std::string, CanonOp> table; // symbol -> canonical operation
  /// Unsymboled top-level operations, in source order, for the CIRCT layer
  /// to consume as commands (Mop).
  std::vector<CanonOp> pendingCommands;
  std::string debugMessage;

  const TypeRef &rta(const std::string &alias) const;
  const AttrRef &raa(const std::string &alias) const;
  const CanonOp &rop(const std::string &symbol) const;
};

/// Run the three preprocessing phases (assign aliases, normalize operations,
/// construct symbol table) and transition to the simulation phase.
MlirState preprocess(const SourceFile &file);

} // namespace hwsim
