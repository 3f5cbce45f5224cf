//===- diag.hpp - Error kinds and diagnostics -----------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <atomic>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hwsim {

/// Source position, 1-based. Column 0 means "unknown column".
struct SourceLoc {
  uint32_t line = 0;
  uint32_t column = 0;
  bool valid() const { return line != 0; }
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

enum class Err : uint8_t {
  // Parse and static (preprocessing) errors.
  Parse,
  DuplicateAlias,
  DuplicateSymbol,
  UnresolvedAlias,
  UnknownAlias,
  AliasCycle,
  DuplicateKey,
  MalformedAttribute,
  WidthCap,
  // Runtime errors.
  UnknownSymbol,
  WidthMismatch,
  TypeMismatch,
  ArityMismatch,
  PortMismatch,
  EmptyOperandList,
  DoubleWrite,
  UndefinedValue,
  UnknownName,
  DuplicateName,
  PrematureFinish,
  MultiBlockRegion,
  Deadlock,
  UnknownOperation,
  RecursionLimit,
  OutOfRange,
  UnknownField,
  MissingClock,
  MissingEvent,
  LoopBound,
  UndefinedMacro,
  BadFormat,
  DanglingRef,
  DuplicateDriver,
  SinkError,
  EvalBudget,
  // Recorded, never thrown: result is all-X plus a diagnostic.
  DivisionByZero,
  kNumKinds_,
};

constexpr size_t kNumErrKinds = static_cast<size_t>(Err::kNumKinds_);

std::string_view errName(Err e);

/// True for errors that can only arise while parsing or preprocessing a
/// design; used by the CLI to pick exit codes.
bool isStaticErr(Err e);

/// The one exception type of the engine. Carries the error kind plus
/// whatever context was available at the raise site (op name, instance
/// path, source position).
class SimError : public std::runtime_error {
public:
  SimError(Err kind, std::string message, std::optional<SourceLoc> loc = {});

  Err kind;
  std::optional<SourceLoc> loc;
  std::string opName;       // offending operation, if known
  std::string instancePath; // dotted instance path, if known

  /// Full human-readable message including all attached context.
  std::string render() const;

  /// Per-kind raise counters, used by the coverage report to check that
  /// every error path has been exercised at least once.
  static std::array<std::atomic<uint64_t>, kNumErrKinds> &counters();
  static void resetCounters();
};

/// Non-fatal diagnostics (dropped writes, X conditions, division by zero...).
struct Diagnostic {
  std::string message;
  std::optional<SourceLoc> loc;
};

/// Bump the per-kind counter for error paths that are reported as
/// diagnostics rather than thrown.
void countErrorPath(Err e);

} // namespace hwsim
