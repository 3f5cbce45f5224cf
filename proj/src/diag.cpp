//===- diag.cpp ------------------------------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/diag.hpp"

namespace hwsim {

std::string_view errName(Err e) {
  switch (e) {
  case Err::Parse: return "ParseError";
  case Err::DuplicateAlias: return "DuplicateAlias";
  case Err::DuplicateSymbol: return "DuplicateSymbol";
  case Err::UnresolvedAlias: return "UnresolvedAlias";
  case Err::UnknownAlias: return "UnknownAlias";
  case Err::AliasCycle: return "AliasCycle";
  case Err::DuplicateKey: return "DuplicateKey";
  case Err::MalformedAttribute: return "MalformedAttribute";
  case Err::WidthCap: return "WidthCap";
  case Err::UnknownSymbol: return "UnknownSymbol";
  case Err::WidthMismatch: return "WidthMismatch";
  case Err::TypeMismatch: return "TypeMismatch";
  case Err::ArityMismatch: return "ArityMismatch";
  case Err::PortMismatch: return "PortMismatch";
  case Err::EmptyOperandList: return "EmptyOperandList";
  case Err::DoubleWrite: return "DoubleWrite";
  case Err::UndefinedValue: return "UndefinedValue";
  case Err::UnknownName: return "UnknownName";
  case Err::DuplicateName: return "DuplicateName";
  case Err::PrematureFinish: return "PrematureFinish";
  case Err::MultiBlockRegion: return "MultiBlockRegion";
  case Err::Deadlock: return "Deadlock";
  case Err::UnknownOperation: return "UnknownOperation";
  case Err::RecursionLimit: return "RecursionLimit";
  case Err::OutOfRange: return "OutOfRange";
  case Err::UnknownField: return "UnknownField";
  case Err::MissingClock: return "MissingClock";
  case Err::MissingEvent: return "MissingEvent";
  case Err::LoopBound: return "LoopBound";
  case Err::UndefinedMacro: return "UndefinedMacro";
  case Err::BadFormat: return "BadFormat";
  case Err::DanglingRef: return "DanglingRef";
  case Err::DuplicateDriver: return "DuplicateDriver";
  case Err::SinkError: return "SinkError";
  case Err::EvalBudget: return "EvalBudget";
  case Err::DivisionByZero: return "DivisionByZero";
  case Err::kNumKinds_: break;
  }
  return "UnknownError";
}

bool isStaticErr(Err e) {
  switch (e) {
  case Err::Parse:
  case Err::DuplicateAlias:
  case Err::DuplicateSymbol:
  case Err::UnresolvedAlias:
  case Err::UnknownAlias:
  case Err::AliasCycle:
  case Err::DuplicateKey:
  case Err::MalformedAttribute:
  case Err::WidthCap:
    return true;
  default:
    return false;
  }
}

SimError::SimError(Err k, std::string message, std::optional<SourceLoc> l)
    : std::runtime_error(std::move(message)), kind(k), loc(l) {
  counters()[static_cast<size_t>(k)].fetch_add(1, std::memory_order_relaxed);
}

std::string SimError::render() const {
  std::string out(errName(kind));
  out += ": ";
  out += what();
  if (!opName.empty())
    out += " [op " + opName + "]";
  if (!instancePath.empty())
    out += " [instance " + instancePath + "]";
  if (loc && loc->valid())
    out += " at " + loc->str();
  return out;
}

std::array<std::atomic<uint64_t>, kNumErrKinds> &SimError::counters() {
  static std::array<std::atomic<uint64_t>, kNumErrKinds> c{};
  return c;
}

void SimError::resetCounters() {
  for (auto &c : counters())
    c.store(0, std::memory_order_relaxed);
}

void countErrorPath(Err e) {
  SimError::counters()[static_cast<size_t>(e)].fetch_add(
      1, std::memory_order_relaxed);
}

} // namespace hwsim
