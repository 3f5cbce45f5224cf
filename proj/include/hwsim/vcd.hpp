//===- vcd.hpp - Value Change Dump output -----------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hwsim/bitvec.hpp"

namespace hwsim {

struct VcdSignal {
  std::string scopePath; // dotted instance path, e.g. "Top.c1"
  std::string name;
  uint32_t width = 1;
};

/// Ordered per-signal value records, one timestamp per cycle (t = cycle
/// index). Values are stored fully per cycle; the writer emits only changes
/// after the initial dump.
struct VcdTrace {
  std::vector<VcdSignal> signals;
  std::vector<std::vector<BitVec4>> cycles; // cycles[t][signalIndex]

  void addCycle(std::vector<BitVec4> values);
};

/// Short printable identifier for a VCD variable index.
std::string vcdIdCode(size_t index);

/// Serialize: timescale, nested scopes mirroring the hierarchy, variable
/// declarations, a full dump at t=0, then per-cycle changes. Throws
/// SimError(Err::SinkError) when the sink fails.
void writeVcd(const VcdTrace &trace, std::ostream &os);

} // namespace hwsim
