// Shared helpers for the test suites.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hwsim/engine.hpp"
#include "hwsim/parser.hpp"
#include "hwsim/static_sem.hpp"

namespace hwsim::test {

inline Simulation makeSim(const std::string &text, const std::string &top,
                          SimOptions opts = {}) {
  return Simulation(preprocess(parseSource(text)), top, opts);
}

/// Drive one cycle with integer-valued inputs (in port order); returns the
/// named output as a defined integer, or nullopt when it carries X/Z.
inline std::optional<uint64_t>
cycleOut(Simulation &sim, const std::vector<uint64_t> &inputs,
         const std::string &outPort) {
  const CanonOp &mod = sim.refinedOp(sim.root->mod);
  const TypeExpr &ports = modulePortsOf(mod);
  std::vector<TypedValue> vals;
  for (size_t i = 0; i < inputs.size(); ++i) {
    const TypeRef &ty = ports.fields.at(i).second;
    vals.emplace_back(ty, BitVec4::fromUint(flatWidth(ty), inputs[i]));
  }
  auto outs = sim.runCycle(vals);
  for (auto &[port, v] : outs)
    if (port == outPort)
      return flattenValue(v).toUint64();
  throw SimError(Err::UnknownName, "no output port '" + outPort + "'");
}

/// Clock/reset driver: runs the (clk, rst) sequence and collects outPort
/// values (nullopt for X).
inline std::vector<std::optional<uint64_t>>
driveClkRst(Simulation &sim, const std::vector<std::pair<int, int>> &seq,
            const std::string &outPort) {
  std::vector<std::optional<uint64_t>> out;
  for (auto [clk, rst] : seq)
    out.push_back(cycleOut(sim, {uint64_t(clk), uint64_t(rst)}, outPort));
  return out;
}

inline const char *counterText() {
  return
      "hw.module @Counter(in %clk : !seq.clock, in %rst : i1, out out : i8) "
      "{\n"
      "  %c0 = hw.constant 0 : i8\n"
      "  %c1 = hw.constant 1 : i8\n"
      "  %sum = comb.add %count, %c1 : i8\n"
      "  %next = comb.mux %rst, %c0, %sum : i8\n"
      "  %count = seq.firreg %next clock %clk preset 0 : i8\n"
      "  hw.output %count : i8\n"
      "}\n";
}

} // namespace hwsim::test
