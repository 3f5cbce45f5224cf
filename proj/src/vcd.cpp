//===- vcd.cpp - Value Change Dump output ---------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/vcd.hpp"

#include <map>

namespace hwsim {

void VcdTrace::addCycle(std::vector<BitVec4> values) {
  if (values.size() != signals.size())
    throw SimError(Err::ArityMismatch,
                   "trace cycle has " + std::to_string(values.size()) +
                       " values for " + std::to_string(signals.size()) +
                       " signals");
  cycles.push_back(std::move(values));
}

std::string vcdIdCode(size_t index) {
  // Printable identifier characters '!' (33) .. '~' (126).
  std::string code;
  do {
    code.push_back(static_cast<char>(33 + index % 94));
    index /= 94;
  } while (index > 0);
  return code;
}

namespace {

struct ScopeNode {
  std::map<std::string, ScopeNode> children; // ordered for determinism
  std::vector<size_t> vars;
};

void splitPath(const std::string &path, std::vector<std::string> &out) {
  size_t start = 0;
  while (start <= path.size()) {
    size_t dot = path.find('.', start);
    if (dot == std::string::npos) {
      out.push_back(path.substr(start));
      break;
    }
    out.push_back(path.substr(start, dot - start));
    start = dot + 1;
  }
}

void emitScope(std::ostream &os, const std::string &name,
               const ScopeNode &node, const VcdTrace &trace) {
  os << "$scope module " << name << " $end\n";
  for (size_t idx : node.vars) {
    const VcdSignal &sig = trace.signals[idx];
    os << "$var wire " << sig.width << " " << vcdIdCode(idx) << " " << sig.name
       << " $end\n";
  }
  for (const auto &[childName, child] : node.children)
    emitScope(os, childName, child, trace);
  os << "$upscope $end\n";
}

void emitValue(std::ostream &os, const BitVec4 &v, size_t idx) {
  if (v.width() == 1)
    os << bit4Char(v.bit(0)) << vcdIdCode(idx) << "\n";
  else
    os << "b" << v.toBinaryString() << " " << vcdIdCode(idx) << "\n";
}

} // namespace

void writeVcd(const VcdTrace &trace, std::ostream &os) {
  os << "$timescale 1ns $end\n";

  ScopeNode rootScopes;
  for (size_t i = 0; i < trace.signals.size(); ++i) {
    std::vector<std::string> components;
    splitPath(trace.signals[i].scopePath, components);
    ScopeNode *node = &rootScopes;
    for (const std::string &c : components)
      node = &node->children[c];
    node->vars.push_back(i);
  }
  for (const auto &[name, node] : rootScopes.children)
    emitScope(os, name, node, trace);
  if (!rootScopes.vars.empty()) {
    // Signals without a scope path land in an implicit top scope.
    emitScope(os, "top", rootScopes, trace);
  }
  os << "$enddefinitions $end\n";

  for (size_t t = 0; t < trace.cycles.size(); ++t) {
    os << "#" << t << "\n";
    if (t == 0) {
      os << "$dumpvars\n";
      for (size_t i = 0; i < trace.signals.size(); ++i)
        emitValue(os, trace.cycles[0][i], i);
      os << "$end\n";
    } else {
      for (size_t i = 0; i < trace.signals.size(); ++i)
        if (!(trace.cycles[t][i] == trace.cycles[t - 1][i]))
          emitValue(os, trace.cycles[t][i], i);
    }
  }
  if (!os)
    throw SimError(Err::SinkError, "failed writing VCD output");
  os.flush();
  if (!os)
    throw SimError(Err::SinkError, "failed writing VCD output");
}

} // namespace hwsim
