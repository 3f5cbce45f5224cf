//===- engine.cpp - Generic hardware model and scheduler ---------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/engine.hpp"

#include <algorithm>
#include <iostream>

#include "hwsim/printer.hpp"

namespace hwsim {

std::string InstanceState::pathKey() const {
  std::string key;
  for (size_t i = 0; i < cid.size(); ++i) {
    if (i)
      key += ".";
    key += cid[i];
  }
  return key;
}

//===----------------------------------------------------------------------===//
// Registry
//===----------------------------------------------------------------------===//

OpRegistry &OpRegistry::global() {
  static OpRegistry r;
  return r;
}

void OpRegistry::add(const std::string &name, OpInfo info) {
  table_[name].eval = info.eval;
  table_[name].preprocess = info.preprocess;
  table_[name].proceduralBlock = info.proceduralBlock;
  table_[name].deferredOperands = std::move(info.deferredOperands);
}

const OpInfo *OpRegistry::find(const std::string &name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, const OpInfo *>> OpRegistry::entries() const {
  std::vector<std::pair<std::string, const OpInfo *>> out;
  for (const auto &[name, info] : table_)
    out.emplace_back(name, &info);
  return out;
}

void OpRegistry::resetHits() {
  for (auto &[name, info] : table_)
    info.hits.store(0, std::memory_order_relaxed);
}

void ensureDialectsRegistered() {
  static bool done = [] {
    OpRegistry &r = OpRegistry::global();
    registerCombDialect(r);
    registerHwDialect(r);
    registerSeqDialect(r);
    registerSvDialect(r);
    return true;
  }();
  (void)done;
}

//===----------------------------------------------------------------------===//
// bits() and hardware-domain refinement
//===----------------------------------------------------------------------===//

std::vector<BitVec4> bitsOf(const std::vector<TypedValue> &vals,
                            const std::vector<uint32_t> &widths) {
  if (vals.size() != widths.size())
    throw SimError(Err::WidthMismatch, "value/width arity mismatch in bits()");
  std::vector<BitVec4> out;
  out.reserve(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].isBits())
      throw SimError(Err::WidthMismatch,
                     "expected an integer value, got " +
                         typeToString(vals[i].ty));
    if (vals[i].bits().width() != widths[i])
      throw SimError(Err::WidthMismatch,
                     "expected width " + std::to_string(widths[i]) + ", got " +
                         std::to_string(vals[i].bits().width()));
    out.push_back(vals[i].bits());
  }
  return out;
}

namespace {

const std::vector<std::string_view> *attrAllowlist(const std::string &name) {
  static const std::map<std::string, std::vector<std::string_view>> lists = {
      {"hw.module", {"sym_name", "module_type"}},
      {"hw.output", {}},
      {"hw.constant", {"value"}},
      {"hw.aggregate_constant", {"value"}},
      {"hw.enum.constant", {"field"}},
      {"hw.enum.cmp", {}},
      {"hw.instance",
       {"instanceName", "moduleName", "argNames", "resultNames"}},
      {"hw.bitcast", {}},
      {"hw.wire", {"inner_sym", "name"}},
      {"hw.hierpath", {"sym_name", "namepath"}},
      {"hw.array_create", {}},
      {"hw.array_get", {}},
      {"hw.array_slice", {}},
      {"hw.array_concat", {}},
      {"hw.struct_create", {}},
      {"hw.struct_extract", {"field"}},
      {"hw.struct_inject", {"field"}},
      {"hw.struct_explode", {}},
      {"hw.union_create", {"field"}},
      {"hw.union_extract", {"field"}},
      {"comb.icmp", {"predicate"}},
      {"comb.extract", {"lowBit"}},
      {"comb.truth_table", {"lookupTable"}},
      {"seq.firreg", {"reset", "preset", "inner_sym"}},
      {"seq.firmem", {"readLatency", "writeLatency", "inner_sym"}},
      {"seq.firmem.read_port", {"hasEnable"}},
      {"seq.firmem.write_port", {"hasEnable"}},
      {"seq.firmem.read_write_port", {"hasEnable"}},
      {"sv.reg", {"inner_sym", "name"}},
      {"sv.logic", {"inner_sym", "name"}},
      {"sv.wire", {"inner_sym", "name"}},
      {"sv.alwaysff", {"clockEdge", "resetStyle", "resetEdge"}},
      {"sv.always", {"events"}},
      {"sv.case", {"caseValues", "hasDefault"}},
      {"sv.assert", {"label"}},
      {"sv.assume", {"label"}},
      {"sv.cover", {"label"}},
      {"sv.error", {"message"}},
      {"sv.warning", {"message"}},
      {"sv.info", {"message"}},
      {"sv.fatal", {"message"}},
      {"sv.fwrite", {"format"}},
      {"sv.macro.decl", {"name"}},
      {"sv.macro.def", {"name", "value"}},
      {"sv.macro.ref", {"macro"}},
      {"sv.macro.ref.se", {"macro"}},
      {"sv.ifdef", {"macro"}},
      {"sv.ifdef.procedural", {"macro"}},
  };
  auto it = lists.find(name);
  return it == lists.end() ? nullptr : &it->second;
}

// Generic comb ops carry no semantic attributes.
bool combNoAttrs(const std::string &name) {
  return name.rfind("comb.", 0) == 0 && name != "comb.icmp" &&
         name != "comb.extract" && name != "comb.truth_table";
}

} // namespace

CanonOp canonicalizeHw(const CanonOp &op) {
  CanonOp out = op;
  if (op.name == "seq.firmem" && op.attr("mask"))
    throw SimError(Err::MalformedAttribute,
                   "seq.firmem write masks are not supported", op.loc);
  const auto *allow = attrAllowlist(op.name);
  if (allow || combNoAttrs(op.name)) {
    DictAttr kept;
    for (const auto &[k, v] : op.attrs) {
      bool keep = false;
      if (allow)
        keep = std::find(allow->begin(), allow->end(), k) != allow->end();
      if (keep)
        kept.emplace_back(k, v);
    }
    out.attrs = std::move(kept);
  }
  for (CanonRegion &region : out.regions)
    for (CanonBlock &block : region.blocks)
      for (CanonOp &inner : block.ops)
        inner = canonicalizeHw(inner);
  return out;
}

//===----------------------------------------------------------------------===//
// Module ports helper
//===----------------------------------------------------------------------===//

const TypeExpr &modulePortsOf(const CanonOp &moduleOp) {
  const AttrRef *mt = moduleOp.attr("module_type");
  if (!mt || (*mt)->kind != AttrExpr::Kind::Type ||
      (*mt)->typeVal->kind != TypeExpr::Kind::Module)
    throw SimError(Err::MalformedAttribute,
                   "hw.module lacks a module_type attribute", moduleOp.loc);
  const TypeExpr &ports = *(*mt)->typeVal;
  auto checkUnique = [&](const std::vector<std::pair<std::string, TypeRef>> &ps,
                         const char *dir) {
    for (size_t i = 0; i < ps.size(); ++i)
      for (size_t j = i + 1; j < ps.size(); ++j)
        if (ps[i].first == ps[j].first)
          throw SimError(Err::DuplicateName,
                         std::string(dir) + " port '" + ps[i].first +
                             "' is declared twice",
                         moduleOp.loc);
  };
  checkUnique(ports.fields, "input");
  checkUnique(ports.outputs, "output");
  return ports;
}

//===----------------------------------------------------------------------===//
// Simulation setup
//===----------------------------------------------------------------------===//

Simulation::Simulation(MlirState mlirState, std::string topSymbol,
                       SimOptions options)
    : mlir(std::move(mlirState)), opts(options) {
  ensureDialectsRegistered();
  if (opts.schedulerSeed)
    rng_.emplace(*opts.schedulerSeed);

  refineTable();

  // Default file-descriptor sinks (CIRCT's conventional stderr-ish token).
  sv.fd["0x80000002"] = "stdout";

  // hw.hierpath records its path at preprocessing time.
  for (const auto &[sym, op] : refined_) {
    if (op.name != "hw.hierpath")
      continue;
    if (const OpInfo *info = OpRegistry::global().find("hw.hierpath"))
      info->hits.fetch_add(1, std::memory_order_relaxed);
    std::vector<std::vector<std::string>> path;
    if (const AttrRef *np = op.attr("namepath")) {
      if ((*np)->kind != AttrExpr::Kind::Array)
        throw SimError(Err::MalformedAttribute,
                       "hierpath namepath must be an array", op.loc);
      for (const AttrRef &elem : (*np)->elems) {
        if (elem->kind != AttrExpr::Kind::SymbolRef)
          throw SimError(Err::MalformedAttribute,
                         "hierpath namepath elements must be symbol refs",
                         op.loc);
        path.push_back(elem->symbolPath);
      }
    }
    hw.hier[sym] = std::move(path);
  }

  // Unsymboled top-level operations become dialect commands (Mop), FIFO.
  for (const CanonOp &op : refinedCommands_)
    commands_.push_back({Command::Kind::DialectCmd, "", &op});
  processCommands();
  if (mlir.phase == Phase::Debug)
    throw SimError(Err::UnknownOperation, mlir.debugMessage);

  root = std::make_unique<InstanceState>();
  root->cid = {topSymbol};
  root->mod = std::move(topSymbol);
}

void Simulation::refineTable() {
  for (const auto &[sym, op] : mlir.table)
    refined_.emplace(sym, canonicalizeHw(op));
  for (const CanonOp &op : mlir.pendingCommands)
    refinedCommands_.push_back(canonicalizeHw(op));
}

const CanonOp &Simulation::refinedOp(const std::string &symbol) const {
  auto it = refined_.find(symbol);
  if (it == refined_.end())
    throw SimError(Err::UnknownSymbol,
                   "no operation registered under symbol '" + symbol + "'");
  return it->second;
}

void Simulation::processCommands() {
  while (!commands_.empty()) {
    Command cmd = std::move(commands_.front());
    commands_.pop_front();
    if (mlir.phase == Phase::Debug)
      break; // Debug halts further command processing
    execCommand(cmd);
  }
}

void Simulation::execCommand(const Command &cmd) {
  switch (cmd.kind) {
  case Command::Kind::CRop: {
    if (!mlir.table.count(cmd.text)) {
      commands_.push_front({Command::Kind::Debug,
                            "no operation registered under symbol '" +
                                cmd.text + "'",
                            nullptr});
      // Keep the error-path counter honest even though the Debug command
      // carries the report.
      try {
        mlir.rop(cmd.text);
      } catch (const SimError &) {
      }
    }
    return;
  }
  case Command::Kind::Debug:
    mlir.phase = Phase::Debug;
    mlir.debugMessage = cmd.text;
    return;
  case Command::Kind::DialectCmd: {
    const OpInfo *info = OpRegistry::global().find(cmd.op->name);
    if (!info || !info->preprocess) {
      // Errors on the command queue become Debug commands.
      commands_.push_front(
          {Command::Kind::Debug,
           "no preprocessing handler for top-level operation '" +
               cmd.op->name + "'",
           nullptr});
      return;
    }
    info->hits.fetch_add(1, std::memory_order_relaxed);
    info->preprocess(*this, *cmd.op);
    return;
  }
  }
}

//===----------------------------------------------------------------------===//
// Effectful functions
//===----------------------------------------------------------------------===//

void Simulation::stimulate(InstanceState &inst,
                           const std::vector<TypedValue> &inputs) {
  commands_.push_back({Command::Kind::CRop, inst.mod, nullptr});
  processCommands();
  if (mlir.phase == Phase::Debug) {
    SimError e(Err::UnknownSymbol, mlir.debugMessage);
    e.instancePath = inst.pathKey();
    throw e;
  }
  const CanonOp &moduleOp = refined_.at(inst.mod);
  const TypeExpr &ports = modulePortsOf(moduleOp);
  if (ports.fields.size() != inputs.size()) {
    SimError e(Err::ArityMismatch,
               "module '" + inst.mod + "' has " +
                   std::to_string(ports.fields.size()) + " input ports, got " +
                   std::to_string(inputs.size()) + " values");
    e.instancePath = inst.pathKey();
    throw e;
  }
  inst.pendingInputs = inputs;
  inst.exec.push_back({&moduleOp});
}

void Simulation::writeArgs(
    InstanceState &inst,
    const std::vector<std::pair<std::string, TypeRef>> &blockArgs,
    const std::vector<TypedValue> &vals) {
  if (blockArgs.size() != vals.size())
    throw SimError(Err::ArityMismatch,
                   "expected " + std::to_string(blockArgs.size()) +
                       " block arguments, got " + std::to_string(vals.size()));
  for (size_t i = 0; i < blockArgs.size(); ++i) {
    if (!typeEquals(vals[i].ty, blockArgs[i].second))
      throw SimError(Err::TypeMismatch,
                     "block argument %" + blockArgs[i].first + " has type " +
                         typeToString(blockArgs[i].second) + ", got " +
                         typeToString(vals[i].ty));
    writeCurr(inst, blockArgs[i].first, vals[i]);
  }
}

const TypedValue &Simulation::readCurr(const InstanceState &inst,
                                       const std::string &id) const {
  auto it = inst.curr.find(id);
  if (it == inst.curr.end()) {
    SimError e(Err::UndefinedValue,
               "value %" + id + " is not defined in the current cycle");
    e.instancePath = inst.pathKey();
    throw e;
  }
  return it->second;
}

void Simulation::writeCurr(InstanceState &inst, const std::string &id,
                           TypedValue val) {
  if (!inst.curr.emplace(id, std::move(val)).second) {
    SimError e(Err::DoubleWrite, "value %" + id + " written twice in a cycle");
    e.instancePath = inst.pathKey();
    throw e;
  }
}

TypedValue Simulation::readLast(const InstanceState &inst,
                                const std::string &id,
                                const TypeRef &declaredType) const {
  auto it = inst.last.find(id);
  if (it != inst.last.end())
    return it->second;
  return allXValue(declaredType);
}

std::string Simulation::readReg(const InstanceState &inst,
                                const std::string &sym) const {
  auto it = inst.reg.find(sym);
  if (it == inst.reg.end())
    throw SimError(Err::UnknownName, "no register named '" + sym + "'");
  return it->second;
}

void Simulation::writeReg(InstanceState &inst, const std::string &sym,
                          const std::string &id) {
  if (!inst.reg.emplace(sym, id).second)
    throw SimError(Err::DuplicateName,
                   "register symbol '" + sym + "' already registered");
}

std::string Simulation::readWire(const InstanceState &inst,
                                 const std::string &sym) const {
  auto it = inst.wire.find(sym);
  if (it == inst.wire.end())
    throw SimError(Err::UnknownName, "no wire named '" + sym + "'");
  return it->second;
}

void Simulation::writeWire(InstanceState &inst, const std::string &sym,
                           const std::string &id) {
  if (!inst.wire.emplace(sym, id).second)
    throw SimError(Err::DuplicateName,
                   "wire symbol '" + sym + "' already registered");
}

void Simulation::writeOut(InstanceState &inst, const std::string &port,
                          const std::string &id) {
  for (const auto &[p, existing] : inst.out)
    if (p == port)
      throw SimError(Err::DuplicateName,
                     "output port '" + port + "' already assigned");
  inst.out.emplace_back(port, id);
}

void Simulation::finish(InstanceState &inst) {
  if (!inst.exec.empty()) {
    SimError e(Err::PrematureFinish,
               std::to_string(inst.exec.size()) +
                   " evaluations still pending at end of cycle");
    e.instancePath = inst.pathKey();
    throw e;
  }
  inst.last = std::move(inst.curr);
  inst.curr.clear();
  inst.out.clear();
  inst.procedural.clear();
  inst.nba.clear();
  inst.regCommits.clear();
  inst.memCommits.clear();
  inst.assignDrivers.clear();
  inst.pendingInputs.clear();
  for (auto &[name, child] : inst.children)
    finish(*child);
}

void Simulation::splitRegion(InstanceState &inst, const CanonRegion &region) {
  if (region.blocks.size() != 1)
    throw SimError(Err::MultiBlockRegion,
                   "regions with multiple blocks are not supported");
  std::vector<const CanonOp *> ops;
  ops.reserve(region.blocks[0].ops.size());
  for (const CanonOp &op : region.blocks[0].ops)
    ops.push_back(&op);
  parallelize(inst, std::move(ops));
}

void Simulation::parallelize(InstanceState &inst,
                             std::vector<const CanonOp *> ops) {
  for (const CanonOp *op : ops) {
    const OpInfo *info = OpRegistry::global().find(op->name);
    if (info && info->proceduralBlock)
      inst.procedural.push_back(op);
    else
      inst.exec.push_back({op});
  }
}

void Simulation::spliceRegion(InstanceState &inst, const CanonRegion &region) {
  splitRegion(inst, region);
}

void Simulation::writeResults(InstanceState &inst, const CanonOp &op,
                              const std::vector<TypedValue> &signals) {
  if (signals.size() != op.resultIds.size()) {
    SimError e(Err::ArityMismatch,
               "operation produced " + std::to_string(signals.size()) +
                   " results, declared " + std::to_string(op.resultIds.size()));
    e.opName = op.name;
    e.instancePath = inst.pathKey();
    throw e;
  }
  for (size_t i = 0; i < signals.size(); ++i)
    writeCurr(inst, op.resultIds[i], signals[i]);
}

//===----------------------------------------------------------------------===//
// Scheduler
//===----------------------------------------------------------------------===//

bool Simulation::evaluationReady(const InstanceState &inst, const CanonOp &op,
                                 const OpInfo &info) const {
  for (size_t i = 0; i < op.operands.size(); ++i) {
    if (std::find(info.deferredOperands.begin(), info.deferredOperands.end(),
                  static_cast<uint32_t>(i)) != info.deferredOperands.end())
      continue;
    if (!inst.curr.count(op.operands[i]))
      return false;
  }
  return true;
}

void Simulation::throwDeadlock(const InstanceState &inst) const {
  std::string msg = "no evaluation is ready; stuck operations:";
  for (const Evaluation &ev : inst.exec) {
    msg += " " + ev.op->name + "(missing:";
    for (const std::string &id : ev.op->operands)
      if (!inst.curr.count(id))
        msg += " %" + id;
    msg += ")";
  }
  SimError e(Err::Deadlock, msg);
  e.instancePath = inst.pathKey();
  throw e;
}

void Simulation::settle(InstanceState &inst) {
  OpRegistry &registry = OpRegistry::global();
  while (!inst.exec.empty()) {
    std::vector<size_t> ready;
    for (size_t i = 0; i < inst.exec.size(); ++i) {
      const CanonOp &op = *inst.exec[i].op;
      const OpInfo *info = registry.find(op.name);
      if (!info) {
        SimError e(Err::UnknownOperation,
                   "no evaluator registered for '" + op.name + "'", op.loc);
        e.opName = op.name;
        e.instancePath = inst.pathKey();
        throw e;
      }
      if (evaluationReady(inst, op, *info))
        ready.push_back(i);
    }
    if (ready.empty())
      throwDeadlock(inst);
    size_t pick = ready.front(); // deterministic: lowest source order
    if (rng_)
      pick = ready[(*rng_)() % ready.size()];
    Evaluation ev = inst.exec[pick];
    inst.exec.erase(inst.exec.begin() + static_cast<ptrdiff_t>(pick));

    if (++evalSteps > opts.maxEvalSteps)
      throw SimError(Err::EvalBudget,
                     "evaluation budget exceeded (" +
                         std::to_string(opts.maxEvalSteps) + " steps)");
    const OpInfo *info = registry.find(ev.op->name);
    info->hits.fetch_add(1, std::memory_order_relaxed);
    EvalCtx ctx{*this, inst, nullptr, false};
    std::vector<TypedValue> signals;
    try {
      signals = info->eval(ctx, *ev.op);
    } catch (SimError &e) {
      if (e.opName.empty())
        e.opName = ev.op->name;
      if (e.instancePath.empty())
        e.instancePath = inst.pathKey();
      if (!e.loc && ev.op->loc.valid())
        e.loc = ev.op->loc;
      throw;
    }
    writeResults(inst, *ev.op, signals);
  }
}

//===----------------------------------------------------------------------===//
// Procedural phase
//===----------------------------------------------------------------------===//

const TypedValue &Simulation::resolveOperand(const EvalCtx &ctx,
                                             const std::string &id) const {
  for (const Frame *f = ctx.frame; f; f = f->parent) {
    auto it = f->vars.find(id);
    if (it != f->vars.end())
      return it->second;
  }
  return readCurr(ctx.inst, id);
}

std::vector<TypedValue> Simulation::readOperands(const EvalCtx &ctx,
                                                 const CanonOp &op) {
  std::vector<TypedValue> vals;
  vals.reserve(op.operands.size());
  for (const std::string &id : op.operands)
    vals.push_back(resolveOperand(ctx, id));
  return vals;
}

void Simulation::evalProceduralOp(EvalCtx &ctx, const CanonOp &op) {
  const OpInfo *info = OpRegistry::global().find(op.name);
  if (!info || !info->eval) {
    SimError e(Err::UnknownOperation,
               "no evaluator registered for '" + op.name + "'", op.loc);
    e.opName = op.name;
    throw e;
  }
  if (++evalSteps > opts.maxEvalSteps)
    throw SimError(Err::EvalBudget, "evaluation budget exceeded");
  info->hits.fetch_add(1, std::memory_order_relaxed);
  std::vector<TypedValue> signals;
  try {
    signals = info->eval(ctx, op);
  } catch (SimError &e) {
    if (e.opName.empty())
      e.opName = op.name;
    if (e.instancePath.empty())
      e.instancePath = ctx.inst.pathKey();
    if (!e.loc && op.loc.valid())
      e.loc = op.loc;
    throw;
  }
  if (signals.size() != op.resultIds.size()) {
    SimError e(Err::ArityMismatch, "operation produced " +
                                       std::to_string(signals.size()) +
                                       " results, declared " +
                                       std::to_string(op.resultIds.size()));
    e.opName = op.name;
    throw e;
  }
  for (size_t i = 0; i < signals.size(); ++i)
    ctx.frame->vars[op.resultIds[i]] = signals[i];
}

void Simulation::runProceduralRegion(
    EvalCtx &ctx, const CanonRegion &region,
    std::vector<std::pair<std::string, TypedValue>> bindings) {
  if (region.blocks.size() != 1)
    throw SimError(Err::MultiBlockRegion,
                   "procedural regions must have a single block");
  Frame frame;
  frame.parent = ctx.frame;
  for (auto &[id, v] : bindings)
    frame.vars[id] = std::move(v);
  EvalCtx inner{*this, ctx.inst, &frame, true};
  for (const CanonOp &op : region.blocks[0].ops)
    evalProceduralOp(inner, op);
}

bool Simulation::posedge(const InstanceState &inst,
                         const std::string &clkId) const {
  auto currIt = inst.curr.find(clkId);
  if (currIt == inst.curr.end() || !currIt->second.isBits())
    throw SimError(Err::MissingClock, "clock %" + clkId + " has no value");
  auto lastIt = inst.last.find(clkId);
  if (lastIt == inst.last.end() || !lastIt->second.isBits())
    return false; // first cycle: unknown previous level, no edge
  const BitVec4 &prev = lastIt->second.bits();
  const BitVec4 &now = currIt->second.bits();
  return prev.width() >= 1 && now.width() >= 1 && prev.bit(0) == Bit4::B0 &&
         now.bit(0) == Bit4::B1;
}

bool Simulation::negedge(const InstanceState &inst,
                         const std::string &clkId) const {
  auto currIt = inst.curr.find(clkId);
  if (currIt == inst.curr.end() || !currIt->second.isBits())
    throw SimError(Err::MissingClock, "clock %" + clkId + " has no value");
  auto lastIt = inst.last.find(clkId);
  if (lastIt == inst.last.end() || !lastIt->second.isBits())
    return false;
  const BitVec4 &prev = lastIt->second.bits();
  const BitVec4 &now = currIt->second.bits();
  return prev.width() >= 1 && now.width() >= 1 && prev.bit(0) == Bit4::B1 &&
         now.bit(0) == Bit4::B0;
}

namespace {
bool isOne(const TypedValue &v) {
  return v.isBits() && v.bits().width() >= 1 && v.bits().bit(0) == Bit4::B1;
}
} // namespace

void Simulation::runProceduralPhase(InstanceState &inst) {
  // Splice order can depend on scheduling; source order is the contract.
  std::sort(inst.procedural.begin(), inst.procedural.end(),
            [](const CanonOp *a, const CanonOp *b) { return a->seq < b->seq; });
  const std::string pathKey = inst.pathKey();
  bool inited = sv.inited.count(pathKey) != 0;

  for (const CanonOp *opPtr : inst.procedural) {
    const CanonOp &op = *opPtr;
    const OpInfo *info = OpRegistry::global().find(op.name);
    info->hits.fetch_add(1, std::memory_order_relaxed);
    EvalCtx ctx{*this, inst, nullptr, true};

    for (const std::string &id : op.operands)
      if (!inst.curr.count(id)) {
        SimError e(Err::MissingEvent,
                   "event operand %" + id + " is not defined", op.loc);
        e.opName = op.name;
        e.instancePath = pathKey;
        throw e;
      }

    if (op.name == "sv.initial") {
      if (!inited)
        runProceduralRegion(ctx, op.regions.at(0));
      continue;
    }
    if (op.name == "sv.always" || op.name == "sv.alwayscomb") {
      runProceduralRegion(ctx, op.regions.at(0));
      continue;
    }
    if (op.name == "sv.alwaysff") {
      const AttrRef *edgeAttr = op.attr("clockEdge");
      std::string edge =
          edgeAttr && (*edgeAttr)->kind == AttrExpr::Kind::String
              ? (*edgeAttr)->str
              : "posedge";
      const std::string &clk = op.operands.at(0);
      bool clockFired =
          edge == "negedge" ? negedge(inst, clk) : posedge(inst, clk);
      const AttrRef *styleAttr = op.attr("resetStyle");
      if (styleAttr && op.operands.size() >= 2 && op.regions.size() >= 2) {
        const std::string &rst = op.operands.at(1);
        const AttrRef *redge = op.attr("resetEdge");
        bool activeLow = redge && (*redge)->kind == AttrExpr::Kind::String &&
                         (*redge)->str == "negedge";
        const TypedValue &rv = readCurr(inst, rst);
        bool resetActive = activeLow ? (rv.isBits() && rv.bits().width() >= 1 &&
                                        rv.bits().bit(0) == Bit4::B0)
                                     : isOne(rv);
        bool async = (*styleAttr)->str == "async";
        if (async) {
          if (resetActive)
            runProceduralRegion(ctx, op.regions.at(1));
          else if (clockFired)
            runProceduralRegion(ctx, op.regions.at(0));
        } else if (clockFired) {
          runProceduralRegion(ctx, op.regions.at(resetActive ? 1 : 0));
        }
      } else if (clockFired) {
        runProceduralRegion(ctx, op.regions.at(0));
      }
      continue;
    }
    throw SimError(Err::UnknownOperation,
                   "unexpected procedural block '" + op.name + "'", op.loc);
  }
  sv.inited.insert(pathKey);
}

//===----------------------------------------------------------------------===//
// Commits and cycle composition
//===----------------------------------------------------------------------===//

void Simulation::applyCommits(InstanceState &inst) {
  // Nonblocking assignments first (FIFO; later writes win).
  for (const PendingNBA &p : inst.nba)
    storeCell(p.target, p.value, WriteKind::Nonblocking);
  // Memory writes (write latency 1).
  for (const MemCommit &c : inst.memCommits) {
    InstanceState &owner = findInstance(c.mem.instanceKey);
    auto it = owner.mems.find(c.mem.slot);
    if (it == owner.mems.end())
      throw SimError(Err::DanglingRef, "memory handle is stale");
    it->second.cells[c.addr] = c.data;
  }
  // Register commits overwrite curr so the output snapshot and next cycle's
  // last observe the post-edge value.
  for (const RegCommit &c : inst.regCommits) {
    TypedValue v = c.value;
    if (c.fromId) {
      auto it = inst.curr.find(*c.fromId);
      if (it == inst.curr.end()) {
        SimError e(Err::UndefinedValue, "register next value %" + *c.fromId +
                                            " was never computed");
        e.instancePath = inst.pathKey();
        throw e;
      }
      v = it->second;
    }
    inst.curr[c.resultId] = std::move(v);
  }
  inst.nba.clear();
  inst.memCommits.clear();
  inst.regCommits.clear();
}

std::vector<std::pair<std::string, TypedValue>>
Simulation::completeInstanceCycle(InstanceState &inst) {
  settle(inst);
  runProceduralPhase(inst);
  applyCommits(inst);
  std::vector<std::pair<std::string, TypedValue>> outs;
  outs.reserve(inst.out.size());
  for (const auto &[port, id] : inst.out)
    outs.emplace_back(port, readCurr(inst, id));
  inst.procedural.clear();
  inst.assignDrivers.clear();
  return outs;
}

std::vector<std::pair<std::string, TypedValue>>
Simulation::runCycle(const std::vector<TypedValue> &inputs) {
  evalSteps = 0;
  stimulate(*root, inputs);
  auto outs = completeInstanceCycle(*root);
  lastSignals = collectSignals(opts.traceAll);
  finish(*root);
  ++cycleIndex;
  return outs;
}

//===----------------------------------------------------------------------===//
// Storage cells and force
//===----------------------------------------------------------------------===//

InstanceState &Simulation::findInstance(const std::string &pathKey) {
  InstanceState *cur = root.get();
  if (!cur)
    throw SimError(Err::DanglingRef, "no instance tree");
  std::string acc = cur->cid.empty() ? "" : cur->cid[0];
  if (pathKey == acc)
    return *cur;
  size_t pos = acc.size();
  while (pos < pathKey.size()) {
    if (pathKey[pos] != '.')
      throw SimError(Err::DanglingRef,
                     "no instance at path '" + pathKey + "'");
    size_t next = pathKey.find('.', pos + 1);
    std::string component = pathKey.substr(
        pos + 1, next == std::string::npos ? std::string::npos
                                           : next - pos - 1);
    auto it = cur->children.find(component);
    if (it == cur->children.end())
      throw SimError(Err::DanglingRef,
                     "no instance at path '" + pathKey + "'");
    cur = it->second.get();
    pos = next == std::string::npos ? pathKey.size() : next;
  }
  return *cur;
}

namespace {

const TypedValue *drill(const TypedValue *v,
                        const std::vector<uint32_t> &path) {
  for (uint32_t idx : path) {
    if (!v->isAggregate() || idx >= v->fields().size())
      return nullptr;
    v = &v->fields()[idx];
  }
  return v;
}

TypedValue *drillMut(TypedValue *v, const std::vector<uint32_t> &path) {
  for (uint32_t idx : path) {
    if (!v->isAggregate() || idx >= std::get<Aggregate>(v->val).size())
      return nullptr;
    v = &std::get<Aggregate>(v->val)[idx];
  }
  return v;
}

} // namespace

TypedValue Simulation::loadCell(const StorageRef &ref) const {
  auto forceInst = sv.force.find(ref.instanceKey);
  if (forceInst != sv.force.end()) {
    auto f = forceInst->second.find(ref.slotKey());
    if (f != forceInst->second.end())
      return f->second;
  }
  InstanceState &inst =
      const_cast<Simulation *>(this)->findInstance(ref.instanceKey);
  if (ref.cell >= inst.cells.size())
    throw SimError(Err::DanglingRef, "storage reference is stale");
  const TypedValue *v = drill(&inst.cells[ref.cell].value, ref.path);
  if (!v)
    throw SimError(Err::DanglingRef, "storage element path is stale");
  return *v;
}

void Simulation::storeCell(const StorageRef &ref, const TypedValue &v,
                           WriteKind kind) {
  InstanceState &inst = findInstance(ref.instanceKey);
  if (ref.cell >= inst.cells.size())
    throw SimError(Err::DanglingRef, "storage reference is stale");
  if (kind == WriteKind::Continuous) {
    uint32_t &drivers = inst.assignDrivers[ref.slotKey()];
    if (++drivers > 1)
      throw SimError(Err::DuplicateDriver,
                     "multiple continuous drivers on one storage cell");
  }
  TypedValue *slot = drillMut(&inst.cells[ref.cell].value, ref.path);
  if (!slot)
    throw SimError(Err::DanglingRef, "storage element path is stale");
  if (!typeEquals(slot->ty, v.ty) ||
      (slot->isBits() && v.isBits() &&
       slot->bits().width() != v.bits().width()))
    throw SimError(Err::WidthMismatch,
                   "cannot assign " + typeToString(v.ty) + " to a cell of " +
                       typeToString(slot->ty));
  *slot = v; // forced cells absorb writes; force map reads take priority
}

void Simulation::installForce(const StorageRef &ref, TypedValue v) {
  sv.force[ref.instanceKey][ref.slotKey()] = std::move(v);
}

void Simulation::releaseForce(const StorageRef &ref) {
  auto instIt = sv.force.find(ref.instanceKey);
  if (instIt == sv.force.end() || !instIt->second.erase(ref.slotKey())) {
    diagnose("release of a storage cell that was not forced");
    return;
  }
  if (instIt->second.empty())
    sv.force.erase(instIt);
}

//===----------------------------------------------------------------------===//
// Bookkeeping
//===----------------------------------------------------------------------===//

void Simulation::diagnose(std::string message, std::optional<SourceLoc> loc) {
  diags.push_back({std::move(message), loc});
}

std::ostream &Simulation::taskSink() {
  return opts.taskOut ? *opts.taskOut : std::cout;
}

void Simulation::taskOutput(const std::string &severity,
                            const std::string &text) {
  sv.log.push_back({severity, text});
  if (severity == "fwrite")
    taskSink() << text;
  else
    taskSink() << "[" << severity << "] " << text << "\n";
}

void Simulation::collectInstanceSignals(const InstanceState &inst,
                                        bool traceAll,
                                        std::vector<SignalRecord> &out) const {
  const std::string path = inst.pathKey();
  std::set<std::string> used; // one record per name within an instance
  auto record = [&](const std::string &name, const TypedValue &v) {
    if (!used.insert(name).second)
      return;
    TypedValue resolved = v;
    if (v.isRef()) {
      if (v.ref().cell == kPoisonCell)
        return;
      resolved = loadCell(v.ref());
    }
    if (resolved.isMem())
      return;
    BitVec4 flat = flattenValue(resolved);
    out.push_back({path, name, flat.width(), std::move(flat)});
  };

  auto refinedIt = refined_.find(inst.mod);
  if (refinedIt != refined_.end() &&
      refinedIt->second.name == "hw.module") {
    const CanonOp &moduleOp = refinedIt->second;
    const TypeExpr &ports = modulePortsOf(moduleOp);
    const CanonBlock &entry = moduleOp.regions.at(0).blocks.at(0);
    for (size_t i = 0; i < ports.fields.size() && i < entry.args.size(); ++i) {
      auto it = inst.curr.find(entry.args[i].first);
      if (it != inst.curr.end())
        record(ports.fields[i].first, it->second);
    }
    for (const auto &[port, id] : inst.out) {
      auto it = inst.curr.find(id);
      if (it != inst.curr.end())
        record(port, it->second);
    }
  }
  for (const auto &[sym, id] : inst.reg) {
    auto it = inst.curr.find(id);
    if (it != inst.curr.end())
      record(sym, it->second);
  }
  for (const auto &[sym, id] : inst.wire) {
    auto it = inst.curr.find(id);
    if (it != inst.curr.end())
      record(sym, it->second);
  }
  if (traceAll) {
    std::vector<std::string> ids;
    ids.reserve(inst.curr.size());
    for (const auto &[id, v] : inst.curr)
      ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (const std::string &id : ids) {
      const TypedValue &v = inst.curr.at(id);
      if (v.isMem() || (v.isRef()))
        continue;
      record("%" + id, v);
    }
  }
  for (const auto &[name, child] : inst.children)
    collectInstanceSignals(*child, traceAll, out);
}

std::vector<Simulation::SignalRecord>
Simulation::collectSignals(bool traceAll) const {
  std::vector<SignalRecord> out;
  if (root)
    collectInstanceSignals(*root, traceAll, out);
  return out;
}

} // namespace hwsim
