//===- dialect_seq.cpp - Sequential logic evaluators ---------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// seq.firreg registers and seq.firmem memories. A register publishes its
// pre-edge value to downstream logic and defers the sampled next value to an
// end-of-cycle commit that overwrites curr, so the output snapshot and next
// cycle's last observe the post-edge state.
//
//===----------------------------------------------------------------------===//

#include "hwsim/engine.hpp"
#include "hwsim/printer.hpp"

namespace hwsim {

namespace {

bool isOneBit(const TypedValue &v) {
  return v.isBits() && v.bits().width() >= 1 && v.bits().bit(0) == Bit4::B1;
}

uint64_t intAttrOr(const CanonOp &op, std::string_view key, uint64_t dflt) {
  const AttrRef *a = op.attr(key);
  if (!a)
    return dflt;
  if ((*a)->kind != AttrExpr::Kind::Int || (*a)->intVal.negative)
    throw SimError(Err::MalformedAttribute,
                   op.name + ": '" + std::string(key) +
                       "' must be a non-negative integer",
                   op.loc);
  return (*a)->intVal.magnitude.empty() ? 0 : (*a)->intVal.magnitude[0];
}

std::string innerSymOf(const CanonOp &op) {
  const AttrRef *a = op.attr("inner_sym");
  if (!a)
    return {};
  if ((*a)->kind == AttrExpr::Kind::SymbolRef && !(*a)->symbolPath.empty())
    return (*a)->symbolPath[0];
  if ((*a)->kind == AttrExpr::Kind::String)
    return (*a)->str;
  throw SimError(Err::MalformedAttribute, "inner_sym must be a symbol",
                 op.loc);
}

//===----------------------------------------------------------------------===//
// seq.firreg
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalFirreg(EvalCtx &ctx, const CanonOp &op) {
  InstanceState &inst = ctx.inst;
  const TypeRef &ty = op.resultTypes.at(0);
  const std::string &resultId = op.resultIds.at(0);
  const AttrRef *resetAttr = op.attr("reset");
  bool hasReset = resetAttr != nullptr;
  if (op.operands.size() != (hasReset ? 4u : 2u))
    throw SimError(Err::ArityMismatch,
                   "seq.firreg expects next, clock" +
                       std::string(hasReset ? ", reset, resetValue" : "") +
                       " operands",
                   op.loc);
  const std::string &nextId = op.operands[0];
  const std::string &clkId = op.operands[1];
  if (!inst.curr.count(clkId))
    throw SimError(Err::MissingClock,
                   "seq.firreg clock %" + clkId + " has no value", op.loc);

  std::string sym = innerSymOf(op);
  if (!sym.empty()) {
    auto existing = inst.reg.find(sym);
    if (existing == inst.reg.end())
      ctx.sim.writeReg(inst, sym, resultId);
    else if (existing->second != resultId)
      throw SimError(Err::DuplicateName,
                     "register symbol '" + sym + "' already registered",
                     op.loc);
  }

  TypedValue prev;
  auto lastIt = inst.last.find(resultId);
  if (lastIt != inst.last.end()) {
    prev = lastIt->second;
  } else if (const AttrRef *preset = op.attr("preset")) {
    if ((*preset)->kind != AttrExpr::Kind::Int)
      throw SimError(Err::MalformedAttribute,
                     "seq.firreg preset must be an integer", op.loc);
    prev = TypedValue(
        ty, BitVec4::fromLimbs(flatWidth(ty),
                               (*preset)->intVal.toTwosComplement(flatWidth(ty))));
  } else {
    prev = allXValue(ty);
  }

  bool edge = ctx.sim.posedge(inst, clkId);
  if (hasReset) {
    bool async = (*resetAttr)->kind == AttrExpr::Kind::String &&
                 (*resetAttr)->str == "async";
    const TypedValue &rst = ctx.sim.readCurr(inst, op.operands[2]);
    const TypedValue &resetValue = ctx.sim.readCurr(inst, op.operands[3]);
    bool active = isOneBit(rst);
    if (active && (async || edge)) {
      inst.regCommits.push_back({resultId, std::nullopt, resetValue});
      return {resetValue};
    }
  }
  if (edge)
    inst.regCommits.push_back({resultId, nextId, {}});
  return {prev};
}

//===----------------------------------------------------------------------===//
// seq.firmem and its ports
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalFirmem(EvalCtx &ctx, const CanonOp &op) {
  InstanceState &inst = ctx.inst;
  const TypeRef &ty = op.resultTypes.at(0);
  if (ty->kind != TypeExpr::Kind::FirMem)
    throw SimError(Err::TypeMismatch, "seq.firmem result must be a firmem type",
                   op.loc);
  uint64_t readLatency = intAttrOr(op, "readLatency", 0);
  uint64_t writeLatency = intAttrOr(op, "writeLatency", 1);
  if (readLatency > 1)
    throw SimError(Err::MalformedAttribute,
                   "seq.firmem read latency must be 0 or 1", op.loc);
  if (writeLatency != 1)
    throw SimError(Err::MalformedAttribute,
                   "seq.firmem write latency must be 1", op.loc);
  if (!inst.mems.count(op.seq)) {
    MemStore store;
    store.depth = ty->memDepth;
    store.width = ty->memWidth;
    store.readLatency = static_cast<uint32_t>(readLatency);
    inst.mems.emplace(op.seq, std::move(store));
  }
  return {TypedValue(ty, MemRef{inst.pathKey(), op.seq})};
}

struct PortOperands {
  MemRef mem;
  MemStore *store;
  BitVec4 addr;
  std::optional<uint64_t> addrValue; // nullopt if X or out of range
  bool enabled;                      // defined-1 enable (default true)
  bool enableX = false;
  std::string clkId;
};

PortOperands portOperands(EvalCtx &ctx, const CanonOp &op, size_t clkIndex) {
  PortOperands p;
  const TypedValue &memV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  p.mem = memV.mem();
  InstanceState &owner = ctx.sim.findInstance(p.mem.instanceKey);
  auto it = owner.mems.find(p.mem.slot);
  if (it == owner.mems.end())
    throw SimError(Err::DanglingRef, "memory handle is stale", op.loc);
  p.store = &it->second;
  p.addr = ctx.sim.resolveOperand(ctx, op.operands.at(1)).bits();
  auto u = p.addr.toUint64();
  if (u && *u < p.store->depth)
    p.addrValue = *u;
  p.clkId = op.operands.at(clkIndex);
  p.enabled = true;
  if (op.attr("hasEnable")) {
    const TypedValue &en =
        ctx.sim.resolveOperand(ctx, op.operands.at(clkIndex + 1));
    Bit4 b = en.bits().width() >= 1 ? en.bits().bit(0) : Bit4::BX;
    p.enabled = b == Bit4::B1;
    p.enableX = b == Bit4::BX || b == Bit4::BZ;
  }
  return p;
}

BitVec4 readCells(const MemStore &store, uint64_t addr) {
  auto it = store.cells.find(addr);
  return it == store.cells.end() ? BitVec4::allX(store.width) : it->second;
}

std::vector<TypedValue> evalFirmemReadPort(EvalCtx &ctx, const CanonOp &op) {
  PortOperands p = portOperands(ctx, op, /*clkIndex=*/2);
  const TypeRef &dataTy = op.resultTypes.at(0);
  uint32_t w = p.store->width;
  if (p.store->readLatency == 0) {
    if (p.enableX)
      ctx.sim.diagnose("seq.firmem.read_port: enable is unknown", op.loc);
    if (!p.enabled)
      return {TypedValue(dataTy, BitVec4::allX(w))};
    if (!p.addrValue) {
      ctx.sim.diagnose("seq.firmem.read_port: address is unknown or out of "
                       "range; reading all-X",
                       op.loc);
      return {TypedValue(dataTy, BitVec4::allX(w))};
    }
    return {TypedValue(dataTy, readCells(*p.store, *p.addrValue))};
  }
  // Latency 1: pipeline register keyed by this op's result id.
  const std::string &resultId = op.resultIds.at(0);
  TypedValue prev = ctx.sim.readLast(ctx.inst, resultId, dataTy);
  if (ctx.sim.posedge(ctx.inst, p.clkId)) {
    BitVec4 captured =
        (p.enabled && p.addrValue) ? readCells(*p.store, *p.addrValue)
                                   : BitVec4::allX(w);
    ctx.inst.regCommits.push_back(
        {resultId, std::nullopt, TypedValue(dataTy, std::move(captured))});
  }
  return {prev};
}

std::vector<TypedValue> evalFirmemWritePort(EvalCtx &ctx, const CanonOp &op) {
  PortOperands p = portOperands(ctx, op, /*clkIndex=*/3);
  const BitVec4 &data = ctx.sim.resolveOperand(ctx, op.operands.at(2)).bits();
  if (data.width() != p.store->width)
    throw SimError(Err::WidthMismatch, "seq.firmem.write_port data width " +
                                           std::to_string(data.width()),
                   op.loc);
  if (ctx.sim.posedge(ctx.inst, p.clkId)) {
    if (p.enableX) {
      ctx.sim.diagnose(
          "seq.firmem.write_port: enable is unknown; write dropped", op.loc);
    } else if (p.enabled) {
      if (!p.addrValue)
        ctx.sim.diagnose("seq.firmem.write_port: address is unknown or out of "
                         "range; write dropped",
                         op.loc);
      else
        ctx.inst.memCommits.push_back({p.mem, *p.addrValue, data});
    }
  }
  return {};
}

std::vector<TypedValue> evalFirmemReadWritePort(EvalCtx &ctx,
                                                const CanonOp &op) {
  PortOperands p = portOperands(ctx, op, /*clkIndex=*/4);
  const TypeRef &dataTy = op.resultTypes.at(0);
  uint32_t w = p.store->width;
  const BitVec4 &wdata = ctx.sim.resolveOperand(ctx, op.operands.at(2)).bits();
  const BitVec4 &modeBits =
      ctx.sim.resolveOperand(ctx, op.operands.at(3)).bits();
  Bit4 mode = modeBits.width() >= 1 ? modeBits.bit(0) : Bit4::BX;
  bool modeX = mode == Bit4::BX || mode == Bit4::BZ;
  bool writing = mode == Bit4::B1;
  bool edge = ctx.sim.posedge(ctx.inst, p.clkId);

  if (modeX && p.enabled)
    ctx.sim.diagnose("seq.firmem.read_write_port: mode is unknown; write "
                     "dropped, read is all-X",
                     op.loc);
  if (edge && p.enabled && writing) {
    if (!p.addrValue)
      ctx.sim.diagnose("seq.firmem.read_write_port: address is unknown or out "
                       "of range; write dropped",
                       op.loc);
    else
      ctx.inst.memCommits.push_back({p.mem, *p.addrValue, wdata});
  }

  if (p.store->readLatency == 0) {
    if (!p.enabled || modeX || writing || !p.addrValue)
      return {TypedValue(dataTy, BitVec4::allX(w))};
    return {TypedValue(dataTy, readCells(*p.store, *p.addrValue))};
  }
  const std::string &resultId = op.resultIds.at(0);
  TypedValue prev = ctx.sim.readLast(ctx.inst, resultId, dataTy);
  if (edge) {
    BitVec4 captured = (p.enabled && !modeX && !writing && p.addrValue)
                           ? readCells(*p.store, *p.addrValue)
                           : BitVec4::allX(w);
    ctx.inst.regCommits.push_back(
        {resultId, std::nullopt, TypedValue(dataTy, std::move(captured))});
  }
  return {prev};
}

} // namespace

void registerSeqDialect(OpRegistry &r) {
  r.add("seq.firreg", {&evalFirreg, nullptr, false, {0}}); // next is deferred
  r.add("seq.firmem", {&evalFirmem, nullptr, false, {}});
  r.add("seq.firmem.read_port", {&evalFirmemReadPort, nullptr, false, {}});
  r.add("seq.firmem.write_port", {&evalFirmemWritePort, nullptr, false, {}});
  r.add("seq.firmem.read_write_port",
        {&evalFirmemReadWritePort, nullptr, false, {}});
}

} // namespace hwsim
