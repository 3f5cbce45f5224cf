//===- dialect_sv.cpp - SystemVerilog construct evaluators ---------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Procedural blocks and statements, storage declarations and inout access,
// force/release, macros and ifdef, immediate assertions, severity/system
// tasks, and fwrite. Each cycle runs dataflow settle first, then procedural
// blocks in source order with sequential statement semantics, then the NBA
// and register commits.
//
//===----------------------------------------------------------------------===//

#include "hwsim/engine.hpp"
#include "hwsim/printer.hpp"

namespace hwsim {

namespace {

std::string symAttr(const CanonOp &op, std::string_view key) {
  const AttrRef *a = op.attr(key);
  if (!a)
    return {};
  if ((*a)->kind == AttrExpr::Kind::SymbolRef && !(*a)->symbolPath.empty())
    return (*a)->symbolPath[0];
  if ((*a)->kind == AttrExpr::Kind::String)
    return (*a)->str;
  throw SimError(Err::MalformedAttribute,
                 op.name + ": '" + std::string(key) + "' must be a symbol",
                 op.loc);
}

std::string stringAttrOr(const CanonOp &op, std::string_view key,
                         std::string dflt) {
  const AttrRef *a = op.attr(key);
  if (!a)
    return dflt;
  if ((*a)->kind != AttrExpr::Kind::String)
    throw SimError(Err::MalformedAttribute,
                   op.name + ": '" + std::string(key) + "' must be a string",
                   op.loc);
  return (*a)->str;
}

void requireProcedural(const EvalCtx &ctx, const CanonOp &op) {
  if (!ctx.procedural)
    throw SimError(Err::UnknownOperation,
                   op.name + " is only valid in a procedural context", op.loc);
}

Bit4 condBit(const TypedValue &v) {
  if (!v.isBits() || v.bits().width() < 1)
    return Bit4::BX;
  return v.bits().bit(0);
}

//===----------------------------------------------------------------------===//
// Storage declarations and inout access
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalStorageDecl(EvalCtx &ctx, const CanonOp &op) {
  InstanceState &inst = ctx.inst;
  const TypeRef &refTy = op.resultTypes.at(0);
  if (refTy->kind != TypeExpr::Kind::Inout)
    throw SimError(Err::TypeMismatch,
                   op.name + " result must be an !hw.inout type", op.loc);
  const TypeRef &innerTy = refTy->elem;

  auto it = inst.cellByOp.find(op.seq);
  uint32_t cellIdx;
  if (it != inst.cellByOp.end()) {
    cellIdx = it->second; // later cycles return the same persistent cell
  } else {
    cellIdx = static_cast<uint32_t>(inst.cells.size());
    std::string name = symAttr(op, "inner_sym");
    if (name.empty())
      name = stringAttrOr(op, "name", op.resultIds.at(0));
    inst.cells.push_back({name, allXValue(innerTy)});
    inst.cellByOp.emplace(op.seq, cellIdx);
    std::string sym = symAttr(op, "inner_sym");
    if (!sym.empty()) {
      if (op.name == "sv.wire")
        ctx.sim.writeWire(inst, sym, op.resultIds.at(0));
      else
        ctx.sim.writeReg(inst, sym, op.resultIds.at(0));
    }
  }
  return {TypedValue(refTy, StorageRef{inst.pathKey(), cellIdx, {}})};
}

std::vector<TypedValue> evalReadInout(EvalCtx &ctx, const CanonOp &op) {
  const TypedValue &refV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const StorageRef &ref = refV.ref();
  if (ref.cell == kPoisonCell) {
    ctx.sim.diagnose("sv.read_inout through an unknown index reads all-X",
                     op.loc);
    return {allXValue(op.resultTypes.at(0))};
  }
  return {ctx.sim.loadCell(ref)};
}

std::vector<TypedValue> evalArrayIndexInout(EvalCtx &ctx, const CanonOp &op) {
  const TypedValue &refV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const TypedValue &idxV = ctx.sim.resolveOperand(ctx, op.operands.at(1));
  StorageRef ref = refV.ref();
  const TypeRef &resTy = op.resultTypes.at(0);
  if (ref.cell == kPoisonCell)
    return {TypedValue(resTy, ref)};
  const TypeRef &arrTy = refV.ty->elem;
  if (arrTy->kind != TypeExpr::Kind::Array)
    throw SimError(Err::TypeMismatch,
                   "sv.array_index_inout requires an array cell", op.loc);
  auto idx = idxV.bits().toUint64();
  if (!idx) {
    ctx.sim.diagnose("sv.array_index_inout: index is unknown", op.loc);
    return {TypedValue(resTy, StorageRef{ref.instanceKey, kPoisonCell, {}})};
  }
  if (*idx >= arrTy->arraySize)
    throw SimError(Err::OutOfRange,
                   "sv.array_index_inout: index " + std::to_string(*idx) +
                       " exceeds array size " +
                       std::to_string(arrTy->arraySize),
                   op.loc);
  ref.path.push_back(static_cast<uint32_t>(*idx));
  return {TypedValue(resTy, std::move(ref))};
}

//===----------------------------------------------------------------------===//
// Assignments
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalAssign(EvalCtx &ctx, const CanonOp &op) {
  const TypedValue &refV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const TypedValue &v = ctx.sim.resolveOperand(ctx, op.operands.at(1));
  const StorageRef &ref = refV.ref();
  if (ref.cell == kPoisonCell) {
    ctx.sim.diagnose(op.name + " through an unknown index is dropped", op.loc);
    return {};
  }
  if (op.name == "sv.assign") {
    ctx.sim.storeCell(ref, v, Simulation::WriteKind::Continuous);
  } else if (op.name == "sv.bpassign") {
    requireProcedural(ctx, op);
    ctx.sim.storeCell(ref, v, Simulation::WriteKind::Blocking);
  } else { // sv.passign
    requireProcedural(ctx, op);
    ctx.inst.nba.push_back({ref, v});
  }
  return {};
}

std::vector<TypedValue> evalForce(EvalCtx &ctx, const CanonOp &op) {
  requireProcedural(ctx, op);
  const TypedValue &refV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const TypedValue &v = ctx.sim.resolveOperand(ctx, op.operands.at(1));
  const StorageRef &ref = refV.ref();
  if (ref.cell == kPoisonCell) {
    ctx.sim.diagnose("sv.force through an unknown index is dropped", op.loc);
    return {};
  }
  ctx.sim.installForce(ref, v);
  return {};
}

std::vector<TypedValue> evalRelease(EvalCtx &ctx, const CanonOp &op) {
  requireProcedural(ctx, op);
  const TypedValue &refV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const StorageRef &ref = refV.ref();
  if (ref.cell == kPoisonCell)
    return {};
  ctx.sim.releaseForce(ref);
  return {};
}

//===----------------------------------------------------------------------===//
// Control flow
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalIf(EvalCtx &ctx, const CanonOp &op) {
  const TypedValue &cond = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  Bit4 c = condBit(cond);
  const CanonRegion *chosen = nullptr;
  if (c == Bit4::B1)
    chosen = &op.regions.at(0);
  else if (c == Bit4::B0 && op.regions.size() > 1)
    chosen = &op.regions.at(1);
  else if (c != Bit4::B0)
    ctx.sim.diagnose("sv.if: condition is unknown; no branch taken", op.loc);
  if (!chosen)
    return {};
  if (ctx.procedural)
    ctx.sim.runProceduralRegion(ctx, *chosen);
  else
    ctx.sim.spliceRegion(ctx.inst, *chosen);
  return {};
}

std::vector<TypedValue> evalCase(EvalCtx &ctx, const CanonOp &op) {
  requireProcedural(ctx, op);
  const TypedValue &scrut = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const AttrRef *labels = op.attr("caseValues");
  if (!labels || (*labels)->kind != AttrExpr::Kind::Array)
    throw SimError(Err::MalformedAttribute,
                   "sv.case requires a caseValues array", op.loc);
  bool hasDefault = op.attr("hasDefault") != nullptr;
  size_t numLabels = (*labels)->elems.size();
  if (op.regions.size() != numLabels + (hasDefault ? 1 : 0))
    throw SimError(Err::MalformedAttribute,
                   "sv.case region count does not match its labels", op.loc);

  const BitVec4 &sv = scrut.bits();
  if (sv.hasXorZ()) {
    ctx.sim.diagnose("sv.case: scrutinee is unknown; taking default", op.loc);
    if (hasDefault)
      ctx.sim.runProceduralRegion(ctx, op.regions.back());
    return {};
  }
  uint32_t w = sv.width();
  for (size_t i = 0; i < numLabels; ++i) {
    const AttrRef &label = (*labels)->elems[i];
    if (label->kind != AttrExpr::Kind::Int)
      throw SimError(Err::MalformedAttribute,
                     "sv.case labels must be integers", op.loc);
    BitVec4 lv = BitVec4::fromLimbs(w, label->intVal.toTwosComplement(w));
    if (lv == sv) {
      ctx.sim.runProceduralRegion(ctx, op.regions.at(i));
      return {};
    }
  }
  if (hasDefault)
    ctx.sim.runProceduralRegion(ctx, op.regions.back());
  return {};
}

std::vector<TypedValue> evalFor(EvalCtx &ctx, const CanonOp &op) {
  requireProcedural(ctx, op);
  const TypedValue &lb = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  const TypedValue &ub = ctx.sim.resolveOperand(ctx, op.operands.at(1));
  const TypedValue &step = ctx.sim.resolveOperand(ctx, op.operands.at(2));
  const CanonRegion &body = op.regions.at(0);
  if (body.blocks.size() != 1 || body.blocks[0].args.size() != 1)
    throw SimError(Err::MalformedAttribute,
                   "sv.for requires a single-block body with the induction "
                   "variable as its argument",
                   op.loc);
  if (lb.bits().hasXorZ() || ub.bits().hasXorZ() || step.bits().hasXorZ()) {
    ctx.sim.diagnose("sv.for: bounds are unknown; loop skipped", op.loc);
    return {};
  }
  const std::string &ivId = body.blocks[0].args[0].first;
  const TypeRef &ivTy = body.blocks[0].args[0].second;
  BitVec4 iv = lb.bits();
  uint64_t iterations = 0;
  while (compareUnsigned(iv, ub.bits()) < 0) {
    if (++iterations > (uint64_t(1) << 20))
      throw SimError(Err::LoopBound, "sv.for exceeded 2^20 iterations",
                     op.loc);
    ctx.sim.runProceduralRegion(ctx, body, {{ivId, TypedValue(ivTy, iv)}});
    iv = addMod(iv, step.bits());
    if (step.bits().isAllZero())
      throw SimError(Err::LoopBound, "sv.for has a zero step", op.loc);
  }
  return {};
}

//===----------------------------------------------------------------------===//
// Constants
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalConstantX(EvalCtx &, const CanonOp &op) {
  return {allXValue(op.resultTypes.at(0))};
}

std::vector<TypedValue> evalConstantZ(EvalCtx &, const CanonOp &op) {
  return {TypedValue(op.resultTypes.at(0),
                     BitVec4::allZ(flatWidth(op.resultTypes.at(0))))};
}

//===----------------------------------------------------------------------===//
// Assertions and coverage
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalAssertLike(EvalCtx &ctx, const CanonOp &op) {
  const TypedValue &cond = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  std::string label = stringAttrOr(op, "label", "");
  if (op.name == "sv.cover") {
    if (condBit(cond) == Bit4::B1) {
      std::string key = label.empty() ? "cover@" + std::to_string(op.seq)
                                      : label;
      ++ctx.sim.sv.coverCounts[key];
    }
    return {};
  }
  if (condBit(cond) != Bit4::B1) {
    ++ctx.sim.sv.assertionFailures;
    std::string what = op.name == "sv.assume" ? "assumption" : "assertion";
    ctx.sim.taskOutput("assert", what + " failed" +
                                     (label.empty() ? "" : ": " + label) +
                                     " (cycle " +
                                     std::to_string(ctx.sim.cycleIndex) + ")");
  }
  return {};
}

//===----------------------------------------------------------------------===//
// Severity and system tasks
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalSeverityTask(EvalCtx &ctx, const CanonOp &op) {
  std::string severity = op.name.substr(3); // error/warning/info/fatal
  ctx.sim.taskOutput(severity, stringAttrOr(op, "message", ""));
  if (severity == "fatal") {
    ctx.sim.sv.terminateRequested = true;
    ctx.sim.sv.fatalRaised = true;
  }
  return {};
}

std::vector<TypedValue> evalStopTask(EvalCtx &ctx, const CanonOp &op) {
  ctx.sim.taskOutput("info", op.name.substr(3) + " requested");
  ctx.sim.sv.terminateRequested = true;
  return {};
}

std::string renderFormat(EvalCtx &ctx, const CanonOp &op,
                         const std::string &fmt,
                         const std::vector<TypedValue> &args) {
  std::string out;
  size_t argIdx = 0;
  for (size_t i = 0; i < fmt.size(); ++i) {
    if (fmt[i] != '%') {
      out.push_back(fmt[i]);
      continue;
    }
    if (i + 1 >= fmt.size())
      throw SimError(Err::BadFormat, "dangling '%' in format string", op.loc);
    char spec = fmt[++i];
    if (spec == '%') {
      out.push_back('%');
      continue;
    }
    if (argIdx >= args.size())
      throw SimError(Err::BadFormat,
                     "format string consumes more operands than provided",
                     op.loc);
    const BitVec4 &v = args[argIdx++].bits();
    switch (spec) {
    case 'd': {
      if (auto limbs = v.toLimbs()) {
        IntLit lit;
        lit.magnitude = *limbs;
        while (!lit.magnitude.empty() && lit.magnitude.back() == 0)
          lit.magnitude.pop_back();
        out += lit.toDecimalString();
      } else {
        out += v.toBinaryString();
      }
      break;
    }
    case 'x': {
      if (auto limbs = v.toLimbs()) {
        static const char digits[] = "0123456789abcdef";
        std::string hex;
        uint32_t nibbles = (v.width() + 3) / 4;
        for (uint32_t n = 0; n < nibbles; ++n) {
          uint64_t limb = n / 16 < limbs->size() ? (*limbs)[n / 16] : 0;
          hex.push_back(digits[(limb >> (4 * (n % 16))) & 0xF]);
        }
        while (hex.size() > 1 && hex.back() == '0')
          hex.pop_back();
        std::reverse(hex.begin(), hex.end());
        out += hex;
      } else {
        out += v.toBinaryString();
      }
      break;
    }
    case 'b':
      out += v.toBinaryString();
      break;
    default:
      throw SimError(Err::BadFormat,
                     std::string("unsupported format directive '%") + spec +
                         "'",
                     op.loc);
    }
  }
  if (argIdx != args.size())
    throw SimError(Err::BadFormat, "format string leaves operands unconsumed",
                   op.loc);
  (void)ctx;
  return out;
}

std::vector<TypedValue> evalFwrite(EvalCtx &ctx, const CanonOp &op) {
  const TypedValue &fdV = ctx.sim.resolveOperand(ctx, op.operands.at(0));
  std::vector<TypedValue> args;
  for (size_t i = 1; i < op.operands.size(); ++i)
    args.push_back(ctx.sim.resolveOperand(ctx, op.operands.at(i)));
  std::string fmt = stringAttrOr(op, "format", "");
  std::string text = renderFormat(ctx, op, fmt, args);

  auto fd = fdV.bits().toUint64();
  std::string token = "0x80000002";
  if (fd) {
    char buf[19];
    snprintf(buf, sizeof(buf), "0x%08llx",
             static_cast<unsigned long long>(*fd));
    token = buf;
  }
  auto sink = ctx.sim.sv.fd.find(token);
  if (sink == ctx.sim.sv.fd.end())
    ctx.sim.diagnose("sv.fwrite: unmapped descriptor " + token +
                         "; writing to the default sink",
                     op.loc);
  ctx.sim.taskOutput("fwrite", text);
  return {};
}

//===----------------------------------------------------------------------===//
// Macros and ifdef
//===----------------------------------------------------------------------===//

void preprocessMacroDecl(Simulation &sim, const CanonOp &op) {
  std::string name = symAttr(op, "name");
  if (name.empty())
    throw SimError(Err::MalformedAttribute,
                   "sv.macro.decl requires a name attribute", op.loc);
  sim.sv.macros.emplace(name, std::nullopt); // keep any existing definition
}

void preprocessMacroDef(Simulation &sim, const CanonOp &op) {
  std::string name = symAttr(op, "name");
  if (name.empty())
    throw SimError(Err::MalformedAttribute,
                   "sv.macro.def requires a name attribute", op.loc);
  std::string value = stringAttrOr(op, "value", "");
  auto it = sim.sv.macros.find(name);
  if (it != sim.sv.macros.end() && it->second.has_value())
    throw SimError(Err::DuplicateName,
                   "macro '" + name + "' is defined twice", op.loc);
  sim.sv.macros[name] = value;
}

std::vector<TypedValue> evalMacroRef(EvalCtx &ctx, const CanonOp &op) {
  std::string name = symAttr(op, "macro");
  auto it = ctx.sim.sv.macros.find(name);
  if (it == ctx.sim.sv.macros.end())
    throw SimError(Err::UndefinedMacro, "macro '" + name + "' is not defined",
                   op.loc);
  if (!it->second.has_value())
    throw SimError(Err::UndefinedMacro,
                   "macro '" + name + "' is declared but has no value",
                   op.loc);
  IntLit lit;
  try {
    lit = IntLit::fromDigits(*it->second);
  } catch (const SimError &) {
    throw SimError(Err::MalformedAttribute,
                   "macro '" + name + "' does not expand to an integer",
                   op.loc);
  }
  const TypeRef &ty = op.resultTypes.at(0);
  uint32_t w = flatWidth(ty);
  return {TypedValue(ty, BitVec4::fromLimbs(w, lit.toTwosComplement(w)))};
}

std::vector<TypedValue> evalIfdef(EvalCtx &ctx, const CanonOp &op) {
  std::string name = symAttr(op, "macro");
  bool defined = ctx.sim.sv.macros.count(name) != 0;
  const CanonRegion *chosen = nullptr;
  if (defined)
    chosen = &op.regions.at(0);
  else if (op.regions.size() > 1)
    chosen = &op.regions.at(1);
  if (!chosen)
    return {};
  if (op.name == "sv.ifdef.procedural") {
    requireProcedural(ctx, op);
    ctx.sim.runProceduralRegion(ctx, *chosen);
  } else if (ctx.procedural) {
    ctx.sim.runProceduralRegion(ctx, *chosen);
  } else {
    ctx.sim.spliceRegion(ctx.inst, *chosen);
  }
  return {};
}

//===----------------------------------------------------------------------===//
// Procedural blocks (bodies run in the procedural phase; see engine.cpp)
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalBlockMisplaced(EvalCtx &, const CanonOp &op) {
  throw SimError(Err::UnknownOperation,
                 op.name + " cannot be evaluated as a dataflow operation",
                 op.loc);
}

} // namespace

void registerSvDialect(OpRegistry &r) {
  r.add("sv.reg", {&evalStorageDecl, nullptr, false, {}});
  r.add("sv.logic", {&evalStorageDecl, nullptr, false, {}});
  r.add("sv.wire", {&evalStorageDecl, nullptr, false, {}});
  r.add("sv.read_inout", {&evalReadInout, nullptr, false, {}});
  r.add("sv.array_index_inout", {&evalArrayIndexInout, nullptr, false, {}});
  r.add("sv.assign", {&evalAssign, nullptr, false, {}});
  r.add("sv.bpassign", {&evalAssign, nullptr, false, {}});
  r.add("sv.passign", {&evalAssign, nullptr, false, {}});
  r.add("sv.force", {&evalForce, nullptr, false, {}});
  r.add("sv.release", {&evalRelease, nullptr, false, {}});
  r.add("sv.if", {&evalIf, nullptr, false, {}});
  r.add("sv.case", {&evalCase, nullptr, false, {}});
  r.add("sv.for", {&evalFor, nullptr, false, {}});
  r.add("sv.constantX", {&evalConstantX, nullptr, false, {}});
  r.add("sv.constantZ", {&evalConstantZ, nullptr, false, {}});
  r.add("sv.assert", {&evalAssertLike, nullptr, false, {}});
  r.add("sv.assume", {&evalAssertLike, nullptr, false, {}});
  r.add("sv.cover", {&evalAssertLike, nullptr, false, {}});
  r.add("sv.error", {&evalSeverityTask, nullptr, false, {}});
  r.add("sv.warning", {&evalSeverityTask, nullptr, false, {}});
  r.add("sv.info", {&evalSeverityTask, nullptr, false, {}});
  r.add("sv.fatal", {&evalSeverityTask, nullptr, false, {}});
  r.add("sv.finish", {&evalStopTask, nullptr, false, {}});
  r.add("sv.stop", {&evalStopTask, nullptr, false, {}});
  r.add("sv.exit", {&evalStopTask, nullptr, false, {}});
  r.add("sv.fwrite", {&evalFwrite, nullptr, false, {}});
  r.add("sv.macro.decl", {nullptr, &preprocessMacroDecl, false, {}});
  r.add("sv.macro.def", {nullptr, &preprocessMacroDef, false, {}});
  r.add("sv.macro.ref", {&evalMacroRef, nullptr, false, {}});
  r.add("sv.macro.ref.se", {&evalMacroRef, nullptr, false, {}});
  r.add("sv.ifdef", {&evalIfdef, nullptr, false, {}});
  r.add("sv.ifdef.procedural", {&evalIfdef, nullptr, false, {}});
  r.add("sv.initial", {&evalBlockMisplaced, nullptr, true, {}});
  r.add("sv.always", {&evalBlockMisplaced, nullptr, true, {}});
  r.add("sv.alwayscomb", {&evalBlockMisplaced, nullptr, true, {}});
  r.add("sv.alwaysff", {&evalBlockMisplaced, nullptr, true, {}});
}

} // namespace hwsim
