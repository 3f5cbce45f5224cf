//===- dialect_hw.cpp - Structural hardware evaluators ------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/engine.hpp"
#include "hwsim/printer.hpp"

namespace hwsim {

namespace {

const std::string &attrString(const CanonOp &op, std::string_view key) {
  const AttrRef *a = op.attr(key);
  if (!a || (*a)->kind != AttrExpr::Kind::String)
    throw SimError(Err::MalformedAttribute,
                   op.name + " requires a string '" + std::string(key) +
                       "' attribute",
                   op.loc);
  return (*a)->str;
}

std::string attrInnerSym(const CanonOp &op) {
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

/// Registers sym -> id once; later cycles re-register the same pair, which
/// is a no-op, while a second distinct op with the same symbol is an error.
void registerOnce(Simulation &sim, InstanceState &inst, bool isReg,
                  const std::string &sym, const std::string &id) {
  auto &map = isReg ? inst.reg : inst.wire;
  auto it = map.find(sym);
  if (it == map.end()) {
    if (isReg)
      sim.writeReg(inst, sym, id);
    else
      sim.writeWire(inst, sym, id);
    return;
  }
  if (it->second != id)
    throw SimError(Err::DuplicateName,
                   "symbol '" + sym + "' is registered by another operation");
}

BitVec4 intAttrBits(const AttrRef &a, uint32_t width) {
  return BitVec4::fromLimbs(width, a->intVal.toTwosComplement(width));
}

TypedValue buildConstant(const TypeRef &ty, const AttrRef &a, SourceLoc loc) {
  switch (ty->kind) {
  case TypeExpr::Kind::Int:
  case TypeExpr::Kind::Clock: {
    if (a->kind != AttrExpr::Kind::Int)
      throw SimError(Err::MalformedAttribute,
                     "expected an integer attribute for " + typeToString(ty),
                     loc);
    return {ty, intAttrBits(a, flatWidth(ty))};
  }
  case TypeExpr::Kind::Array: {
    if (a->kind != AttrExpr::Kind::Array || a->elems.size() != ty->arraySize)
      throw SimError(Err::MalformedAttribute,
                     "expected " + std::to_string(ty->arraySize) +
                         " array elements for " + typeToString(ty),
                     loc);
    // First listed element takes the highest index, as in hw.array_create.
    Aggregate fields(ty->arraySize);
    for (size_t i = 0; i < a->elems.size(); ++i)
      fields[ty->arraySize - 1 - i] = buildConstant(ty->elem, a->elems[i], loc);
    return {ty, std::move(fields)};
  }
  case TypeExpr::Kind::Struct: {
    if (a->kind != AttrExpr::Kind::Array ||
        a->elems.size() != ty->fields.size())
      throw SimError(Err::MalformedAttribute,
                     "expected " + std::to_string(ty->fields.size()) +
                         " field values for " + typeToString(ty),
                     loc);
    Aggregate fields;
    for (size_t i = 0; i < a->elems.size(); ++i)
      fields.push_back(buildConstant(ty->fields[i].second, a->elems[i], loc));
    return {ty, std::move(fields)};
  }
  case TypeExpr::Kind::Enum: {
    std::string member;
    if (a->kind == AttrExpr::Kind::String)
      member = a->str;
    else
      throw SimError(Err::MalformedAttribute,
                     "expected an enum member name for " + typeToString(ty),
                     loc);
    for (size_t i = 0; i < ty->enumerators.size(); ++i)
      if (ty->enumerators[i] == member)
        return {ty, BitVec4::fromUint(flatWidth(ty), i)};
    throw SimError(Err::UnknownField,
                   "'" + member + "' is not a member of " + typeToString(ty),
                   loc);
  }
  default:
    throw SimError(Err::MalformedAttribute,
                   "cannot build a constant of type " + typeToString(ty), loc);
  }
}

//===----------------------------------------------------------------------===//
// Module structure
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalModule(EvalCtx &ctx, const CanonOp &op) {
  InstanceState &inst = ctx.inst;
  if (op.regions.size() != 1)
    throw SimError(Err::MalformedAttribute, "hw.module requires one region",
                   op.loc);
  const CanonRegion &body = op.regions[0];
  if (body.blocks.size() != 1)
    throw SimError(Err::MultiBlockRegion,
                   "hw.module bodies must have a single block", op.loc);
  const CanonBlock &entry = body.blocks[0];
  if (entry.args.size() != inst.pendingInputs.size())
    throw SimError(Err::PortMismatch,
                   "module '" + inst.mod + "' has " +
                       std::to_string(entry.args.size()) +
                       " block arguments, got " +
                       std::to_string(inst.pendingInputs.size()) + " inputs",
                   op.loc);
  std::vector<TypedValue> inputs = std::move(inst.pendingInputs);
  inst.pendingInputs.clear();
  ctx.sim.writeArgs(inst, entry.args, inputs);
  ctx.sim.splitRegion(inst, body);
  return {};
}

std::vector<TypedValue> evalOutput(EvalCtx &ctx, const CanonOp &op) {
  InstanceState &inst = ctx.inst;
  const CanonOp &moduleOp = ctx.sim.refinedOp(inst.mod);
  const TypeExpr &ports = modulePortsOf(moduleOp);
  if (ports.outputs.size() != op.operands.size())
    throw SimError(Err::ArityMismatch,
                   "hw.output has " + std::to_string(op.operands.size()) +
                       " operands for " + std::to_string(ports.outputs.size()) +
                       " output ports",
                   op.loc);
  for (size_t i = 0; i < op.operands.size(); ++i)
    ctx.sim.writeOut(inst, ports.outputs[i].first, op.operands[i]);
  return {};
}

std::vector<TypedValue> evalInstance(EvalCtx &ctx, const CanonOp &op) {
  InstanceState &inst = ctx.inst;
  const AttrRef *modRef = op.attr("moduleName");
  if (!modRef || (*modRef)->kind != AttrExpr::Kind::SymbolRef ||
      (*modRef)->symbolPath.empty())
    throw SimError(Err::MalformedAttribute,
                   "hw.instance requires a moduleName symbol", op.loc);
  const std::string &moduleName = (*modRef)->symbolPath[0];
  const std::string &instanceName = attrString(op, "instanceName");

  const CanonOp &target = ctx.sim.refinedOp(moduleName); // UnknownSymbol
  if (target.name != "hw.module")
    throw SimError(Err::UnknownSymbol,
                   "symbol '" + moduleName + "' is not a hw.module", op.loc);
  const TypeExpr &ports = modulePortsOf(target);
  if (ports.fields.size() != op.operands.size() ||
      ports.outputs.size() != op.resultTypes.size())
    throw SimError(Err::PortMismatch,
                   "instance of '" + moduleName + "' expects " +
                       std::to_string(ports.fields.size()) + " inputs and " +
                       std::to_string(ports.outputs.size()) + " outputs",
                   op.loc);

  auto childIt = inst.children.find(instanceName);
  if (childIt == inst.children.end()) {
    if (inst.cid.size() >= 64)
      throw SimError(Err::RecursionLimit,
                     "instantiation depth exceeds 64 at '" + instanceName + "'",
                     op.loc);
    auto child = std::make_unique<InstanceState>();
    child->cid = inst.cid;
    child->cid.push_back(instanceName);
    child->mod = moduleName;
    child->parent = &inst;
    childIt = inst.children.emplace(instanceName, std::move(child)).first;
  }
  InstanceState &child = *childIt->second;

  std::vector<TypedValue> inputs = ctx.sim.readOperands(ctx, op);
  ctx.sim.stimulate(child, inputs);
  auto outs = ctx.sim.completeInstanceCycle(child);
  std::vector<TypedValue> results;
  results.reserve(outs.size());
  for (auto &[port, value] : outs)
    results.push_back(std::move(value));
  return results;
}

//===----------------------------------------------------------------------===//
// Constants and wires
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalConstant(EvalCtx &, const CanonOp &op) {
  const AttrRef *value = op.attr("value");
  if (!value || (*value)->kind != AttrExpr::Kind::Int)
    throw SimError(Err::MalformedAttribute,
                   "hw.constant requires an integer value attribute", op.loc);
  const TypeRef &ty = op.resultTypes.at(0);
  return {TypedValue(ty, intAttrBits(*value, flatWidth(ty)))};
}

std::vector<TypedValue> evalAggregateConstant(EvalCtx &, const CanonOp &op) {
  const AttrRef *value = op.attr("value");
  if (!value)
    throw SimError(Err::MalformedAttribute,
                   "hw.aggregate_constant requires a value attribute", op.loc);
  return {buildConstant(op.resultTypes.at(0), *value, op.loc)};
}

std::vector<TypedValue> evalEnumConstant(EvalCtx &, const CanonOp &op) {
  const std::string &member = attrString(op, "field");
  return {buildConstant(op.resultTypes.at(0), AttrExpr::makeString(member),
                        op.loc)};
}

std::vector<TypedValue> evalEnumCmp(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const BitVec4 &a = vals.at(0).bits();
  const BitVec4 &b = vals.at(1).bits();
  if (a.width() != b.width())
    throw SimError(Err::WidthMismatch, "hw.enum.cmp operand widths differ",
                   op.loc);
  if (a.hasXorZ() || b.hasXorZ())
    return {TypedValue(op.resultTypes.at(0), BitVec4::allX(1))};
  bool eq = a == b;
  return {TypedValue(op.resultTypes.at(0), BitVec4::fromUint(1, eq ? 1 : 0))};
}

std::vector<TypedValue> evalWire(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  std::string sym = attrInnerSym(op);
  if (!sym.empty())
    registerOnce(ctx.sim, ctx.inst, /*isReg=*/false, sym, op.resultIds.at(0));
  TypedValue out = vals.at(0);
  out.ty = op.resultTypes.at(0);
  return {std::move(out)};
}

std::vector<TypedValue> evalBitcast(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  BitVec4 flat = flattenValue(vals.at(0));
  const TypeRef &toType = op.resultTypes.at(0);
  if (flat.width() != flatWidth(toType))
    throw SimError(Err::WidthMismatch,
                   "hw.bitcast from " + std::to_string(flat.width()) +
                       " bits to " + typeToString(toType),
                   op.loc);
  return {unflattenValue(toType, flat)};
}

//===----------------------------------------------------------------------===//
// Arrays
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalArrayCreate(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypeRef &ty = op.resultTypes.at(0);
  if (ty->kind != TypeExpr::Kind::Array || vals.size() != ty->arraySize)
    throw SimError(Err::TypeMismatch,
                   "hw.array_create arity does not match " + typeToString(ty),
                   op.loc);
  Aggregate fields(ty->arraySize);
  // First printed operand becomes the highest index.
  for (size_t i = 0; i < vals.size(); ++i) {
    if (!typeEquals(vals[i].ty, ty->elem))
      throw SimError(Err::TypeMismatch, "hw.array_create element type differs",
                     op.loc);
    fields[ty->arraySize - 1 - i] = std::move(vals[i]);
  }
  return {TypedValue(ty, std::move(fields))};
}

std::vector<TypedValue> evalArrayGet(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypedValue &arr = vals.at(0);
  const BitVec4 &idx = vals.at(1).bits();
  const TypeRef elemTy = op.resultTypes.at(0);
  auto u = idx.toUint64();
  if (!u || *u >= arr.fields().size()) {
    ctx.sim.diagnose("hw.array_get: index " +
                         (u ? std::to_string(*u) : std::string("x")) +
                         " is out of range",
                     op.loc);
    return {allXValue(elemTy)};
  }
  return {arr.fields()[*u]};
}

std::vector<TypedValue> evalArraySlice(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypedValue &arr = vals.at(0);
  const BitVec4 &idx = vals.at(1).bits();
  const TypeRef &ty = op.resultTypes.at(0);
  if (ty->kind != TypeExpr::Kind::Array)
    throw SimError(Err::TypeMismatch, "hw.array_slice result must be an array",
                   op.loc);
  auto u = idx.toUint64();
  if (!u || *u + ty->arraySize > arr.fields().size()) {
    ctx.sim.diagnose("hw.array_slice: slice out of range", op.loc);
    return {allXValue(ty)};
  }
  Aggregate fields(arr.fields().begin() + static_cast<ptrdiff_t>(*u),
                   arr.fields().begin() +
                       static_cast<ptrdiff_t>(*u + ty->arraySize));
  return {TypedValue(ty, std::move(fields))};
}

std::vector<TypedValue> evalArrayConcat(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypeRef &ty = op.resultTypes.at(0);
  // First operand occupies the highest indices: concatenate from the last
  // operand upward.
  Aggregate fields;
  for (size_t i = vals.size(); i-- > 0;)
    for (const TypedValue &elem : vals[i].fields())
      fields.push_back(elem);
  if (ty->kind != TypeExpr::Kind::Array || fields.size() != ty->arraySize)
    throw SimError(Err::TypeMismatch,
                   "hw.array_concat sizes do not sum to " + typeToString(ty),
                   op.loc);
  return {TypedValue(ty, std::move(fields))};
}

//===----------------------------------------------------------------------===//
// Structs, unions
//===----------------------------------------------------------------------===//

size_t fieldIndex(const TypeRef &ty, const std::string &name, SourceLoc loc) {
  for (size_t i = 0; i < ty->fields.size(); ++i)
    if (ty->fields[i].first == name)
      return i;
  throw SimError(Err::UnknownField,
                 "no field '" + name + "' in " + typeToString(ty), loc);
}

std::vector<TypedValue> evalStructCreate(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypeRef &ty = op.resultTypes.at(0);
  if (ty->kind != TypeExpr::Kind::Struct || vals.size() != ty->fields.size())
    throw SimError(Err::TypeMismatch,
                   "hw.struct_create arity does not match " + typeToString(ty),
                   op.loc);
  Aggregate fields;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (!typeEquals(vals[i].ty, ty->fields[i].second))
      throw SimError(Err::TypeMismatch,
                     "hw.struct_create field type differs at '" +
                         ty->fields[i].first + "'",
                     op.loc);
    fields.push_back(std::move(vals[i]));
  }
  return {TypedValue(ty, std::move(fields))};
}

std::vector<TypedValue> evalStructExtract(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypedValue &s = vals.at(0);
  size_t idx = fieldIndex(s.ty, attrString(op, "field"), op.loc);
  return {s.fields().at(idx)};
}

std::vector<TypedValue> evalStructInject(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  TypedValue s = vals.at(0);
  size_t idx = fieldIndex(s.ty, attrString(op, "field"), op.loc);
  std::get<Aggregate>(s.val)[idx] = vals.at(1);
  return {std::move(s)};
}

std::vector<TypedValue> evalStructExplode(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  return vals.at(0).fields();
}

std::vector<TypedValue> evalUnionCreate(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypeRef &ty = op.resultTypes.at(0);
  size_t idx = fieldIndex(ty, attrString(op, "field"), op.loc);
  uint32_t storage = flatWidth(ty);
  BitVec4 member = flattenValue(vals.at(0));
  if (!typeEquals(vals.at(0).ty, ty->fields[idx].second))
    throw SimError(Err::TypeMismatch, "hw.union_create member type differs",
                   op.loc);
  // Member occupies the low bits; any remaining storage is X.
  BitVec4 out = BitVec4::allX(storage);
  for (uint32_t i = 0; i < member.width(); ++i)
    out.setBit(i, member.bit(i));
  return {TypedValue(ty, std::move(out))};
}

std::vector<TypedValue> evalUnionExtract(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  const TypedValue &u = vals.at(0);
  size_t idx = fieldIndex(u.ty, attrString(op, "field"), op.loc);
  const TypeRef &memberTy = u.ty->fields[idx].second;
  uint32_t mw = flatWidth(memberTy);
  return {unflattenValue(memberTy, slice(u.bits(), 0, mw))};
}

std::vector<TypedValue> evalHierpath(EvalCtx &, const CanonOp &) {
  // Paths are recorded during preprocessing; no runtime behavior in scope.
  return {};
}

} // namespace

void registerHwDialect(OpRegistry &r) {
  r.add("hw.module", {&evalModule, nullptr, false, {}});
  r.add("hw.output", {&evalOutput, nullptr, false, {}});
  r.add("hw.instance", {&evalInstance, nullptr, false, {}});
  r.add("hw.constant", {&evalConstant, nullptr, false, {}});
  r.add("hw.aggregate_constant", {&evalAggregateConstant, nullptr, false, {}});
  r.add("hw.enum.constant", {&evalEnumConstant, nullptr, false, {}});
  r.add("hw.enum.cmp", {&evalEnumCmp, nullptr, false, {}});
  r.add("hw.wire", {&evalWire, nullptr, false, {}});
  r.add("hw.bitcast", {&evalBitcast, nullptr, false, {}});
  r.add("hw.array_create", {&evalArrayCreate, nullptr, false, {}});
  r.add("hw.array_get", {&evalArrayGet, nullptr, false, {}});
  r.add("hw.array_slice", {&evalArraySlice, nullptr, false, {}});
  r.add("hw.array_concat", {&evalArrayConcat, nullptr, false, {}});
  r.add("hw.struct_create", {&evalStructCreate, nullptr, false, {}});
  r.add("hw.struct_extract", {&evalStructExtract, nullptr, false, {}});
  r.add("hw.struct_inject", {&evalStructInject, nullptr, false, {}});
  r.add("hw.struct_explode", {&evalStructExplode, nullptr, false, {}});
  r.add("hw.union_create", {&evalUnionCreate, nullptr, false, {}});
  r.add("hw.union_extract", {&evalUnionExtract, nullptr, false, {}});
  r.add("hw.hierpath", {&evalHierpath, nullptr, false, {}});
}

} // namespace hwsim
