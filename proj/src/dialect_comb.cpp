//===- dialect_comb.cpp - Combinational logic evaluators ---------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Evaluation semantics for the 20 comb operations. Arithmetic and logic are
// two-state: any X or Z bit in any operand yields an all-X result, except
// concat and extract which propagate X/Z positionally.
//
//===----------------------------------------------------------------------===//

#include "hwsim/engine.hpp"
#include "hwsim/printer.hpp"

namespace hwsim {

namespace {

struct CombOperands {
  std::vector<BitVec4> vecs;
  bool anyXZ = false;
};

CombOperands combOperands(EvalCtx &ctx, const CanonOp &op) {
  std::vector<TypedValue> vals = ctx.sim.readOperands(ctx, op);
  std::vector<uint32_t> widths;
  widths.reserve(op.operandTypes.size());
  for (const TypeRef &t : op.operandTypes)
    widths.push_back(flatWidth(t));
  CombOperands out;
  out.vecs = bitsOf(vals, widths);
  for (const BitVec4 &v : out.vecs)
    if (v.hasXorZ())
      out.anyXZ = true;
  return out;
}

uint32_t resultWidth(const CanonOp &op) {
  if (op.resultTypes.size() != 1)
    throw SimError(Err::ArityMismatch,
                   op.name + " must have exactly one result", op.loc);
  return flatWidth(op.resultTypes[0]);
}

std::vector<TypedValue> one(const CanonOp &op, BitVec4 v) {
  return {TypedValue(op.resultTypes[0], std::move(v))};
}

std::vector<TypedValue> allXResult(const CanonOp &op) {
  return one(op, BitVec4::allX(resultWidth(op)));
}

void requireEqualWidths(const CombOperands &in, uint32_t w,
                        const CanonOp &op) {
  for (const BitVec4 &v : in.vecs)
    if (v.width() != w)
      throw SimError(Err::WidthMismatch,
                     op.name + " operand width " + std::to_string(v.width()) +
                         " does not match result width " + std::to_string(w),
                     op.loc);
}

//===----------------------------------------------------------------------===//
// Variadic folds
//===----------------------------------------------------------------------===//

template <BitVec4 (*Fold)(const BitVec4 &, const BitVec4 &)>
std::vector<TypedValue> evalVariadic(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.empty())
    throw SimError(Err::EmptyOperandList,
                   op.name + " requires at least one operand", op.loc);
  uint32_t w = resultWidth(op);
  requireEqualWidths(in, w, op);
  if (in.anyXZ)
    return allXResult(op);
  BitVec4 acc = in.vecs[0];
  for (size_t i = 1; i < in.vecs.size(); ++i)
    acc = Fold(acc, in.vecs[i]);
  return one(op, std::move(acc));
}

std::vector<TypedValue> evalConcat(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.empty())
    throw SimError(Err::EmptyOperandList,
                   "comb.concat requires at least one operand", op.loc);
  uint32_t w = resultWidth(op);
  // First printed operand occupies the most significant bits.
  BitVec4 acc(0, Bit4::B0);
  for (const BitVec4 &v : in.vecs)
    acc = concat2(acc, v);
  if (acc.width() != w)
    throw SimError(Err::WidthMismatch,
                   "comb.concat operand widths sum to " +
                       std::to_string(acc.width()) + ", result declares " +
                       std::to_string(w),
                   op.loc);
  return one(op, std::move(acc));
}

//===----------------------------------------------------------------------===//
// Binary operations
//===----------------------------------------------------------------------===//

enum class Bin { Sub, DivS, DivU, ModS, ModU, Shl, Shrs, Shru };

template <Bin K>
std::vector<TypedValue> evalBinary(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.size() != 2)
    throw SimError(Err::ArityMismatch,
                   op.name + " requires exactly two operands", op.loc);
  uint32_t w = resultWidth(op);
  requireEqualWidths(in, w, op);
  if (in.anyXZ)
    return allXResult(op);
  const BitVec4 &a = in.vecs[0], &b = in.vecs[1];
  if constexpr (K == Bin::DivS || K == Bin::DivU || K == Bin::ModS ||
                K == Bin::ModU) {
    if (b.isAllZero()) {
      // Division by a defined zero: all-X result plus a diagnostic; the
      // simulation keeps running.
      ctx.sim.diagnose(op.name + ": division by zero", op.loc);
      countErrorPath(Err::DivisionByZero);
      return allXResult(op);
    }
  }
  switch (K) {
  case Bin::Sub: return one(op, subMod(a, b));
  case Bin::DivS: return one(op, divSigned(a, b));
  case Bin::DivU: return one(op, divUnsigned(a, b));
  case Bin::ModS: return one(op, modSigned(a, b));
  case Bin::ModU: return one(op, modUnsigned(a, b));
  case Bin::Shl: return one(op, shiftLeft(a, b));
  case Bin::Shrs: return one(op, shiftRightArith(a, b));
  case Bin::Shru: return one(op, shiftRightLogical(a, b));
  }
  return allXResult(op);
}

//===----------------------------------------------------------------------===//
// Comparison
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalIcmp(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.size() != 2)
    throw SimError(Err::ArityMismatch, "comb.icmp requires two operands",
                   op.loc);
  if (in.vecs[0].width() != in.vecs[1].width())
    throw SimError(Err::WidthMismatch, "comb.icmp operand widths differ",
                   op.loc);
  const AttrRef *pred = op.attr("predicate");
  if (!pred || (*pred)->kind != AttrExpr::Kind::Int)
    throw SimError(Err::MalformedAttribute,
                   "comb.icmp requires an integer predicate attribute",
                   op.loc);
  uint64_t p = (*pred)->intVal.magnitude.empty()
                   ? 0
                   : (*pred)->intVal.magnitude[0];
  if ((*pred)->intVal.negative || p > 9)
    throw SimError(Err::MalformedAttribute, "comb.icmp predicate out of range",
                   op.loc);
  if (in.anyXZ)
    return one(op, BitVec4::allX(1));
  int su = compareUnsigned(in.vecs[0], in.vecs[1]);
  int ss = compareSigned(in.vecs[0], in.vecs[1]);
  bool r = false;
  switch (p) {
  case 0: r = su == 0; break; // eq
  case 1: r = su != 0; break; // ne
  case 2: r = ss < 0; break;  // slt
  case 3: r = ss <= 0; break; // sle
  case 4: r = ss > 0; break;  // sgt
  case 5: r = ss >= 0; break; // sge
  case 6: r = su < 0; break;  // ult
  case 7: r = su <= 0; break; // ule
  case 8: r = su > 0; break;  // ugt
  case 9: r = su >= 0; break; // uge
  }
  return one(op, BitVec4::fromUint(1, r ? 1 : 0));
}

//===----------------------------------------------------------------------===//
// Structural operations
//===----------------------------------------------------------------------===//

std::vector<TypedValue> evalExtract(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.size() != 1)
    throw SimError(Err::ArityMismatch, "comb.extract requires one operand",
                   op.loc);
  const AttrRef *lowAttr = op.attr("lowBit");
  if (!lowAttr || (*lowAttr)->kind != AttrExpr::Kind::Int ||
      (*lowAttr)->intVal.negative)
    throw SimError(Err::MalformedAttribute,
                   "comb.extract requires a non-negative lowBit attribute",
                   op.loc);
  uint64_t low = (*lowAttr)->intVal.magnitude.empty()
                     ? 0
                     : (*lowAttr)->intVal.magnitude[0];
  uint32_t w = resultWidth(op);
  if (low + w > in.vecs[0].width())
    throw SimError(Err::OutOfRange,
                   "comb.extract range [" + std::to_string(low) + ", " +
                       std::to_string(low + w) + ") exceeds operand width " +
                       std::to_string(in.vecs[0].width()),
                   op.loc);
  return one(op, slice(in.vecs[0], static_cast<uint32_t>(low), w));
}

std::vector<TypedValue> evalReplicate(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.size() != 1)
    throw SimError(Err::ArityMismatch, "comb.replicate requires one operand",
                   op.loc);
  uint32_t w = resultWidth(op);
  uint32_t ow = in.vecs[0].width();
  if (ow == 0 || w % ow != 0)
    throw SimError(Err::WidthMismatch,
                   "comb.replicate result width must be a multiple of the "
                   "operand width",
                   op.loc);
  if (in.anyXZ)
    return allXResult(op);
  BitVec4 acc(0, Bit4::B0);
  for (uint32_t i = 0; i < w / ow; ++i)
    acc = concat2(acc, in.vecs[0]);
  return one(op, std::move(acc));
}

std::vector<TypedValue> evalParity(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.size() != 1)
    throw SimError(Err::ArityMismatch, "comb.parity requires one operand",
                   op.loc);
  if (in.anyXZ)
    return one(op, BitVec4::allX(1));
  uint32_t ones = 0;
  for (uint32_t i = 0; i < in.vecs[0].width(); ++i)
    if (in.vecs[0].bit(i) == Bit4::B1)
      ++ones;
  return one(op, BitVec4::fromUint(1, ones & 1));
}

std::vector<TypedValue> evalMux(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  if (in.vecs.size() != 3)
    throw SimError(Err::ArityMismatch, "comb.mux requires three operands",
                   op.loc);
  uint32_t w = resultWidth(op);
  if (in.vecs[0].width() != 1)
    throw SimError(Err::WidthMismatch, "comb.mux selector must be one bit",
                   op.loc);
  if (in.vecs[1].width() != w || in.vecs[2].width() != w)
    throw SimError(Err::WidthMismatch,
                   "comb.mux branch widths do not match the result", op.loc);
  Bit4 sel = in.vecs[0].bit(0);
  if (sel == Bit4::BX || sel == Bit4::BZ || in.vecs[1].hasXorZ() ||
      in.vecs[2].hasXorZ())
    return allXResult(op);
  return one(op, sel == Bit4::B1 ? in.vecs[1] : in.vecs[2]);
}

std::vector<TypedValue> evalTruthTable(EvalCtx &ctx, const CanonOp &op) {
  CombOperands in = combOperands(ctx, op);
  const AttrRef *table = op.attr("lookupTable");
  if (!table || (*table)->kind != AttrExpr::Kind::Array)
    throw SimError(Err::MalformedAttribute,
                   "comb.truth_table requires a lookupTable array", op.loc);
  size_t n = in.vecs.size();
  if (n == 0 || (*table)->elems.size() != (size_t(1) << n))
    throw SimError(Err::ArityMismatch,
                   "comb.truth_table with " + std::to_string(n) +
                       " inputs requires " + std::to_string(size_t(1) << n) +
                       " rows",
                   op.loc);
  for (const BitVec4 &v : in.vecs)
    if (v.width() != 1)
      throw SimError(Err::WidthMismatch,
                     "comb.truth_table inputs must be one bit", op.loc);
  if (in.anyXZ)
    return one(op, BitVec4::allX(1));
  // First input is the most significant index bit.
  size_t index = 0;
  for (const BitVec4 &v : in.vecs)
    index = (index << 1) | (v.bit(0) == Bit4::B1 ? 1 : 0);
  const AttrRef &row = (*table)->elems[index];
  bool bit;
  if (row->kind == AttrExpr::Kind::Bool)
    bit = row->boolVal;
  else if (row->kind == AttrExpr::Kind::Int)
    bit = !row->intVal.isZero();
  else
    throw SimError(Err::MalformedAttribute,
                   "comb.truth_table rows must be booleans", op.loc);
  return one(op, BitVec4::fromUint(1, bit ? 1 : 0));
}

} // namespace

void registerCombDialect(OpRegistry &r) {
  r.add("comb.add", {&evalVariadic<addMod>, nullptr, false, {}});
  r.add("comb.mul", {&evalVariadic<mulMod>, nullptr, false, {}});
  r.add("comb.and", {&evalVariadic<bitAnd>, nullptr, false, {}});
  r.add("comb.or", {&evalVariadic<bitOr>, nullptr, false, {}});
  r.add("comb.xor", {&evalVariadic<bitXor>, nullptr, false, {}});
  r.add("comb.concat", {&evalConcat, nullptr, false, {}});
  r.add("comb.sub", {&evalBinary<Bin::Sub>, nullptr, false, {}});
  r.add("comb.divs", {&evalBinary<Bin::DivS>, nullptr, false, {}});
  r.add("comb.divu", {&evalBinary<Bin::DivU>, nullptr, false, {}});
  r.add("comb.mods", {&evalBinary<Bin::ModS>, nullptr, false, {}});
  r.add("comb.modu", {&evalBinary<Bin::ModU>, nullptr, false, {}});
  r.add("comb.shl", {&evalBinary<Bin::Shl>, nullptr, false, {}});
  r.add("comb.shrs", {&evalBinary<Bin::Shrs>, nullptr, false, {}});
  r.add("comb.shru", {&evalBinary<Bin::Shru>, nullptr, false, {}});
  r.add("comb.icmp", {&evalIcmp, nullptr, false, {}});
  r.add("comb.extract", {&evalExtract, nullptr, false, {}});
  r.add("comb.replicate", {&evalReplicate, nullptr, false, {}});
  r.add("comb.parity", {&evalParity, nullptr, false, {}});
  r.add("comb.mux", {&evalMux, nullptr, false, {}});
  r.add("comb.truth_table", {&evalTruthTable, nullptr, false, {}});
}

} // namespace hwsim
