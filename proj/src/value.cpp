//===- value.cpp - Runtime values --------------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/value.hpp"

#include "hwsim/printer.hpp"

namespace hwsim {

std::string StorageRef::slotKey() const {
  std::string key = instanceKey + "/" + std::to_string(cell);
  for (uint32_t i : path)
    key += "[" + std::to_string(i) + "]";
  return key;
}

const BitVec4 &TypedValue::bits() const {
  if (!isBits())
    throw SimError(Err::TypeMismatch, "value of type " + typeToString(ty) +
                                          " has no flat bit representation");
  return std::get<BitVec4>(val);
}

const Aggregate &TypedValue::fields() const {
  if (!isAggregate())
    throw SimError(Err::TypeMismatch,
                   "value of type " + typeToString(ty) + " is not aggregate");
  return std::get<Aggregate>(val);
}

const StorageRef &TypedValue::ref() const {
  if (!isRef())
    throw SimError(Err::DanglingRef, "value of type " + typeToString(ty) +
                                         " is not an inout reference");
  return std::get<StorageRef>(val);
}

const MemRef &TypedValue::mem() const {
  if (!isMem())
    throw SimError(Err::TypeMismatch,
                   "value of type " + typeToString(ty) + " is not a memory");
  return std::get<MemRef>(val);
}

bool TypedValue::operator==(const TypedValue &o) const {
  return typeEquals(ty, o.ty) && val == o.val;
}

uint32_t clog2ceil(uint64_t n) {
  uint32_t w = 0;
  while ((uint64_t(1) << w) < n)
    ++w;
  return w == 0 ? 1 : w;
}

uint32_t flatWidth(const TypeRef &t) {
  switch (t->kind) {
  case TypeExpr::Kind::Int:
    return t->intWidth;
  case TypeExpr::Kind::Clock:
    return 1;
  case TypeExpr::Kind::Array: {
    uint64_t total = t->arraySize * uint64_t(flatWidth(t->elem));
    if (total > kMaxWidth)
      throw SimError(Err::WidthCap, "flattened array exceeds the width cap");
    return static_cast<uint32_t>(total);
  }
  case TypeExpr::Kind::Struct: {
    uint64_t total = 0;
    for (const auto &[n, ft] : t->fields)
      total += flatWidth(ft);
    if (total > kMaxWidth)
      throw SimError(Err::WidthCap, "flattened struct exceeds the width cap");
    return static_cast<uint32_t>(total);
  }
  case TypeExpr::Kind::Union: {
    uint32_t widest = 1;
    for (const auto &[n, ft] : t->fields)
      widest = std::max(widest, flatWidth(ft));
    return widest;
  }
  case TypeExpr::Kind::Enum:
    return clog2ceil(t->enumerators.size());
  default:
    throw SimError(Err::TypeMismatch, "type " + typeToString(t) +
                                          " has no bit representation");
  }
}

TypedValue allXValue(const TypeRef &t) {
  switch (t->kind) {
  case TypeExpr::Kind::Array: {
    Aggregate elems(t->arraySize, allXValue(t->elem));
    return {t, std::move(elems)};
  }
  case TypeExpr::Kind::Struct: {
    Aggregate elems;
    for (const auto &[n, ft] : t->fields)
      elems.push_back(allXValue(ft));
    return {t, std::move(elems)};
  }
  default:
    return {t, BitVec4::allX(flatWidth(t))};
  }
}

bool valueMatchesType(const TypedValue &v, const TypeRef &t) {
  if (!typeEquals(v.ty, t))
    return false;
  switch (t->kind) {
  case TypeExpr::Kind::Array:
    return v.isAggregate() && v.fields().size() == t->arraySize;
  case TypeExpr::Kind::Struct:
    return v.isAggregate() && v.fields().size() == t->fields.size();
  case TypeExpr::Kind::Inout:
    return v.isRef();
  case TypeExpr::Kind::FirMem:
    return v.isMem();
  default:
    return v.isBits() && v.bits().width() == flatWidth(t);
  }
}

BitVec4 flattenValue(const TypedValue &v) {
  if (v.isBits())
    return v.bits();
  const Aggregate &fs = v.fields();
  // Aggregates store array elements in index order and struct fields in
  // declaration order. Flattening puts array element N-1 and struct field 0
  // in the most significant bits.
  BitVec4 out(0, Bit4::B0);
  if (v.ty->kind == TypeExpr::Kind::Array) {
    for (size_t i = fs.size(); i-- > 0;)
      out = concat2(out, flattenValue(fs[i]));
  } else {
    for (const TypedValue &f : fs)
      out = concat2(out, flattenValue(f));
  }
  return out;
}

TypedValue unflattenValue(const TypeRef &t, const BitVec4 &flat) {
  uint32_t w = flatWidth(t);
  if (flat.width() != w)
    throw SimError(Err::WidthMismatch,
                   "cannot reinterpret " + std::to_string(flat.width()) +
                       " bits as " + typeToString(t));
  switch (t->kind) {
  case TypeExpr::Kind::Array: {
    Aggregate elems;
    uint32_t ew = flatWidth(t->elem);
    // Element i occupies bits [i*ew, (i+1)*ew).
    for (uint64_t i = 0; i < t->arraySize; ++i)
      elems.push_back(
          unflattenValue(t->elem, slice(flat, static_cast<uint32_t>(i * ew), ew)));
    return {t, std::move(elems)};
  }
  case TypeExpr::Kind::Struct: {
    Aggregate elems;
    uint32_t offset = w;
    for (const auto &[n, ft] : t->fields) {
      uint32_t fw = flatWidth(ft);
      offset -= fw;
      elems.push_back(unflattenValue(ft, slice(flat, offset, fw)));
    }
    return {t, std::move(elems)};
  }
  default:
    return {t, flat};
  }
}

std::string renderValue(const TypedValue &v) {
  if (v.isBits()) {
    const BitVec4 &b = v.bits();
    if (auto limbs = b.toLimbs()) {
      IntLit lit;
      lit.magnitude = *limbs;
      while (!lit.magnitude.empty() && lit.magnitude.back() == 0)
        lit.magnitude.pop_back();
      return lit.toDecimalString();
    }
    return "b" + b.toBinaryString();
  }
  if (v.isAggregate()) {
    std::string out = "[";
    const Aggregate &fs = v.fields();
    for (size_t i = 0; i < fs.size(); ++i) {
      if (i)
        out += ", ";
      out += renderValue(fs[i]);
    }
    return out + "]";
  }
  if (v.isRef())
    return "&" + v.ref().slotKey();
  return "<mem>";
}

} // namespace hwsim
