//===- ast.cpp - Syntax tree helpers ---------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/ast.hpp"

#include <algorithm>

namespace hwsim {

//===----------------------------------------------------------------------===//
// IntLit
//===----------------------------------------------------------------------===//

static void trimZeros(std::vector<uint64_t> &limbs) {
  while (!limbs.empty() && limbs.back() == 0)
    limbs.pop_back();
}

IntLit IntLit::fromUint(uint64_t v) {
  IntLit l;
  if (v)
    l.magnitude.push_back(v);
  return l;
}

IntLit IntLit::fromInt(int64_t v) {
  IntLit l;
  l.negative = v < 0;
  uint64_t mag = l.negative ? ~static_cast<uint64_t>(v) + 1
                            : static_cast<uint64_t>(v);
  if (mag)
    l.magnitude.push_back(mag);
  return l;
}

IntLit IntLit::fromDigits(std::string_view text) {
  IntLit l;
  if (!text.empty() && text[0] == '-') {
    l.negative = true;
    text.remove_prefix(1);
  }
  auto mulAdd = [&](uint64_t mul, uint64_t add) {
    unsigned __int128 carry = add;
    for (auto &limb : l.magnitude) {
      unsigned __int128 cur = (unsigned __int128)limb * mul + carry;
      limb = static_cast<uint64_t>(cur);
      carry = cur >> 64;
    }
    while (carry) {
      l.magnitude.push_back(static_cast<uint64_t>(carry));
      carry >>= 64;
    }
  };
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    for (char c : text.substr(2)) {
      uint64_t d;
      if (c >= '0' && c <= '9')
        d = c - '0';
      else if (c >= 'a' && c <= 'f')
        d = 10 + c - 'a';
      else if (c >= 'A' && c <= 'F')
        d = 10 + c - 'A';
      else
        throw SimError(Err::Parse, "bad hex digit in integer literal");
      mulAdd(16, d);
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw SimError(Err::Parse, "bad digit in integer literal");
      mulAdd(10, c - '0');
    }
  }
  trimZeros(l.magnitude);
  if (l.magnitude.empty())
    l.negative = false;
  return l;
}

bool IntLit::isZero() const { return magnitude.empty(); }

std::string IntLit::toDecimalString() const {
  if (isZero())
    return "0";
  std::vector<uint64_t> work = magnitude;
  std::string digits;
  while (!work.empty()) {
    // divide by 10, collect remainder
    unsigned __int128 rem = 0;
    for (size_t i = work.size(); i-- > 0;) {
      unsigned __int128 cur = (rem << 64) | work[i];
      work[i] = static_cast<uint64_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + static_cast<int>(rem)));
    trimZeros(work);
  }
  if (negative)
    digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::vector<uint64_t> IntLit::toTwosComplement(uint32_t width) const {
  size_t n = (width + 63) / 64;
  std::vector<uint64_t> out(n, 0);
  for (size_t i = 0; i < n && i < magnitude.size(); ++i)
    out[i] = magnitude[i];
  if (negative) {
    for (auto &limb : out)
      limb = ~limb;
    // +1
    for (auto &limb : out) {
      if (++limb != 0)
        break;
    }
  }
  // mask the top limb to the width
  if (width % 64 && !out.empty())
    out.back() &= (~uint64_t(0)) >> (64 - width % 64);
  return out;
}

//===----------------------------------------------------------------------===//
// Type construction and equality
//===----------------------------------------------------------------------===//

static std::shared_ptr<TypeExpr> newType(TypeExpr::Kind k) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = k;
  return t;
}

TypeRef TypeExpr::makeInt(uint32_t width) {
  auto t = newType(Kind::Int);
  t->intWidth = width;
  return t;
}
TypeRef TypeExpr::makeClock() { return newType(Kind::Clock); }
TypeRef TypeExpr::makeAlias(std::string name) {
  auto t = newType(Kind::Alias);
  t->name = std::move(name);
  return t;
}
TypeRef TypeExpr::makeInout(TypeRef elem) {
  auto t = newType(Kind::Inout);
  t->elem = std::move(elem);
  return t;
}
TypeRef TypeExpr::makeArray(uint64_t size, TypeRef elem) {
  auto t = newType(Kind::Array);
  t->arraySize = size;
  t->elem = std::move(elem);
  return t;
}
TypeRef TypeExpr::makeStruct(std::vector<std::pair<std::string, TypeRef>> fs) {
  auto t = newType(Kind::Struct);
  t->fields = std::move(fs);
  return t;
}
TypeRef TypeExpr::makeUnion(std::vector<std::pair<std::string, TypeRef>> fs) {
  auto t = newType(Kind::Union);
  t->fields = std::move(fs);
  return t;
}
TypeRef TypeExpr::makeEnum(std::vector<std::string> members) {
  auto t = newType(Kind::Enum);
  t->enumerators = std::move(members);
  return t;
}
TypeRef TypeExpr::makeFunc(std::vector<TypeRef> ins, std::vector<TypeRef> outs) {
  auto t = newType(Kind::Func);
  t->funcIns = std::move(ins);
  t->funcOuts = std::move(outs);
  return t;
}
TypeRef TypeExpr::makeModule(std::vector<std::pair<std::string, TypeRef>> ins,
                             std::vector<std::pair<std::string, TypeRef>> outs) {
  auto t = newType(Kind::Module);
  t->fields = std::move(ins);
  t->outputs = std::move(outs);
  return t;
}
TypeRef TypeExpr::makeFirMem(uint64_t depth, uint32_t width) {
  auto t = newType(Kind::FirMem);
  t->memDepth = depth;
  t->memWidth = width;
  return t;
}
TypeRef TypeExpr::makeOpaque(std::string text) {
  auto t = newType(Kind::OpaqueDialect);
  t->name = std::move(text);
  return t;
}

static bool fieldsEqual(const std::vector<std::pair<std::string, TypeRef>> &a,
                        const std::vector<std::pair<std::string, TypeRef>> &b) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !typeEquals(a[i].second, b[i].second))
      return false;
  return true;
}

bool typeEquals(const TypeRef &a, const TypeRef &b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
  case TypeExpr::Kind::Int:
    return a->intWidth == b->intWidth;
  case TypeExpr::Kind::Clock:
    return true;
  case TypeExpr::Kind::Alias:
  case TypeExpr::Kind::OpaqueDialect:
    return a->name == b->name;
  case TypeExpr::Kind::Inout:
    return typeEquals(a->elem, b->elem);
  case TypeExpr::Kind::Array:
    return a->arraySize == b->arraySize && typeEquals(a->elem, b->elem);
  case TypeExpr::Kind::Struct:
  case TypeExpr::Kind::Union:
    return fieldsEqual(a->fields, b->fields);
  case TypeExpr::Kind::Enum:
    return a->enumerators == b->enumerators;
  case TypeExpr::Kind::Func: {
    auto eq = [](const std::vector<TypeRef> &x, const std::vector<TypeRef> &y) {
      if (x.size() != y.size())
        return false;
      for (size_t i = 0; i < x.size(); ++i)
        if (!typeEquals(x[i], y[i]))
          return false;
      return true;
    };
    return eq(a->funcIns, b->funcIns) && eq(a->funcOuts, b->funcOuts);
  }
  case TypeExpr::Kind::Module:
    return fieldsEqual(a->fields, b->fields) &&
           fieldsEqual(a->outputs, b->outputs);
  case TypeExpr::Kind::FirMem:
    return a->memDepth == b->memDepth && a->memWidth == b->memWidth;
  }
  return false;
}

//===----------------------------------------------------------------------===//
// Attribute construction and equality
//===----------------------------------------------------------------------===//

static std::shared_ptr<AttrExpr> newAttr(AttrExpr::Kind k) {
  auto a = std::make_shared<AttrExpr>();
  a->kind = k;
  return a;
}

AttrRef AttrExpr::makeInt(IntLit v, TypeRef type) {
  auto a = newAttr(Kind::Int);
  a->intVal = std::move(v);
  a->intType = std::move(type);
  return a;
}
AttrRef AttrExpr::makeBool(bool v) {
  auto a = newAttr(Kind::Bool);
  a->boolVal = v;
  return a;
}
AttrRef AttrExpr::makeString(std::string s) {
  auto a = newAttr(Kind::String);
  a->str = std::move(s);
  return a;
}
AttrRef AttrExpr::makeArray(std::vector<AttrRef> elems) {
  auto a = newAttr(Kind::Array);
  a->elems = std::move(elems);
  return a;
}
AttrRef AttrExpr::makeDict(std::vector<std::pair<std::string, AttrRef>> es) {
  auto a = newAttr(Kind::Dict);
  a->entries = std::move(es);
  return a;
}
AttrRef AttrExpr::makeSymbolRef(std::vector<std::string> path) {
  auto a = newAttr(Kind::SymbolRef);
  a->symbolPath = std::move(path);
  return a;
}
AttrRef AttrExpr::makeUnit() { return newAttr(Kind::Unit); }
AttrRef AttrExpr::makeType(TypeRef t) {
  auto a = newAttr(Kind::Type);
  a->typeVal = std::move(t);
  return a;
}
AttrRef AttrExpr::makeAlias(std::string name) {
  auto a = newAttr(Kind::Alias);
  a->str = std::move(name);
  return a;
}
AttrRef AttrExpr::makeOpaque(std::string text) {
  auto a = newAttr(Kind::OpaqueDialect);
  a->str = std::move(text);
  return a;
}

bool attrEquals(const AttrRef &a, const AttrRef &b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
  case AttrExpr::Kind::Int:
    return a->intVal == b->intVal && typeEquals(a->intType, b->intType);
  case AttrExpr::Kind::Bool:
    return a->boolVal == b->boolVal;
  case AttrExpr::Kind::String:
  case AttrExpr::Kind::Alias:
  case AttrExpr::Kind::OpaqueDialect:
    return a->str == b->str;
  case AttrExpr::Kind::Array: {
    if (a->elems.size() != b->elems.size())
      return false;
    for (size_t i = 0; i < a->elems.size(); ++i)
      if (!attrEquals(a->elems[i], b->elems[i]))
        return false;
    return true;
  }
  case AttrExpr::Kind::Dict:
    return dictEquals(a->entries, b->entries);
  case AttrExpr::Kind::SymbolRef:
    return a->symbolPath == b->symbolPath;
  case AttrExpr::Kind::Unit:
    return true;
  case AttrExpr::Kind::Type:
    return typeEquals(a->typeVal, b->typeVal);
  }
  return false;
}

bool dictEquals(const DictAttr &a, const DictAttr &b) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !attrEquals(a[i].second, b[i].second))
      return false;
  return true;
}

const AttrRef *dictGet(const DictAttr &d, std::string_view key) {
  for (const auto &[k, v] : d)
    if (k == key)
      return &v;
  return nullptr;
}

//===----------------------------------------------------------------------===//
// Structural equality of operations
//===----------------------------------------------------------------------===//

bool Block::operator==(const Block &o) const {
  if (label != o.label || args.size() != o.args.size() ||
      ops.size() != o.ops.size())
    return false;
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i].first != o.args[i].first ||
        !typeEquals(args[i].second, o.args[i].second))
      return false;
  return ops == o.ops;
}

bool Region::operator==(const Region &o) const { return blocks == o.blocks; }

bool Operation::operator==(const Operation &o) const {
  if (results != o.results || name != o.name || operands != o.operands ||
      successors != o.successors)
    return false;
  if (properties.has_value() != o.properties.has_value())
    return false;
  if (properties && !dictEquals(*properties, *o.properties))
    return false;
  if (!dictEquals(attributes, o.attributes))
    return false;
  if (!typeEquals(funcType, o.funcType))
    return false;
  return regions == o.regions;
}

bool SourceFile::operator==(const SourceFile &o) const {
  return items == o.items;
}

} // namespace hwsim
