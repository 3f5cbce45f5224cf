//===- ast.hpp - Syntax tree for generic MLIR text ------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hwsim/diag.hpp"

namespace hwsim {

struct TypeExpr;
struct AttrExpr;
using TypeRef = std::shared_ptr<const TypeExpr>;
using AttrRef = std::shared_ptr<const AttrExpr>;

//===----------------------------------------------------------------------===//
// Integer literals
//===----------------------------------------------------------------------===//

/// Arbitrary-precision integer literal: sign + little-endian 64-bit limbs.
/// Wide enough for any constant accepted by the width cap.
struct IntLit {
  bool negative = false;
  std::vector<uint64_t> magnitude; // LSB limb first, no trailing zero limbs

  static IntLit fromUint(uint64_t v);
  static IntLit fromInt(int64_t v);
  /// Parse decimal ("-42") or hexadecimal ("0x2A") digits.
  static IntLit fromDigits(std::string_view text);

  bool isZero() const;
  std::string toDecimalString() const;
  /// Value mod 2^width as unsigned limbs (two's complement for negatives).
  std::vector<uint64_t> toTwosComplement(uint32_t width) const;

  bool operator==(const IntLit &) const = default;
};

//===----------------------------------------------------------------------===//
// Types
//===----------------------------------------------------------------------===//

struct TypeExpr {
  enum class Kind {
    Int,      // iN
    Clock,    // !seq.clock
    Alias,    // !name
    Inout,    // !hw.inout<T>
    Array,    // !hw.array<NxT>
    Struct,   // !hw.struct<a: T, ...>
    Union,    // !hw.union<a: T, ...>
    Enum,     // !hw.enum<A, B, ...>
    Func,     // (T...) -> (T...)
    Module,   // !hw.modty<input a : T, output b : T>
    FirMem,   // !seq.firmem<D x W>
    OpaqueDialect, // !dialect<raw> or !dialect.name, kept verbatim
  };

  Kind kind;
  uint32_t intWidth = 0;                                // Int
  std::string name;                                     // Alias, OpaqueDialect
  TypeRef elem;                                         // Inout, Array
  uint64_t arraySize = 0;                               // Array
  uint64_t memDepth = 0;                                // FirMem
  uint32_t memWidth = 0;                                // FirMem
  std::vector<std::pair<std::string, TypeRef>> fields;  // Struct/Union/Module inputs
  std::vector<std::pair<std::string, TypeRef>> outputs; // Module outputs
  std::vector<std::string> enumerators;                 // Enum
  std::vector<TypeRef> funcIns, funcOuts;               // Func

  static TypeRef makeInt(uint32_t width);
  static TypeRef makeClock();
  static TypeRef makeAlias(std::string name);
  static TypeRef makeInout(TypeRef elem);
  static TypeRef makeArray(uint64_t size, TypeRef elem);
  static TypeRef makeStruct(std::vector<std::pair<std::string, TypeRef>> fs);
  static TypeRef makeUnion(std::vector<std::pair<std::string, TypeRef>> fs);
  static TypeRef makeEnum(std::vector<std::string> members);
  static TypeRef makeFunc(std::vector<TypeRef> ins, std::vector<TypeRef> outs);
  static TypeRef makeModule(std::vector<std::pair<std::string, TypeRef>> ins,
                            std::vector<std::pair<std::string, TypeRef>> outs);
  static TypeRef makeFirMem(uint64_t depth, uint32_t width);
  static TypeRef makeOpaque(std::string text);
};

bool typeEquals(const TypeRef &a, const TypeRef &b);
std::string typeToString(const TypeRef &t);

//===----------------------------------------------------------------------===//
// Attributes
//===----------------------------------------------------------------------===//

struct AttrExpr {
  enum class Kind {
    Int,       // 5 : i8, -1, 0x1F : i32
    Bool,      // true / false
    String,    // "text"
    Array,     // [a, b]
    Dict,      // {k = v, flag}
    SymbolRef, // @Sym or @A::@b
    Unit,      // bare key in a dictionary
    Type,      // a type used as an attribute value
    Alias,     // #name
    OpaqueDialect, // #dialect<raw>, kept verbatim
  };

  Kind kind;
  IntLit intVal;                                         // Int
  TypeRef intType;                                       // Int: optional type
  bool boolVal = false;                                  // Bool
  std::string str;                                       // String/Alias/Opaque
  std::vector<AttrRef> elems;                            // Array
  std::vector<std::pair<std::string, AttrRef>> entries;  // Dict (source order)
  std::vector<std::string> symbolPath;                   // SymbolRef components
  TypeRef typeVal;                                       // Type

  static AttrRef makeInt(IntLit v, TypeRef type = nullptr);
  static AttrRef makeBool(bool v);
  static AttrRef makeString(std::string s);
  static AttrRef makeArray(std::vector<AttrRef> elems);
  static AttrRef makeDict(std::vector<std::pair<std::string, AttrRef>> es);
  static AttrRef makeSymbolRef(std::vector<std::string> path);
  static AttrRef makeUnit();
  static AttrRef makeType(TypeRef t);
  static AttrRef makeAlias(std::string name);
  static AttrRef makeOpaque(std::string text);
};

bool attrEquals(const AttrRef &a, const AttrRef &b);
std::string attrToString(const AttrRef &a);

using DictAttr = std::vector<std::pair<std::string, AttrRef>>;

bool dictEquals(const DictAttr &a, const DictAttr &b);
const AttrRef *dictGet(const DictAttr &d, std::string_view key);

//===----------------------------------------------------------------------===//
// Operations, regions, blocks
//===----------------------------------------------------------------------===//

struct OpResult {
  std::string id;               // without the % sigil
  std::optional<uint32_t> count; // %x:2 declares a result group
  bool operator==(const OpResult &) const = default;
};

struct ValueUse {
  std::string id;                  // without the % sigil
  std::optional<uint32_t> resultIdx; // %x#1
  bool operator==(const ValueUse &) const = default;
};

struct Operation;

struct Block {
  std::optional<std::string> label; // without the ^ sigil; entry may be bare
  std::vector<std::pair<std::string, TypeRef>> args;
  std::vector<Operation> ops;

  bool operator==(const Block &) const;
};

struct Region {
  /// First block is the entry; per the generic grammar it is unlabeled, but
  /// a labeled entry with block arguments is accepted as well (upstream MLIR
  /// allows it and module bodies need it).
  std::vector<Block> blocks;

  bool operator==(const Region &) const;
};

struct Operation {
  std::vector<OpResult> results;
  std::string name; // unquoted, e.g. "hw.module"
  std::vector<ValueUse> operands;
  std::vector<std::string> successors; // block labels, without ^
  std::optional<DictAttr> properties;  // from <{...}>
  std::vector<Region> regions;
  DictAttr attributes;
  TypeRef funcType; // always Kind::Func after parsing
  std::optional<std::string> locText; // loc(...) payload, non-semantic
  SourceLoc loc; // position of the op in the source, for diagnostics

  /// Structural equality; ignores source positions and loc attributes.
  bool operator==(const Operation &o) const;
};

struct TypeAliasDef {
  std::string name; // without !
  TypeRef type;
  bool operator==(const TypeAliasDef &o) const {
    return name == o.name && typeEquals(type, o.type);
  }
};

struct AttrAliasDef {
  std::string name; // without #
  AttrRef value;
  bool operator==(const AttrAliasDef &o) const {
    return name == o.name && attrEquals(value, o.value);
  }
};

using TopItem = std::variant<Operation, TypeAliasDef, AttrAliasDef>;

struct SourceFile {
  std::vector<TopItem> items;
  bool operator==(const SourceFile &) const;
};

} // namespace hwsim
