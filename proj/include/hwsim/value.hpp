//===- value.hpp - Runtime values ------------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hwsim/ast.hpp"
#include "hwsim/bitvec.hpp"

namespace hwsim {

/// Sentinel cell index for references produced by an X-valued index: reads
/// yield all-X and writes are dropped with a diagnostic.
constexpr uint32_t kPoisonCell = 0xFFFFFFFFu;

/// Reference to a persistent storage cell created by sv.reg/sv.logic/sv.wire,
/// optionally drilled into an array element.
struct StorageRef {
  std::string instanceKey;    // dotted instance path
  uint32_t cell = 0;          // index into the instance's cell table
  std::vector<uint32_t> path; // element indices for nested access

  bool operator==(const StorageRef &) const = default;
  std::string slotKey() const; // stable key, used by the force map
};

/// Handle to a seq.firmem memory, identified by the declaring op.
struct MemRef {
  std::string instanceKey;
  uint32_t slot = 0; // declaring op's seq number

  bool operator==(const MemRef &) const = default;
};

struct TypedValue;
using Aggregate = std::vector<TypedValue>;

/// A value paired with its IR type. Integer-like types carry a BitVec4;
/// hw.array and hw.struct carry ordered fields; inout and firmem types carry
/// references into persistent state.
struct TypedValue {
  TypeRef ty;
  std::variant<BitVec4, Aggregate, StorageRef, MemRef> val;

  TypedValue() = default;
  TypedValue(TypeRef t, BitVec4 b) : ty(std::move(t)), val(std::move(b)) {}
  TypedValue(TypeRef t, Aggregate a) : ty(std::move(t)), val(std::move(a)) {}
  TypedValue(TypeRef t, StorageRef r) : ty(std::move(t)), val(std::move(r)) {}
  TypedValue(TypeRef t, MemRef m) : ty(std::move(t)), val(std::move(m)) {}

  bool isBits() const { return std::holds_alternative<BitVec4>(val); }
  bool isAggregate() const { return std::holds_alternative<Aggregate>(val); }
  bool isRef() const { return std::holds_alternative<StorageRef>(val); }
  bool isMem() const { return std::holds_alternative<MemRef>(val); }

  const BitVec4 &bits() const;
  const Aggregate &fields() const;
  const StorageRef &ref() const;
  const MemRef &mem() const;

  bool operator==(const TypedValue &o) const;
};

/// Flattened bit width of a type. Enum values occupy ceil(log2(#members))
/// bits (at least 1); unions occupy their widest member. Throws on types
/// without a bit representation (inout, firmem, module).
uint32_t flatWidth(const TypeRef &t);

/// The all-X default of a type (recursively for aggregates).
TypedValue allXValue(const TypeRef &t);

/// Shape check of a value against a type (integer widths, aggregate arity).
bool valueMatchesType(const TypedValue &v, const TypeRef &t);

/// Flatten a value to a single bit string. Struct field 0 is most
/// significant; array element N-1 is most significant.
BitVec4 flattenValue(const TypedValue &v);

/// Rebuild a value of type `t` from a flat bit string of matching width.
TypedValue unflattenValue(const TypeRef &t, const BitVec4 &flat);

/// Integer value rendering for logs: defined vectors in decimal, otherwise
/// the binary form with x/z digits.
std::string renderValue(const TypedValue &v);

} // namespace hwsim
