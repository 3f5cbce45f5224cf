//===- bitvec.hpp - Four-state bit vectors --------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// BitVec4 is the universal signal value of the engine: a width-typed vector
// over {0, 1, X, Z}. Arithmetic helpers in this header assume fully defined
// operands; X/Z policy (pessimistic propagation) lives with the callers in
// the dialect evaluators.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hwsim/diag.hpp"

namespace hwsim {

enum class Bit4 : uint8_t { B0 = 0, B1 = 1, BX = 2, BZ = 3 };

char bit4Char(Bit4 b); // '0' '1' 'x' 'z'

/// Engine-wide width cap; exceeding it is a preprocessing error.
constexpr uint32_t kMaxWidth = 65536;

class BitVec4 {
public:
  BitVec4() = default;
  explicit BitVec4(uint32_t width, Bit4 fill = Bit4::BX);

  static BitVec4 allX(uint32_t width) { return BitVec4(width, Bit4::BX); }
  static BitVec4 allZ(uint32_t width) { return BitVec4(width, Bit4::BZ); }
  static BitVec4 zeros(uint32_t width) { return BitVec4(width, Bit4::B0); }
  static BitVec4 fromUint(uint32_t width, uint64_t value);
  /// Little-endian 64-bit limbs, truncated/zero-extended to width.
  static BitVec4 fromLimbs(uint32_t width, const std::vector<uint64_t> &limbs);
  /// From a string of {0,1,x,z,X,Z}, MSB first ("1x0z" -> width 4).
  static BitVec4 fromBinaryString(std::string_view s);

  uint32_t width() const { return static_cast<uint32_t>(bits_.size()); }
  Bit4 bit(uint32_t i) const { return bits_[i]; } // index 0 = LSB
  void setBit(uint32_t i, Bit4 b) { bits_[i] = b; }

  bool isFullyDefined() const; // no X and no Z bits
  bool hasXorZ() const { return !isFullyDefined(); }
  bool isAllZero() const;

  /// Unsigned value as 64-bit limbs (LSB limb first); nullopt if any X/Z.
  std::optional<std::vector<uint64_t>> toLimbs() const;
  /// Convenience for width <= 64.
  std::optional<uint64_t> toUint64() const;
  /// Two's-complement signed value, width <= 64.
  std::optional<int64_t> toInt64() const;

  Bit4 signBit() const { return bits_.empty() ? Bit4::B0 : bits_.back(); }

  /// MSB-first binary rendering with x/z, e.g. "1x0z".
  std::string toBinaryString() const;
  /// VCD-style value: scalar -> single char, vector -> "b..." form is
  /// assembled by the writer; this returns just the MSB-first digits with
  /// leading zeros preserved.
  std::string vcdDigits() const { return toBinaryString(); }

  bool operator==(const BitVec4 &) const = default;

private:
  std::vector<Bit4> bits_; // index 0 = least significant
};

//===----------------------------------------------------------------------===//
// Two-state arithmetic (defined operands only)
//===----------------------------------------------------------------------===//
//
// All functions below require fully defined inputs of equal width (unless
// stated otherwise) and reduce results mod 2^width. Callers are expected to
// have applied the X/Z pessimism rule already.

BitVec4 addMod(const BitVec4 &a, const BitVec4 &b);
BitVec4 subMod(const BitVec4 &a, const BitVec4 &b);
BitVec4 mulMod(const BitVec4 &a, const BitVec4 &b);
/// Unsigned division / remainder. Divisor must be nonzero.
BitVec4 divUnsigned(const BitVec4 &a, const BitVec4 &b);
BitVec4 modUnsigned(const BitVec4 &a, const BitVec4 &b);
/// Two's-complement division truncating toward zero; remainder sign follows
/// the dividend. Divisor must be nonzero.
BitVec4 divSigned(const BitVec4 &a, const BitVec4 &b);
BitVec4 modSigned(const BitVec4 &a, const BitVec4 &b);
/// Two's-complement negation mod 2^w.
BitVec4 negate(const BitVec4 &a);

/// Shift amount is read from `b` (unsigned); amounts >= width yield 0 for
/// shl/shru and all-sign-bits for shrs.
BitVec4 shiftLeft(const BitVec4 &a, const BitVec4 &b);
BitVec4 shiftRightLogical(const BitVec4 &a, const BitVec4 &b);
BitVec4 shiftRightArith(const BitVec4 &a, const BitVec4 &b);

/// -1 / 0 / +1 comparison of defined vectors.
int compareUnsigned(const BitVec4 &a, const BitVec4 &b);
int compareSigned(const BitVec4 &a, const BitVec4 &b);

/// Bitwise folds over defined vectors of equal width.
BitVec4 bitAnd(const BitVec4 &a, const BitVec4 &b);
BitVec4 bitOr(const BitVec4 &a, const BitVec4 &b);
BitVec4 bitXor(const BitVec4 &a, const BitVec4 &b);

//===----------------------------------------------------------------------===//
// Four-state structure (X/Z preserved per bit)
//===----------------------------------------------------------------------===//

/// Bits [low, low+len) of v. Caller checks range.
BitVec4 slice(const BitVec4 &v, uint32_t low, uint32_t len);
/// `hi` occupies the most significant bits of the result.
BitVec4 concat2(const BitVec4 &hi, const BitVec4 &lo);

} // namespace hwsim
