//===- bitvec.cpp - Four-state bit vectors --------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/bitvec.hpp"

#include <algorithm>
#include <cassert>

namespace hwsim {

char bit4Char(Bit4 b) {
  switch (b) {
  case Bit4::B0: return '0';
  case Bit4::B1: return '1';
  case Bit4::BX: return 'x';
  case Bit4::BZ: return 'z';
  }
  return '?';
}

BitVec4::BitVec4(uint32_t width, Bit4 fill) : bits_(width, fill) {}

BitVec4 BitVec4::fromUint(uint32_t width, uint64_t value) {
  BitVec4 v(width, Bit4::B0);
  for (uint32_t i = 0; i < width && i < 64; ++i)
    v.bits_[i] = (value >> i) & 1 ? Bit4::B1 : Bit4::B0;
  return v;
}

BitVec4 BitVec4::fromLimbs(uint32_t width, const std::vector<uint64_t> &limbs) {
  BitVec4 v(width, Bit4::B0);
  for (uint32_t i = 0; i < width; ++i) {
    size_t limb = i / 64;
    if (limb >= limbs.size())
      break;
    v.bits_[i] = (limbs[limb] >> (i % 64)) & 1 ? Bit4::B1 : Bit4::B0;
  }
  return v;
}

BitVec4 BitVec4::fromBinaryString(std::string_view s) {
  BitVec4 v(static_cast<uint32_t>(s.size()), Bit4::B0);
  for (size_t i = 0; i < s.size(); ++i) {
    Bit4 b;
    switch (s[i]) {
    case '0': b = Bit4::B0; break;
    case '1': b = Bit4::B1; break;
    case 'x': case 'X': b = Bit4::BX; break;
    case 'z': case 'Z': b = Bit4::BZ; break;
    default:
      throw SimError(Err::MalformedAttribute,
                     "bad binary digit '" + std::string(1, s[i]) + "'");
    }
    v.bits_[s.size() - 1 - i] = b; // string is MSB first
  }
  return v;
}

bool BitVec4::isFullyDefined() const {
  for (Bit4 b : bits_)
    if (b == Bit4::BX || b == Bit4::BZ)
      return false;
  return true;
}

bool BitVec4::isAllZero() const {
  for (Bit4 b : bits_)
    if (b != Bit4::B0)
      return false;
  return true;
}

std::optional<std::vector<uint64_t>> BitVec4::toLimbs() const {
  if (!isFullyDefined())
    return std::nullopt;
  std::vector<uint64_t> limbs((bits_.size() + 63) / 64, 0);
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] == Bit4::B1)
      limbs[i / 64] |= uint64_t(1) << (i % 64);
  return limbs;
}

std::optional<uint64_t> BitVec4::toUint64() const {
  if (width() > 64 || !isFullyDefined())
    return std::nullopt;
  uint64_t v = 0;
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] == Bit4::B1)
      v |= uint64_t(1) << i;
  return v;
}

std::optional<int64_t> BitVec4::toInt64() const {
  auto u = toUint64();
  if (!u)
    return std::nullopt;
  uint32_t w = width();
  if (w == 0)
    return 0;
  if (w < 64 && (*u >> (w - 1)) & 1)
    return static_cast<int64_t>(*u | (~uint64_t(0) << w));
  return static_cast<int64_t>(*u);
}

std::string BitVec4::toBinaryString() const {
  std::string s;
  s.reserve(bits_.size());
  for (size_t i = bits_.size(); i-- > 0;)
    s.push_back(bit4Char(bits_[i]));
  return s;
}

//===----------------------------------------------------------------------===//
// Limb helpers
//===----------------------------------------------------------------------===//

namespace {

using Limbs = std::vector<uint64_t>;

Limbs limbsOf(const BitVec4 &v) {
  auto l = v.toLimbs();
  assert(l && "arithmetic requires defined operands");
  return *l;
}

void addInto(Limbs &a, const Limbs &b) {
  if (a.size() < b.size())
    a.resize(b.size(), 0);
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned __int128 s = carry + a[i] + (i < b.size() ? b[i] : 0);
    a[i] = static_cast<uint64_t>(s);
    carry = s >> 64;
  }
  if (carry)
    a.push_back(static_cast<uint64_t>(carry));
}

// a := a - b, assumes a >= b as unsigned numbers of equal limb count.
void subInto(Limbs &a, const Limbs &b) {
  unsigned __int128 borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned __int128 bi = (i < b.size() ? b[i] : 0);
    unsigned __int128 d = (unsigned __int128)a[i] - bi - borrow;
    a[i] = static_cast<uint64_t>(d);
    borrow = (d >> 64) ? 1 : 0;
  }
}

Limbs mulLimbs(const Limbs &a, const Limbs &b) {
  Limbs r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned __int128 carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      unsigned __int128 cur =
          (unsigned __int128)a[i] * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<uint64_t>(cur);
      carry = cur >> 64;
    }
    size_t k = i + b.size();
    while (carry) {
      unsigned __int128 cur = (unsigned __int128)r[k] + carry;
      r[k] = static_cast<uint64_t>(cur);
      carry = cur >> 64;
      ++k;
    }
  }
  return r;
}

int cmpLimbs(const Limbs &a, const Limbs &b) {
  size_t n = std::max(a.size(), b.size());
  for (size_t i = n; i-- > 0;) {
    uint64_t ai = i < a.size() ? a[i] : 0;
    uint64_t bi = i < b.size() ? b[i] : 0;
    if (ai != bi)
      return ai < bi ? -1 : 1;
  }
  return 0;
}

bool limbBit(const Limbs &a, size_t i) {
  return i / 64 < a.size() && (a[i / 64] >> (i % 64)) & 1;
}

void setLimbBit(Limbs &a, size_t i) {
  if (i / 64 >= a.size())
    a.resize(i / 64 + 1, 0);
  a[i / 64] |= uint64_t(1) << (i % 64);
}

// Restoring shift-subtract long division.
void divmodLimbs(const Limbs &num, const Limbs &den, uint32_t width, Limbs &q,
                 Limbs &r) {
  q.assign((width + 63) / 64, 0);
  r.assign(den.size(), 0);
  for (size_t i = width; i-- > 0;) {
    // r = (r << 1) | num[i]
    uint64_t carry = limbBit(num, i) ? 1 : 0;
    for (size_t j = 0; j < r.size(); ++j) {
      uint64_t next = r[j] >> 63;
      r[j] = (r[j] << 1) | carry;
      carry = next;
    }
    if (carry)
      r.push_back(carry);
    if (cmpLimbs(r, den) >= 0) {
      if (r.size() < den.size())
        r.resize(den.size(), 0);
      subInto(r, den);
      setLimbBit(q, i);
    }
  }
}

bool sign(const BitVec4 &v) { return v.signBit() == Bit4::B1; }

} // namespace

BitVec4 addMod(const BitVec4 &a, const BitVec4 &b) {
  Limbs r = limbsOf(a);
  addInto(r, limbsOf(b));
  return BitVec4::fromLimbs(a.width(), r);
}

BitVec4 negate(const BitVec4 &a) {
  // ~a + 1 mod 2^w
  Limbs l = limbsOf(a);
  for (auto &x : l)
    x = ~x;
  addInto(l, Limbs{1});
  return BitVec4::fromLimbs(a.width(), l);
}

BitVec4 subMod(const BitVec4 &a, const BitVec4 &b) {
  return addMod(a, negate(b));
}

BitVec4 mulMod(const BitVec4 &a, const BitVec4 &b) {
  return BitVec4::fromLimbs(a.width(), mulLimbs(limbsOf(a), limbsOf(b)));
}

BitVec4 divUnsigned(const BitVec4 &a, const BitVec4 &b) {
  Limbs q, r;
  divmodLimbs(limbsOf(a), limbsOf(b), a.width(), q, r);
  return BitVec4::fromLimbs(a.width(), q);
}

BitVec4 modUnsigned(const BitVec4 &a, const BitVec4 &b) {
  Limbs q, r;
  divmodLimbs(limbsOf(a), limbsOf(b), a.width(), q, r);
  return BitVec4::fromLimbs(a.width(), r);
}

BitVec4 divSigned(const BitVec4 &a, const BitVec4 &b) {
  BitVec4 ua = sign(a) ? negate(a) : a;
  BitVec4 ub = sign(b) ? negate(b) : b;
  BitVec4 q = divUnsigned(ua, ub);
  return sign(a) != sign(b) ? negate(q) : q;
}

BitVec4 modSigned(const BitVec4 &a, const BitVec4 &b) {
  BitVec4 ua = sign(a) ? negate(a) : a;
  BitVec4 ub = sign(b) ? negate(b) : b;
  BitVec4 r = modUnsigned(ua, ub);
  return sign(a) ? negate(r) : r; // remainder sign follows dividend
}

static uint64_t shiftAmount(const BitVec4 &b, uint32_t cap) {
  // Any amount >= cap saturates; only the low 64 bits can matter then.
  auto limbs = *b.toLimbs();
  for (size_t i = 1; i < limbs.size(); ++i)
    if (limbs[i])
      return cap;
  uint64_t amt = limbs.empty() ? 0 : limbs[0];
  return amt > cap ? cap : amt;
}

BitVec4 shiftLeft(const BitVec4 &a, const BitVec4 &b) {
  uint32_t w = a.width();
  uint64_t k = shiftAmount(b, w);
  BitVec4 r(w, Bit4::B0);
  for (uint32_t i = static_cast<uint32_t>(k); i < w; ++i)
    r.setBit(i, a.bit(i - static_cast<uint32_t>(k)));
  return r;
}

BitVec4 shiftRightLogical(const BitVec4 &a, const BitVec4 &b) {
  uint32_t w = a.width();
  uint64_t k = shiftAmount(b, w);
  BitVec4 r(w, Bit4::B0);
  for (uint32_t i = 0; i + k < w; ++i)
    r.setBit(i, a.bit(i + static_cast<uint32_t>(k)));
  return r;
}

BitVec4 shiftRightArith(const BitVec4 &a, const BitVec4 &b) {
  uint32_t w = a.width();
  uint64_t k = shiftAmount(b, w);
  BitVec4 r(w, a.signBit());
  for (uint32_t i = 0; i + k < w; ++i)
    r.setBit(i, a.bit(i + static_cast<uint32_t>(k)));
  return r;
}

int compareUnsigned(const BitVec4 &a, const BitVec4 &b) {
  return cmpLimbs(limbsOf(a), limbsOf(b));
}

int compareSigned(const BitVec4 &a, const BitVec4 &b) {
  bool sa = sign(a), sb = sign(b);
  if (sa != sb)
    return sa ? -1 : 1;
  return compareUnsigned(a, b);
}

static BitVec4 bitwise(const BitVec4 &a, const BitVec4 &b,
                       Bit4 (*f)(Bit4, Bit4)) {
  BitVec4 r(a.width(), Bit4::B0);
  for (uint32_t i = 0; i < a.width(); ++i)
    r.setBit(i, f(a.bit(i), b.bit(i)));
  return r;
}

BitVec4 bitAnd(const BitVec4 &a, const BitVec4 &b) {
  return bitwise(a, b, [](Bit4 x, Bit4 y) {
    return (x == Bit4::B1 && y == Bit4::B1) ? Bit4::B1 : Bit4::B0;
  });
}

BitVec4 bitOr(const BitVec4 &a, const BitVec4 &b) {
  return bitwise(a, b, [](Bit4 x, Bit4 y) {
    return (x == Bit4::B1 || y == Bit4::B1) ? Bit4::B1 : Bit4::B0;
  });
}

BitVec4 bitXor(const BitVec4 &a, const BitVec4 &b) {
  return bitwise(a, b, [](Bit4 x, Bit4 y) {
    return (x == Bit4::B1) != (y == Bit4::B1) ? Bit4::B1 : Bit4::B0;
  });
}

BitVec4 slice(const BitVec4 &v, uint32_t low, uint32_t len) {
  BitVec4 r(len, Bit4::B0);
  for (uint32_t i = 0; i < len; ++i)
    r.setBit(i, v.bit(low + i));
  return r;
}

BitVec4 concat2(const BitVec4 &hi, const BitVec4 &lo) {
  BitVec4 r(hi.width() + lo.width(), Bit4::B0);
  for (uint32_t i = 0; i < lo.width(); ++i)
    r.setBit(i, lo.bit(i));
  for (uint32_t i = 0; i < hi.width(); ++i)
    r.setBit(lo.width() + i, hi.bit(i));
  return r;
}

} // namespace hwsim
