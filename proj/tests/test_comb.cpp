// comb dialect: per-op oracle checks against independent uint64 arithmetic,
// algebraic properties, and the X-pessimism rule.

#include <doctest.h>

#include <random>

#include "testutil.hpp"

using namespace hwsim;
using namespace hwsim::test;

namespace {

struct CombHarness {
  Simulation sim = makeSim(counterText(), "Counter");
  InstanceState inst;

  TypedValue eval(const std::string &name, const std::vector<BitVec4> &ops,
                  uint32_t resultWidth, DictAttr attrs = {}) {
    inst.curr.clear();
    CanonOp op;
    op.name = name;
    op.attrs = std::move(attrs);
    for (size_t i = 0; i < ops.size(); ++i) {
      std::string id = "in" + std::to_string(i);
      sim.writeCurr(inst, id, {TypeExpr::makeInt(ops[i].width()), ops[i]});
      op.operands.push_back(id);
      op.operandTypes.push_back(TypeExpr::makeInt(ops[i].width()));
    }
    op.resultIds = {"r"};
    op.resultTypes = {TypeExpr::makeInt(resultWidth)};
    const OpInfo *info = OpRegistry::global().find(name);
    REQUIRE(info != nullptr);
    EvalCtx ctx{sim, inst, nullptr, false};
    auto out = info->eval(ctx, op);
    REQUIRE(out.size() == 1);
    return out[0];
  }

  uint64_t evalUint(const std::string &name, const std::vector<BitVec4> &ops,
                    uint32_t w, DictAttr attrs = {}) {
    auto r = eval(name, ops, w, std::move(attrs)).bits().toUint64();
    REQUIRE(r.has_value());
    return *r;
  }
};

uint64_t maskOf(uint32_t w) {
  return w >= 64 ? ~uint64_t(0) : (uint64_t(1) << w) - 1;
}

int64_t sext(uint64_t v, uint32_t w) {
  if (w < 64 && (v >> (w - 1)) & 1)
    return static_cast<int64_t>(v | ~maskOf(w));
  return static_cast<int64_t>(v);
}

BitVec4 bv(uint32_t w, uint64_t v) { return BitVec4::fromUint(w, v); }

DictAttr predAttr(int p) {
  DictAttr d;
  d.emplace_back("predicate",
                 AttrExpr::makeInt(IntLit::fromUint(p), TypeExpr::makeInt(64)));
  return d;
}

// Independent oracle for the two-operand arithmetic ops on small widths.
uint64_t oracleBinary(const std::string &name, uint64_t a, uint64_t b,
                      uint32_t w) {
  uint64_t m = maskOf(w);
  int64_t sa = sext(a, w), sb = sext(b, w);
  if (name == "comb.add")
    return (a + b) & m;
  if (name == "comb.sub")
    return (a - b) & m;
  if (name == "comb.mul")
    return (a * b) & m;
  if (name == "comb.and")
    return a & b;
  if (name == "comb.or")
    return a | b;
  if (name == "comb.xor")
    return a ^ b;
  if (name == "comb.divu")
    return b ? (a / b) & m : 0;
  if (name == "comb.modu")
    return b ? (a % b) & m : 0;
  if (name == "comb.divs")
    return b ? static_cast<uint64_t>(sa / sb) & m : 0;
  if (name == "comb.mods")
    return b ? static_cast<uint64_t>(sa % sb) & m : 0;
  if (name == "comb.shl")
    return b >= w ? 0 : (a << b) & m;
  if (name == "comb.shru")
    return b >= w ? 0 : (a >> b) & m;
  if (name == "comb.shrs") {
    if (b >= w)
      return sa < 0 ? m : 0;
    return static_cast<uint64_t>(sa >> b) & m;
  }
  FAIL("unknown op ", name);
  return 0;
}

} // namespace

TEST_CASE("binary and variadic ops match the oracle exhaustively on i4") {
  CombHarness h;
  for (const char *name :
       {"comb.add", "comb.sub", "comb.mul", "comb.and", "comb.or", "comb.xor",
        "comb.divu", "comb.modu", "comb.divs", "comb.mods", "comb.shl",
        "comb.shru", "comb.shrs"}) {
    for (uint64_t a = 0; a < 16; ++a) {
      for (uint64_t b = 0; b < 16; ++b) {
        bool isDiv = std::string(name).find("div") != std::string::npos ||
                     std::string(name).find("mod") != std::string::npos;
        if (isDiv && b == 0) {
          // Division by a defined zero is all-X plus a diagnostic.
          auto r = h.eval(name, {bv(4, a), bv(4, b)}, 4);
          CHECK(!r.bits().isFullyDefined());
          continue;
        }
        CAPTURE(name);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(h.evalUint(name, {bv(4, a), bv(4, b)}, 4) ==
              oracleBinary(name, a, b, 4));
      }
    }
  }
}

TEST_CASE("variadic ops at three operands match the oracle exhaustively") {
  CombHarness h;
  for (const char *name : {"comb.add", "comb.mul", "comb.and", "comb.or",
                           "comb.xor"}) {
    for (uint64_t a = 0; a < 16; ++a)
      for (uint64_t b = 0; b < 16; ++b)
        for (uint64_t c = 0; c < 16; ++c) {
          uint64_t expect =
              oracleBinary(name, oracleBinary(name, a, b, 4), c, 4);
          CHECK(h.evalUint(name, {bv(4, a), bv(4, b), bv(4, c)}, 4) == expect);
        }
  }
}

TEST_CASE("named cases: counter add, wraparound, single-operand fold") {
  CombHarness h;
  CHECK(h.evalUint("comb.add", {bv(8, 5), bv(8, 1)}, 8) == 6);
  CHECK(h.evalUint("comb.add", {bv(8, 255), bv(8, 1)}, 8) == 0);
  CHECK(h.evalUint("comb.add", {bv(8, 77)}, 8) == 77); // fold identity
  CHECK(h.evalUint("comb.sub", {bv(8, 0), bv(8, 1)}, 8) == 255);
  CHECK(h.evalUint("comb.shl", {bv(8, 0xA5), bv(8, 0)}, 8) == 0xA5);
  // divs(i4: -7 / 2) == -3 (truncation toward zero)
  CHECK(h.evalUint("comb.divs", {bv(4, 0b1001), bv(4, 0b0010)}, 4) == 0b1101);
}

TEST_CASE("icmp: all ten predicates exhaustively on i4") {
  CombHarness h;
  for (int p = 0; p < 10; ++p) {
    for (uint64_t a = 0; a < 16; ++a) {
      for (uint64_t b = 0; b < 16; ++b) {
        int64_t sa = sext(a, 4), sb = sext(b, 4);
        bool expect = false;
        switch (p) {
        case 0: expect = a == b; break;
        case 1: expect = a != b; break;
        case 2: expect = sa < sb; break;
        case 3: expect = sa <= sb; break;
        case 4: expect = sa > sb; break;
        case 5: expect = sa >= sb; break;
        case 6: expect = a < b; break;
        case 7: expect = a <= b; break;
        case 8: expect = a > b; break;
        case 9: expect = a >= b; break;
        }
        CHECK(h.evalUint("comb.icmp", {bv(4, a), bv(4, b)}, 1, predAttr(p)) ==
              (expect ? 1 : 0));
      }
    }
  }
  // Named examples: slt sees -8 < 7, ult sees 8 > 7.
  CHECK(h.evalUint("comb.icmp", {bv(4, 0b1000), bv(4, 0b0111)}, 1,
                   predAttr(2)) == 1);
  CHECK(h.evalUint("comb.icmp", {bv(4, 0b1000), bv(4, 0b0111)}, 1,
                   predAttr(6)) == 0);
  CHECK(h.evalUint("comb.icmp", {bv(1, 1), bv(1, 1)}, 1, predAttr(0)) == 1);
}

TEST_CASE("icmp trichotomy and ult/uge complement") {
  CombHarness h;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    uint64_t a = rng() & 0xFFFF, b = rng() & 0xFFFF;
    int ones = 0;
    ones += h.evalUint("comb.icmp", {bv(16, a), bv(16, b)}, 1, predAttr(2));
    ones += h.evalUint("comb.icmp", {bv(16, a), bv(16, b)}, 1, predAttr(0));
    ones += h.evalUint("comb.icmp", {bv(16, a), bv(16, b)}, 1, predAttr(4));
    CHECK(ones == 1); // exactly one of slt/eq/sgt
    CHECK(h.evalUint("comb.icmp", {bv(16, a), bv(16, b)}, 1, predAttr(6)) ==
          1 - h.evalUint("comb.icmp", {bv(16, a), bv(16, b)}, 1, predAttr(9)));
  }
}

TEST_CASE("extract slices bits and checks bounds") {
  CombHarness h;
  DictAttr low4;
  low4.emplace_back("lowBit", AttrExpr::makeInt(IntLit::fromUint(4),
                                                TypeExpr::makeInt(32)));
  CHECK(h.evalUint("comb.extract", {bv(8, 0b10110010)}, 4, low4) == 0b1011);
  DictAttr low0;
  low0.emplace_back("lowBit", AttrExpr::makeInt(IntLit::fromUint(0),
                                                TypeExpr::makeInt(32)));
  CHECK(h.evalUint("comb.extract", {bv(8, 0xA7)}, 8, low0) == 0xA7);
  // Per-bit X propagation: extract the X bit of "x1".
  DictAttr low1;
  low1.emplace_back("lowBit", AttrExpr::makeInt(IntLit::fromUint(1),
                                                TypeExpr::makeInt(32)));
  auto r = h.eval("comb.extract", {BitVec4::fromBinaryString("x1")}, 1, low1);
  CHECK(r.bits().toBinaryString() == "x");
  try {
    DictAttr low6;
    low6.emplace_back("lowBit", AttrExpr::makeInt(IntLit::fromUint(6),
                                                  TypeExpr::makeInt(32)));
    h.eval("comb.extract", {bv(8, 0)}, 4, low6); // [6,10) out of range
    FAIL("expected OutOfRange");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::OutOfRange);
  }
}

TEST_CASE("concat is MSB-first and propagates X positionally") {
  CombHarness h;
  CHECK(h.evalUint("comb.concat", {bv(2, 0b10), bv(1, 0b1)}, 3) == 0b101);
  auto r = h.eval("comb.concat",
                  {BitVec4::fromBinaryString("1x"), bv(2, 0b01)}, 4);
  CHECK(r.bits().toBinaryString() == "1x01");
}

TEST_CASE("concat/extract inverse property") {
  CombHarness h;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    uint64_t v = rng() & 0xFF;
    for (uint32_t k = 1; k < 8; ++k) {
      DictAttr lowK;
      lowK.emplace_back("lowBit", AttrExpr::makeInt(IntLit::fromUint(k),
                                                    TypeExpr::makeInt(32)));
      DictAttr low0;
      low0.emplace_back("lowBit", AttrExpr::makeInt(IntLit::fromUint(0),
                                                    TypeExpr::makeInt(32)));
      BitVec4 hi = h.eval("comb.extract", {bv(8, v)}, 8 - k, lowK).bits();
      BitVec4 lo = h.eval("comb.extract", {bv(8, v)}, k, low0).bits();
      CHECK(h.evalUint("comb.concat", {hi, lo}, 8) == v);
    }
  }
}

TEST_CASE("replicate, parity, mux, truth_table") {
  CombHarness h;
  CHECK(h.evalUint("comb.replicate", {bv(2, 0b10)}, 8) == 0b10101010);
  CHECK(h.evalUint("comb.parity", {bv(4, 0b1011)}, 1) == 1);
  CHECK(h.evalUint("comb.parity", {bv(4, 0b1001)}, 1) == 0);
  CHECK(h.evalUint("comb.mux", {bv(1, 1), bv(8, 3), bv(8, 9)}, 8) == 3);
  CHECK(h.evalUint("comb.mux", {bv(1, 0), bv(8, 3), bv(8, 9)}, 8) == 9);

  DictAttr xorTable;
  xorTable.emplace_back(
      "lookupTable",
      AttrExpr::makeArray({AttrExpr::makeBool(false), AttrExpr::makeBool(true),
                           AttrExpr::makeBool(true),
                           AttrExpr::makeBool(false)}));
  // First input is the most significant index bit: (1,0) -> row 2.
  CHECK(h.evalUint("comb.truth_table", {bv(1, 1), bv(1, 0)}, 1, xorTable) ==
        1);
  for (uint64_t a = 0; a < 2; ++a)
    for (uint64_t b = 0; b < 2; ++b)
      CHECK(h.evalUint("comb.truth_table", {bv(1, a), bv(1, b)}, 1, xorTable) ==
            (a ^ b));
}

TEST_CASE("algebraic properties on random i16 inputs") {
  CombHarness h;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    uint64_t a = rng() & 0xFFFF, b = rng() & 0xFFFF, c = rng() & 0xFFFF;
    for (const char *name : {"comb.add", "comb.mul", "comb.and", "comb.or",
                             "comb.xor"}) {
      // commutativity
      CHECK(h.evalUint(name, {bv(16, a), bv(16, b)}, 16) ==
            h.evalUint(name, {bv(16, b), bv(16, a)}, 16));
      // associativity as folds
      CHECK(h.evalUint(name, {bv(16, a), bv(16, b), bv(16, c)}, 16) ==
            h.evalUint(name,
                       {bv(16, h.evalUint(name, {bv(16, a), bv(16, b)}, 16)),
                        bv(16, c)},
                       16));
    }
    CHECK(h.evalUint("comb.xor", {bv(16, a), bv(16, a)}, 16) == 0);
    CHECK(h.evalUint("comb.and", {bv(16, a), bv(16, a)}, 16) == a);
    CHECK(h.evalUint("comb.or", {bv(16, a), bv(16, 0)}, 16) == a);
  }
}

TEST_CASE("X pessimism: one X bit anywhere forces an all-X result") {
  CombHarness h;
  std::mt19937_64 rng(23);
  struct Case {
    const char *name;
    int arity;
    DictAttr attrs;
  };
  std::vector<Case> cases = {
      {"comb.add", 2, {}},   {"comb.sub", 2, {}},  {"comb.mul", 2, {}},
      {"comb.and", 2, {}},   {"comb.or", 2, {}},   {"comb.xor", 2, {}},
      {"comb.divu", 2, {}},  {"comb.divs", 2, {}}, {"comb.modu", 2, {}},
      {"comb.mods", 2, {}},  {"comb.shl", 2, {}},  {"comb.shru", 2, {}},
      {"comb.shrs", 2, {}},  {"comb.replicate", 1, {}},
      {"comb.icmp", 2, predAttr(2)},
      {"comb.parity", 1, {}},
  };
  for (const Case &c : cases) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<BitVec4> ops;
      for (int i = 0; i < c.arity; ++i)
        ops.push_back(bv(8, rng() & 0xFF));
      // Poison one random bit of one random operand.
      size_t victim = rng() % ops.size();
      ops[victim].setBit(rng() % 8, rng() % 2 ? Bit4::BX : Bit4::BZ);
      uint32_t rw = std::string(c.name) == "comb.icmp" ||
                            std::string(c.name) == "comb.parity"
                        ? 1
                        : (std::string(c.name) == "comb.replicate" ? 16 : 8);
      auto r = h.eval(c.name, ops, rw, c.attrs);
      CAPTURE(c.name);
      for (uint32_t i = 0; i < r.bits().width(); ++i)
        CHECK(r.bits().bit(i) == Bit4::BX);
    }
  }
  // mux with an X selector is all-X even if both branches agree.
  auto r = h.eval("comb.mux", {BitVec4::allX(1), bv(8, 5), bv(8, 5)}, 8);
  CHECK(!r.bits().isFullyDefined());
}

TEST_CASE("empty operand lists are rejected") {
  CombHarness h;
  try {
    h.eval("comb.add", {}, 8);
    FAIL("expected EmptyOperandList");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::EmptyOperandList);
  }
  try {
    h.eval("comb.add", {bv(4, 1), bv(8, 1)}, 8);
    FAIL("expected WidthMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::WidthMismatch);
  }
}
