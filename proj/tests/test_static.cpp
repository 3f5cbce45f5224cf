// Preprocessing: alias assignment, normalization, symbol table, rta/raa/rop.

#include <doctest.h>

#include "hwsim/parser.hpp"
#include "hwsim/printer.hpp"
#include "hwsim/static_sem.hpp"

using namespace hwsim;

namespace {

const char *kCounter =
    "hw.module @Counter(in %clk : !seq.clock, in %rst : i1, out out : i8) {\n"
    "  %c0 = hw.constant 0 : i8\n"
    "  %c1 = hw.constant 1 : i8\n"
    "  %sum = comb.add %count, %c1 : i8\n"
    "  %next = comb.mux %rst, %c0, %sum : i8\n"
    "  %count = seq.firreg %next clock %clk preset 0 : i8\n"
    "  hw.output %count : i8\n"
    "}\n";

MlirState pre(const std::string &text) {
  return preprocess(parseSource(text));
}

} // namespace

TEST_CASE("counter preprocesses to a one-entry symbol table") {
  MlirState s = pre(kCounter);
  CHECK(s.phase == Phase::Simulation);
  CHECK(s.types.empty());
  CHECK(s.attrs.empty());
  REQUIRE(s.table.size() == 1);
  const CanonOp &mod = s.rop("Counter");
  CHECK(mod.name == "hw.module");
  CHECK(mod.regions.size() == 1);
  CHECK(mod.regions[0].blocks[0].ops.size() == 6);
  CHECK(s.pendingCommands.empty());
}

TEST_CASE("alias maps populate and resolve") {
  MlirState s = pre("!word = i32\n");
  CHECK(s.table.empty());
  CHECK(typeEquals(s.rta("word"), TypeExpr::makeInt(32)));
  CHECK_THROWS_AS(s.rta("missing"), SimError);
  try {
    s.rta("missing");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnknownAlias);
  }

  MlirState a = pre("#zero = 0 : i8\n");
  CHECK(a.raa("zero")->kind == AttrExpr::Kind::Int);
  CHECK_THROWS_AS(a.raa("nope"), SimError);
}

TEST_CASE("chained aliases resolve transitively") {
  MlirState s = pre("!a = i8\n!b = !a\n");
  CHECK(typeEquals(s.rta("b"), TypeExpr::makeInt(8)));
  // No alias-to-alias chains remain.
  CHECK(s.rta("b")->kind == TypeExpr::Kind::Int);
}

TEST_CASE("alias substitution matches inlining structurally") {
  MlirState withAlias = pre(
      "!a = i8\n"
      "%x = \"hw.constant\"() {sym_name = \"K\", value = 1 : !a} : () -> !a\n");
  MlirState inlined = pre(
      "%x = \"hw.constant\"() {sym_name = \"K\", value = 1 : i8} : () -> i8\n");
  CHECK(canonOpEquals(withAlias.rop("K"), inlined.rop("K")));
}

TEST_CASE("duplicate and cyclic aliases are rejected") {
  try {
    pre("!a = i8\n!a = i16\n");
    FAIL("expected DuplicateAlias");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::DuplicateAlias);
  }
  try {
    pre("#z = 0 : i8\n#z = 1 : i8\n");
    FAIL("expected DuplicateAlias");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::DuplicateAlias);
  }
  try {
    pre("!a = !b\n!b = !a\n");
    FAIL("expected AliasCycle");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::AliasCycle);
  }
  try {
    pre("\"t.op\"() {v = 1 : !nothere} : () -> ()\n");
    FAIL("expected UnresolvedAlias");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnresolvedAlias);
  }
}

TEST_CASE("duplicate symbols are rejected") {
  const char *two =
      "\"hw.module\"() ({\n"
      "  \"hw.output\"() : () -> ()\n"
      "}) {sym_name = \"M\", module_type = !hw.modty<>} : () -> ()\n"
      "\"hw.module\"() ({\n"
      "  \"hw.output\"() : () -> ()\n"
      "}) {sym_name = \"M\", module_type = !hw.modty<>} : () -> ()\n";
  try {
    pre(two);
    FAIL("expected DuplicateSymbol");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::DuplicateSymbol);
  }
}

TEST_CASE("rop returns the matching module regardless of file order") {
  const char *ab =
      "hw.module @A(out out : i1) {\n"
      "  %t = hw.constant 1 : i1\n  hw.output %t : i1\n}\n"
      "hw.module @B(out out : i1) {\n"
      "  %f = hw.constant 0 : i1\n  hw.output %f : i1\n}\n";
  const char *ba =
      "hw.module @B(out out : i1) {\n"
      "  %f = hw.constant 0 : i1\n  hw.output %f : i1\n}\n"
      "hw.module @A(out out : i1) {\n"
      "  %t = hw.constant 1 : i1\n  hw.output %t : i1\n}\n";
  MlirState s1 = pre(ab), s2 = pre(ba);
  CHECK(s1.rop("A").name == "hw.module");
  // The same symbol resolves to a structurally identical op in both orders.
  const AttrRef *v1 = s1.rop("A").regions[0].blocks[0].ops[0].attr("value");
  const AttrRef *v2 = s2.rop("A").regions[0].blocks[0].ops[0].attr("value");
  REQUIRE(v1);
  REQUIRE(v2);
  CHECK(attrEquals(*v1, *v2));
  CHECK_THROWS_AS(s1.rop(""), SimError);
  try {
    s1.rop("");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnknownSymbol);
  }
}

TEST_CASE("properties merge into the attribute dictionary") {
  MlirState s = pre(
      "\"t.op\"() <{p = 1 : i8}> {sym_name = \"T\"} : () -> ()\n");
  const CanonOp &op = s.rop("T");
  CHECK(op.attr("p") != nullptr);
  CHECK(op.attr("sym_name") != nullptr);
  try {
    pre("\"t.op\"() <{k = 1 : i8}> {k = 2 : i8, sym_name = \"T\"} : () -> "
        "()\n");
    FAIL("expected DuplicateKey");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::DuplicateKey);
  }
}

TEST_CASE("unsymboled top-level operations become pending commands") {
  MlirState s = pre("sv.macro.decl @FOO\nsv.macro.def @FOO \"1\"\n");
  CHECK(s.table.empty());
  REQUIRE(s.pendingCommands.size() == 2);
  CHECK(s.pendingCommands[0].name == "sv.macro.decl");
  CHECK(s.pendingCommands[1].name == "sv.macro.def");
}

TEST_CASE("value ids are uniqued across nested scopes") {
  // The inner region reuses %x; normalization must keep the uses apart.
  const char *text =
      "\"outer.op\"() ({\n"
      "  %x = \"hw.constant\"() {value = 1 : i8} : () -> i8\n"
      "  \"mid.op\"(%x) ({\n"
      "    %x = \"hw.constant\"() {value = 2 : i8} : () -> i8\n"
      "    \"use.op\"(%x) : (i8) -> ()\n"
      "  }) : (i8) -> ()\n"
      "}) {sym_name = \"S\"} : () -> ()\n";
  MlirState s = pre(text);
  const CanonOp &outer = s.rop("S");
  const CanonOp &constOuter = outer.regions[0].blocks[0].ops[0];
  const CanonOp &mid = outer.regions[0].blocks[0].ops[1];
  const CanonOp &constInner = mid.regions[0].blocks[0].ops[0];
  const CanonOp &use = mid.regions[0].blocks[0].ops[1];
  CHECK(constOuter.resultIds[0] != constInner.resultIds[0]);
  CHECK(mid.operands[0] == constOuter.resultIds[0]);
  CHECK(use.operands[0] == constInner.resultIds[0]);
}

TEST_CASE("use-before-def within a graph block resolves") {
  MlirState s = pre(kCounter);
  const CanonOp &mod = s.rop("Counter");
  const CanonOp &add = mod.regions[0].blocks[0].ops[2];
  const CanonOp &firreg = mod.regions[0].blocks[0].ops[4];
  CHECK(add.name == "comb.add");
  CHECK(add.operands[0] == firreg.resultIds[0]);
}

TEST_CASE("arity mismatches are rejected at preprocessing") {
  try {
    pre("%r = \"comb.add\"(%a) : (i8, i8) -> i8\n");
    FAIL("expected ArityMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::ArityMismatch);
  }
  try {
    pre("\"comb.add\"(%a, %b) : (i8, i8) -> i8\n"); // no result declared
    FAIL("expected ArityMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::ArityMismatch);
  }
}

TEST_CASE("width cap is enforced") {
  try {
    pre("%r = \"hw.constant\"() {value = 0 : i100000} : () -> i100000\n");
    FAIL("expected WidthCap");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::WidthCap);
  }
  try {
    pre("%r = \"hw.constant\"() {value = 0 : i0} : () -> i0\n");
    FAIL("expected WidthCap");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::WidthCap);
  }
  // 65536 is the inclusive limit.
  MlirState ok = pre("%r = \"sv.constantX\"() : () -> i65536\n");
  CHECK(ok.phase == Phase::Simulation);
}

TEST_CASE("normalization is idempotent") {
  MlirState s = pre(kCounter);
  const CanonOp &mod = s.rop("Counter");
  // Renormalizing the printed generic form yields the same canonical op.
  SourceFile printed = parseSource(printFile(parseSource(kCounter)));
  MlirState s2 = preprocess(printed);
  CHECK(canonOpEquals(mod, s2.rop("Counter")));
}

TEST_CASE("symbols nested in unsymboled operations reach the table") {
  MlirState s = pre(
      "\"test.wrapper\"() ({\n"
      "  \"test.named\"() {sym_name = \"Inner\"} : () -> ()\n"
      "}) : () -> ()\n");
  CHECK(s.table.count("Inner") == 1);
  REQUIRE(s.pendingCommands.size() == 1); // the wrapper itself
  CHECK(s.pendingCommands[0].name == "test.wrapper");
}
