// Grammar, round-trip, and error-position tests for the MLIR text parser.

#include <doctest.h>

#include "hwsim/parser.hpp"
#include "hwsim/printer.hpp"

using namespace hwsim;

namespace {

const Operation &firstOp(const SourceFile &f) {
  REQUIRE(!f.items.empty());
  const Operation *op = std::get_if<Operation>(&f.items[0]);
  REQUIRE(op != nullptr);
  return *op;
}

SourceFile roundTrip(const SourceFile &f) { return parseSource(printFile(f)); }

} // namespace

TEST_CASE("empty input parses to an empty file") {
  SourceFile f = parseSource("");
  CHECK(f.items.empty());
  CHECK(printFile(f).empty());
  SourceFile g = parseSource("// just a comment\n");
  CHECK(g.items.empty());
}

TEST_CASE("generic operation") {
  SourceFile f =
      parseSource("%0 = \"comb.add\"(%a, %b) : (i8, i8) -> i8");
  const Operation &op = firstOp(f);
  CHECK(op.name == "comb.add");
  CHECK(op.operands.size() == 2);
  CHECK(op.operands[0].id == "a");
  CHECK(op.results.size() == 1);
  CHECK(op.results[0].id == "0");
  REQUIRE(op.funcType != nullptr);
  CHECK(op.funcType->funcIns.size() == 2);
  CHECK(op.funcType->funcOuts.size() == 1);
  CHECK(op.funcType->funcOuts[0]->intWidth == 8);
  CHECK(roundTrip(f) == f);
}

TEST_CASE("result groups and result indices") {
  SourceFile f = parseSource(
      "%x:2 = \"hw.struct_explode\"(%s) : (!hw.struct<a: i4, b: i4>) -> "
      "(i4, i4)\n"
      "%y = \"comb.add\"(%x#0, %x#1) : (i4, i4) -> i4\n");
  const Operation &explode = firstOp(f);
  CHECK(explode.results[0].count == 2);
  const Operation &add = std::get<Operation>(f.items[1]);
  CHECK(add.operands[0].resultIdx == 0);
  CHECK(add.operands[1].resultIdx == 1);
  CHECK(roundTrip(f) == f);
}

TEST_CASE("properties, attributes, successors, regions") {
  std::string text =
      "\"test.op\"()[^bb1, ^bb2] <{prop = 1 : i8}> ({\n"
      "  \"inner.first\"() : () -> ()\n"
      "^bb1:\n"
      "  \"inner.second\"() : () -> ()\n"
      "^bb2(%arg: i1):\n"
      "  \"inner.third\"(%arg) : (i1) -> ()\n"
      "}, {\n"
      "  \"inner.other\"() : () -> ()\n"
      "}) {attr = \"text\", flag} : () -> ()";
  SourceFile f = parseSource(text);
  const Operation &op = firstOp(f);
  CHECK(op.successors == std::vector<std::string>{"bb1", "bb2"});
  REQUIRE(op.properties.has_value());
  CHECK(op.properties->size() == 1);
  CHECK(op.regions.size() == 2);
  CHECK(op.regions[0].blocks.size() == 3);
  CHECK(op.regions[0].blocks[2].args.size() == 1);
  CHECK(op.attributes.size() == 2);
  CHECK(op.attributes[1].second->kind == AttrExpr::Kind::Unit);
  CHECK(roundTrip(f) == f);
}

TEST_CASE("alias definitions") {
  SourceFile f = parseSource("!word = i32\n#zero = 0 : i8\n");
  REQUIRE(f.items.size() == 2);
  const auto &ta = std::get<TypeAliasDef>(f.items[0]);
  CHECK(ta.name == "word");
  CHECK(ta.type->intWidth == 32);
  const auto &aa = std::get<AttrAliasDef>(f.items[1]);
  CHECK(aa.name == "zero");
  CHECK(aa.value->kind == AttrExpr::Kind::Int);
  CHECK(roundTrip(f) == f);
}

TEST_CASE("types") {
  CHECK(parseTypeString("i1")->intWidth == 1);
  CHECK(parseTypeString("!seq.clock")->kind == TypeExpr::Kind::Clock);
  TypeRef arr = parseTypeString("!hw.array<4xi8>");
  CHECK(arr->arraySize == 4);
  CHECK(arr->elem->intWidth == 8);
  TypeRef arrSpace = parseTypeString("!hw.array<4 x i8>");
  CHECK(typeEquals(arr, arrSpace));
  TypeRef nested = parseTypeString("!hw.array<2x!hw.array<3xi4>>");
  CHECK(nested->elem->arraySize == 3);
  TypeRef st = parseTypeString("!hw.struct<a: i8, b: !seq.clock>");
  CHECK(st->fields.size() == 2);
  TypeRef un = parseTypeString("!hw.union<w: i16, b: i8>");
  CHECK(un->kind == TypeExpr::Kind::Union);
  TypeRef en = parseTypeString("!hw.enum<A, B, C>");
  CHECK(en->enumerators.size() == 3);
  TypeRef io = parseTypeString("!hw.inout<i8>");
  CHECK(io->elem->intWidth == 8);
  TypeRef mem = parseTypeString("!seq.firmem<16 x 8>");
  CHECK(mem->memDepth == 16);
  CHECK(mem->memWidth == 8);
  TypeRef mod = parseTypeString(
      "!hw.modty<input clk : !seq.clock, input rst : i1, output out : i8>");
  CHECK(mod->fields.size() == 2);
  CHECK(mod->outputs.size() == 1);
  TypeRef alias = parseTypeString("!word");
  CHECK(alias->kind == TypeExpr::Kind::Alias);
  // Round-trip through the printer.
  for (const char *t :
       {"i1", "!seq.clock", "!hw.array<4xi8>", "!hw.struct<a: i8>",
        "!hw.inout<i8>", "!seq.firmem<16 x 8>", "!hw.enum<A, B>"}) {
    TypeRef ty = parseTypeString(t);
    CHECK(typeEquals(parseTypeString(typeToString(ty)), ty));
  }
}

TEST_CASE("attributes") {
  AttrRef i = parseAttrString("-42 : i8");
  CHECK(i->kind == AttrExpr::Kind::Int);
  CHECK(i->intVal.negative);
  CHECK(i->intVal.toDecimalString() == "-42");
  AttrRef hex = parseAttrString("0xFF : i8");
  CHECK(hex->intVal.toDecimalString() == "255");
  AttrRef s = parseAttrString("\"hi\\n\"");
  CHECK(s->str == "hi\n");
  AttrRef arr = parseAttrString("[1 : i4, 2 : i4]");
  CHECK(arr->elems.size() == 2);
  AttrRef dict = parseAttrString("{a = 1 : i4, b}");
  CHECK(dict->entries.size() == 2);
  AttrRef sym = parseAttrString("@Top::@inner");
  CHECK(sym->symbolPath == std::vector<std::string>{"Top", "inner"});
  AttrRef b = parseAttrString("true");
  CHECK(b->boolVal);
  AttrRef ty = parseAttrString("!hw.modty<input a : i1, output o : i1>");
  CHECK(ty->kind == AttrExpr::Kind::Type);
  for (const char *a : {"-42 : i8", "[true, false]", "{k = \"v\"}", "@Sym",
                        "@A::@b", "5 : i4", "\"s\""}) {
    AttrRef parsed = parseAttrString(a);
    CHECK(attrEquals(parseAttrString(attrToString(parsed)), parsed));
  }
}

TEST_CASE("custom form: hw.module lowers to the generic shape") {
  std::string text =
      "hw.module @Counter(in %clk : !seq.clock, in %rst : i1, out out : i8) "
      "{\n"
      "  %c0 = hw.constant 0 : i8\n"
      "  %c1 = hw.constant 1 : i8\n"
      "  %sum = comb.add %count, %c1 : i8\n"
      "  %next = comb.mux %rst, %c0, %sum : i8\n"
      "  %count = seq.firreg %next clock %clk preset 0 : i8\n"
      "  hw.output %count : i8\n"
      "}";
  SourceFile f = parseSource(text);
  const Operation &op = firstOp(f);
  CHECK(op.name == "hw.module");
  REQUIRE(op.regions.size() == 1);
  CHECK(op.regions[0].blocks.size() == 1);
  CHECK(op.regions[0].blocks[0].args.size() == 2);
  CHECK(op.regions[0].blocks[0].ops.size() == 6);
  const AttrRef *sym = dictGet(op.attributes, "sym_name");
  REQUIRE(sym != nullptr);
  CHECK((*sym)->str == "Counter");
  const AttrRef *mt = dictGet(op.attributes, "module_type");
  REQUIRE(mt != nullptr);
  CHECK((*mt)->typeVal->fields.size() == 2);
  CHECK((*mt)->typeVal->outputs.size() == 1);
  CHECK(roundTrip(f) == f);
}

TEST_CASE("custom comb forms") {
  SourceFile f = parseSource(
      "%r = comb.icmp slt %a, %b : i4\n"
      "%e = comb.extract %v from 4 : (i8) -> i4\n"
      "%c = comb.concat %a, %b : i4, i4\n"
      "%m = comb.mux %s, %a, %b : i4\n"
      "%t = comb.truth_table %x, %y -> [false, true, true, false]\n"
      "%p = comb.parity %v : i8\n"
      "%q = comb.replicate %s : (i1) -> i4\n");
  const Operation &icmp = firstOp(f);
  const AttrRef *pred = dictGet(icmp.attributes, "predicate");
  REQUIRE(pred != nullptr);
  CHECK((*pred)->intVal.toDecimalString() == "2");
  CHECK(roundTrip(f) == f);
}

TEST_CASE("custom seq forms") {
  SourceFile f = parseSource(
      "%r = seq.firreg %next clock %clk reset sync %rst, %rv sym @r0 : i8\n"
      "%m = seq.firmem 0, 1 : <16 x 8>\n"
      "%d = seq.firmem.read_port %m[%addr], clock %clk enable %en : <16 x "
      "8>\n"
      "seq.firmem.write_port %m[%addr] = %data, clock %clk : <16 x 8>\n"
      "%rw = seq.firmem.read_write_port %m[%addr] = %w if %mode, clock %clk "
      ": <16 x 8>\n");
  const Operation &firreg = firstOp(f);
  CHECK(firreg.operands.size() == 4);
  const AttrRef *reset = dictGet(firreg.attributes, "reset");
  REQUIRE(reset != nullptr);
  CHECK((*reset)->str == "sync");
  CHECK(roundTrip(f) == f);
}

TEST_CASE("custom sv forms") {
  std::string text =
      "hw.module @M(in %clk : i1) {\n"
      "  %r = sv.reg sym @st : !hw.inout<i8>\n"
      "  %v = sv.read_inout %r : !hw.inout<i8>\n"
      "  sv.alwaysff(posedge %clk) {\n"
      "    %c = hw.constant 7 : i8\n"
      "    sv.passign %r, %c : i8\n"
      "  }\n"
      "  sv.initial {\n"
      "    sv.if %clk {\n"
      "      sv.info \"hello\"\n"
      "    } else {\n"
      "      sv.warning\n"
      "    }\n"
      "    sv.for %i = %lo to %hi step %one : i4 {\n"
      "      sv.bpassign %r, %x : i8\n"
      "    }\n"
      "    sv.case %sel : i2\n"
      "    case 0 { sv.error \"zero\" }\n"
      "    case 1 { sv.fatal }\n"
      "    default { sv.finish }\n"
      "  }\n"
      "  hw.output\n"
      "}\n"
      "sv.macro.decl @FOO\n"
      "sv.macro.def @FOO \"42\"\n";
  SourceFile f = parseSource(text);
  CHECK(roundTrip(f) == f);
  CHECK(printFile(roundTrip(f)) == printFile(f)); // printing is idempotent
}

TEST_CASE("parse errors carry positions") {
  try {
    parseSource("\"op\"() : () -> (\n");
    FAIL("expected a parse error");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::Parse);
    REQUIRE(e.loc.has_value());
    CHECK(e.loc->line >= 1);
  }
  try {
    parseSource("%0 = \"comb.add\"(%a %b) : (i8, i8) -> i8");
    FAIL("expected a parse error");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::Parse);
    REQUIRE(e.loc.has_value());
    CHECK(e.loc->line == 1);
    CHECK(e.loc->column >= 18); // inside the offending token's line
  }
  CHECK_THROWS_AS(parseSource("\"op\"("), SimError);
  CHECK_THROWS_AS(parseSource("hw.bogus %a : i8"), SimError);
  CHECK_THROWS_AS(parseSource("{"), SimError);
}

TEST_CASE("loc attributes parse and are dropped from semantics") {
  SourceFile f = parseSource(
      "%0 = \"hw.constant\"() {value = 1 : i8} : () -> i8 loc(\"f.mlir\" : 1 "
      ": 2)");
  const Operation &op = firstOp(f);
  CHECK(op.locText.has_value());
  // Printing does not keep locations; the round-trip drops them.
  SourceFile g = roundTrip(f);
  CHECK(!firstOp(g).locText.has_value());
  CHECK(g == f); // structural equality ignores locations
}
