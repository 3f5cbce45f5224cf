// Core engine: effectful functions, scheduling, deadlock, finish, commands.

#include <doctest.h>

#include "testutil.hpp"

using namespace hwsim;
using namespace hwsim::test;

TEST_CASE("identity module: output equals input") {
  Simulation sim = makeSim(
      "hw.module @Id(in %a : i8, out out : i8) {\n"
      "  hw.output %a : i8\n"
      "}\n",
      "Id");
  CHECK(cycleOut(sim, {42}, "out") == 42);
  CHECK(cycleOut(sim, {7}, "out") == 7);
}

TEST_CASE("counter matches the hand-derived trace") {
  Simulation sim = makeSim(counterText(), "Counter");
  // clk toggles 0/1; rst covers the first posedge then deasserts.
  auto outs = driveClkRst(sim,
                          {{0, 1}, {1, 1}, {0, 0}, {1, 0}, {0, 0}, {1, 0}},
                          "out");
  std::vector<std::optional<uint64_t>> expect{0, 0, 0, 1, 1, 2};
  CHECK(outs == expect);
}

TEST_CASE("registers persist across stimulate calls") {
  Simulation sim = makeSim(counterText(), "Counter");
  driveClkRst(sim, {{0, 1}, {1, 1}, {0, 0}, {1, 0}}, "out");
  // No reset in between: the count continues from the stored value.
  auto outs = driveClkRst(sim, {{0, 0}, {1, 0}}, "out");
  CHECK(outs == std::vector<std::optional<uint64_t>>{1, 2});
}

TEST_CASE("bits unwraps typed values and checks widths") {
  TypedValue a(TypeExpr::makeInt(8), BitVec4::fromUint(8, 5));
  auto vs = bitsOf({a}, {8});
  CHECK(vs[0].toUint64() == 5);
  TypedValue clk(TypeExpr::makeClock(), BitVec4::allX(1));
  CHECK(bitsOf({clk}, {1})[0].hasXorZ());
  try {
    bitsOf({a}, {4});
    FAIL("expected WidthMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::WidthMismatch);
  }
}

TEST_CASE("write_curr / read_curr / DoubleWrite") {
  Simulation sim = makeSim(counterText(), "Counter");
  InstanceState inst;
  inst.cid = {"t"};
  TypedValue v(TypeExpr::makeInt(1), BitVec4::fromUint(1, 1));
  sim.writeCurr(inst, "5", v);
  CHECK(sim.readCurr(inst, "5") == v);
  try {
    sim.writeCurr(inst, "5", v);
    FAIL("expected DoubleWrite");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::DoubleWrite);
  }
  try {
    sim.readCurr(inst, "nope");
    FAIL("expected UndefinedValue");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UndefinedValue);
  }
}

TEST_CASE("read_last falls back to all-X of the declared type") {
  Simulation sim = makeSim(counterText(), "Counter");
  InstanceState inst;
  TypedValue x = sim.readLast(inst, "count", TypeExpr::makeInt(8));
  CHECK(x.bits().width() == 8);
  CHECK(!x.bits().isFullyDefined());
}

TEST_CASE("reg/wire/out registration") {
  Simulation sim = makeSim(counterText(), "Counter");
  InstanceState inst;
  sim.writeReg(inst, "count", "1");
  CHECK(sim.readReg(inst, "count") == "1");
  try {
    sim.writeReg(inst, "count", "2");
    FAIL("expected DuplicateName");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::DuplicateName);
  }
  try {
    sim.readWire(inst, "w");
    FAIL("expected UnknownName");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnknownName);
  }
  sim.writeOut(inst, "out", "1");
  CHECK(inst.out.size() == 1);
}

TEST_CASE("finish moves the whole curr map to last") {
  Simulation sim = makeSim(counterText(), "Counter");
  InstanceState inst;
  TypedValue v(TypeExpr::makeInt(4), BitVec4::fromUint(4, 9));
  sim.writeCurr(inst, "a", v);
  sim.finish(inst);
  CHECK(inst.curr.empty());
  CHECK(inst.last.at("a") == v);

  // finish on a fresh instance leaves last empty.
  InstanceState fresh;
  sim.finish(fresh);
  CHECK(fresh.last.empty());
}

TEST_CASE("finish with pending evaluations is premature") {
  Simulation sim = makeSim(counterText(), "Counter");
  const CanonOp &mod = sim.refinedOp("Counter");
  InstanceState inst;
  inst.exec.push_back({&mod});
  try {
    sim.finish(inst);
    FAIL("expected PrematureFinish");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::PrematureFinish);
  }
}

TEST_CASE("split_region standardizes a module body onto the worklist") {
  Simulation sim = makeSim(counterText(), "Counter");
  const CanonOp &mod = sim.refinedOp("Counter");
  InstanceState inst;
  sim.splitRegion(inst, mod.regions[0]);
  CHECK(inst.exec.size() == 6); // six independent evaluations

  CanonRegion twoBlocks;
  twoBlocks.blocks.resize(2);
  try {
    sim.splitRegion(inst, twoBlocks);
    FAIL("expected MultiBlockRegion");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::MultiBlockRegion);
  }
}

TEST_CASE("deadlock reports stuck operations and missing ids") {
  const char *cyclic =
      "hw.module @Cyc(in %a : i8, out out : i8) {\n"
      "  %x = comb.add %y, %a : i8\n"
      "  %y = comb.add %x, %a : i8\n"
      "  hw.output %x : i8\n"
      "}\n";
  Simulation sim = makeSim(cyclic, "Cyc");
  try {
    cycleOut(sim, {1}, "out");
    FAIL("expected Deadlock");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::Deadlock);
    std::string msg = e.what();
    CHECK(msg.find("comb.add") != std::string::npos);
    CHECK(msg.find("%") != std::string::npos);
  }
}

TEST_CASE("unknown operations are rejected at dispatch") {
  Simulation sim = makeSim(
      "hw.module @U(in %a : i8, out out : i8) {\n"
      "  %x = \"foo.bar\"(%a) : (i8) -> i8\n"
      "  hw.output %x : i8\n"
      "}\n",
      "U");
  try {
    cycleOut(sim, {1}, "out");
    FAIL("expected UnknownOperation");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnknownOperation);
  }
}

TEST_CASE("evaluation budget stops runaway settles") {
  SimOptions opts;
  opts.maxEvalSteps = 3;
  Simulation sim = makeSim(counterText(), "Counter", opts);
  try {
    cycleOut(sim, {0, 0}, "out");
    FAIL("expected EvalBudget");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::EvalBudget);
  }
}

TEST_CASE("stimulate checks arity and unknown symbols") {
  Simulation sim = makeSim(counterText(), "Counter");
  try {
    sim.runCycle({});
    FAIL("expected ArityMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::ArityMismatch);
  }

  Simulation bad = makeSim(counterText(), "Nope");
  try {
    bad.runCycle({});
    FAIL("expected UnknownSymbol");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnknownSymbol);
    CHECK(std::string(e.what()).find("Nope") != std::string::npos);
  }
  CHECK(bad.mlir.phase == Phase::Debug);
}

TEST_CASE("exec_command: CRop failure becomes a Debug halt") {
  Simulation sim = makeSim(counterText(), "Counter");
  sim.execCommand({Command::Kind::CRop, "Counter", nullptr});
  CHECK(sim.mlir.phase == Phase::Simulation);
  sim.execCommand({Command::Kind::Debug, "boom", nullptr});
  CHECK(sim.mlir.phase == Phase::Debug);
  CHECK(sim.mlir.debugMessage == "boom");
}

TEST_CASE("write_args binds block arguments and checks types") {
  Simulation sim = makeSim(counterText(), "Counter");
  InstanceState inst;
  std::vector<std::pair<std::string, TypeRef>> args{
      {"clk", TypeExpr::makeClock()}, {"rst", TypeExpr::makeInt(1)}};
  std::vector<TypedValue> vals{
      {TypeExpr::makeClock(), BitVec4::fromUint(1, 1)},
      {TypeExpr::makeInt(1), BitVec4::fromUint(1, 0)}};
  sim.writeArgs(inst, args, vals);
  CHECK(inst.curr.size() == 2);

  InstanceState other;
  std::vector<TypedValue> wrong{
      {TypeExpr::makeInt(8), BitVec4::fromUint(8, 1)},
      {TypeExpr::makeInt(1), BitVec4::fromUint(1, 0)}};
  try {
    sim.writeArgs(other, args, wrong);
    FAIL("expected TypeMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::TypeMismatch);
  }
  try {
    sim.writeArgs(other, args, {});
    FAIL("expected ArityMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::ArityMismatch);
  }
  // Empty bind is a no-op.
  InstanceState empty;
  sim.writeArgs(empty, {}, {});
  CHECK(empty.curr.empty());
}

TEST_CASE("confluence: randomized scheduling does not change results") {
  // End-of-cycle last maps must be identical for any tie-breaking order.
  auto runWith = [&](std::optional<uint64_t> seed) {
    SimOptions opts;
    opts.schedulerSeed = seed;
    Simulation sim = makeSim(counterText(), "Counter", opts);
    driveClkRst(sim, {{0, 1}, {1, 1}, {0, 0}, {1, 0}, {0, 0}, {1, 0}}, "out");
    std::vector<std::pair<std::string, std::string>> state;
    for (const auto &[id, v] : sim.root->last)
      state.emplace_back(id, flattenValue(v).toBinaryString());
    std::sort(state.begin(), state.end());
    return state;
  };
  auto reference = runWith(std::nullopt);
  for (uint64_t seed = 1; seed <= 20; ++seed)
    CHECK(runWith(seed) == reference);
}

TEST_CASE("canonicalize_hw drops dialect-irrelevant attributes") {
  MlirState s = preprocess(parseSource(
      "%r = \"comb.add\"(%a, %b) {sym_name = \"A\", junk = 1 : i8} "
      ": (i8, i8) -> i8\n"));
  CanonOp refined = canonicalizeHw(s.rop("A"));
  CHECK(refined.attr("junk") == nullptr);
  // Idempotent.
  CHECK(canonOpEquals(canonicalizeHw(refined), refined));
  // Unknown operations pass through unchanged.
  MlirState u = preprocess(
      parseSource("\"x.y\"() {sym_name = \"U\", keep = 1 : i8} : () -> ()\n"));
  CanonOp passthrough = canonicalizeHw(u.rop("U"));
  CHECK(passthrough.attr("keep") != nullptr);
}

TEST_CASE("firmem mask attribute is a preprocessing error") {
  MlirState s = preprocess(parseSource(
      "%m = \"seq.firmem\"() {sym_name = \"M\", readLatency = 0 : i32, "
      "writeLatency = 1 : i32, mask = 4 : i32} : () -> !seq.firmem<4 x 8>\n"));
  try {
    canonicalizeHw(s.rop("M"));
    FAIL("expected MalformedAttribute");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::MalformedAttribute);
  }
}

TEST_CASE("permuting independent operations leaves the cycle state intact") {
  // The same DAG with its source lines permuted; dataflow order is driven by
  // readiness, so the end-of-cycle state must match.
  const char *orderA =
      "hw.module @P(in %a : i8, in %b : i8, out out : i8) {\n"
      "  %x = comb.add %a, %b : i8\n"
      "  %y = comb.xor %a, %b : i8\n"
      "  %z = comb.and %x, %y : i8\n"
      "  hw.output %z : i8\n"
      "}\n";
  const char *orderB =
      "hw.module @P(in %a : i8, in %b : i8, out out : i8) {\n"
      "  %y = comb.xor %a, %b : i8\n"
      "  %z = comb.and %x, %y : i8\n"
      "  %x = comb.add %a, %b : i8\n"
      "  hw.output %z : i8\n"
      "}\n";
  Simulation simA = makeSim(orderA, "P");
  Simulation simB = makeSim(orderB, "P");
  for (uint64_t a : {3ull, 250ull}) {
    CHECK(cycleOut(simA, {a, 77}, "out") == cycleOut(simB, {a, 77}, "out"));
  }
}

TEST_CASE("unknown top-level commands halt construction via Debug") {
  MlirState s = preprocess(parseSource(
      "\"weird.top\"() : () -> ()\n"));
  try {
    Simulation sim(std::move(s), "X");
    FAIL("expected UnknownOperation");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::UnknownOperation);
  }
}

TEST_CASE("counter with the clock starting high") {
  // First-cycle clock history is unknown, so a high clock at cycle 0 is not
  // an edge; posedges land on cycles 2 and 4.
  Simulation sim = makeSim(counterText(), "Counter");
  auto outs = driveClkRst(sim, {{1, 1}, {0, 0}, {1, 0}, {0, 0}, {1, 0}},
                          "out");
  CHECK(outs == std::vector<std::optional<uint64_t>>{0, 0, 1, 1, 2});
}
