// seq dialect: register semantics (reset/preset/hold tables) and firmem
// ports. Expected traces are hand-derived register timing tables.

#include <doctest.h>

#include "testutil.hpp"

using namespace hwsim;
using namespace hwsim::test;

namespace {

using Trace = std::vector<std::optional<uint64_t>>;

const char *kSyncReset =
    "hw.module @R(in %clk : !seq.clock, in %rst : i1, out out : i8) {\n"
    "  %c0 = hw.constant 0 : i8\n"
    "  %c1 = hw.constant 1 : i8\n"
    "  %next = comb.add %count, %c1 : i8\n"
    "  %count = seq.firreg %next clock %clk reset sync %rst, %c0 : i8\n"
    "  hw.output %count : i8\n"
    "}\n";

const char *kAsyncReset =
    "hw.module @R(in %clk : !seq.clock, in %rst : i1, out out : i8) {\n"
    "  %c0 = hw.constant 0 : i8\n"
    "  %c1 = hw.constant 1 : i8\n"
    "  %next = comb.add %count, %c1 : i8\n"
    "  %count = seq.firreg %next clock %clk reset async %rst, %c0 : i8\n"
    "  hw.output %count : i8\n"
    "}\n";

const char *kPreset =
    "hw.module @R(in %clk : !seq.clock, in %rst : i1, out out : i8) {\n"
    "  %c1 = hw.constant 1 : i8\n"
    "  %next = comb.add %count, %c1 : i8\n"
    "  %count = seq.firreg %next clock %clk preset 5 : i8\n"
    "  hw.output %count : i8\n"
    "}\n";

const char *kHold =
    "hw.module @R(in %clk : !seq.clock, in %rst : i1, out out : i8) {\n"
    "  %c1 = hw.constant 1 : i8\n"
    "  %next = comb.add %count, %c1 : i8\n"
    "  %count = seq.firreg %next clock %clk preset 3 : i8\n"
    "  hw.output %count : i8\n"
    "}\n";

} // namespace

TEST_CASE("sync reset scenario table (8 cycles)") {
  Simulation sim = makeSim(kSyncReset, "R");
  // (clk,rst): no preset, so the register starts all-X. The sync reset takes
  // effect only on a posedge; the post-edge value is visible the same cycle.
  Trace outs = driveClkRst(sim,
                           {{0, 0}, {1, 0}, {0, 0}, {1, 1},
                            {0, 0}, {1, 0}, {1, 0}, {0, 0}},
                           "out");
  Trace expect{std::nullopt, std::nullopt, std::nullopt, 0, 0, 1, 1, 1};
  CHECK(outs == expect);
}

TEST_CASE("async reset scenario table (8 cycles)") {
  Simulation sim = makeSim(kAsyncReset, "R");
  // Async reset asserts without a clock edge (cycles 1 and 5).
  Trace outs = driveClkRst(sim,
                           {{0, 0}, {0, 1}, {1, 1}, {0, 0},
                            {1, 0}, {0, 1}, {1, 0}, {0, 0}},
                           "out");
  Trace expect{std::nullopt, 0, 0, 0, 1, 0, 1, 1};
  CHECK(outs == expect);
}

TEST_CASE("preset scenario table (8 cycles)") {
  Simulation sim = makeSim(kPreset, "R");
  Trace outs = driveClkRst(sim,
                           {{0, 0}, {1, 0}, {0, 0}, {1, 0},
                            {0, 0}, {1, 0}, {1, 0}, {0, 0}},
                           "out");
  Trace expect{5, 6, 6, 7, 7, 8, 8, 8};
  CHECK(outs == expect);
}

TEST_CASE("hold scenario table: no edges, constant output (8 cycles)") {
  Simulation sim = makeSim(kHold, "R");
  Trace outs = driveClkRst(sim,
                           {{0, 0}, {0, 0}, {0, 0}, {0, 0},
                            {0, 0}, {0, 0}, {0, 0}, {0, 0}},
                           "out");
  Trace expect{3, 3, 3, 3, 3, 3, 3, 3};
  CHECK(outs == expect);
}

TEST_CASE("posedge with next=5 returns prev this cycle, 5 afterwards") {
  const char *text =
      "hw.module @R(in %clk : !seq.clock, in %next : i8, out out : i8) {\n"
      "  %count = seq.firreg %next clock %clk preset 0 : i8\n"
      "  hw.output %count : i8\n"
      "}\n";
  Simulation sim = makeSim(text, "R");
  // The downstream view during the edge cycle is prev; the snapshot shows
  // the committed value; next cycle's read keeps it.
  CHECK(cycleOut(sim, {0, 5}, "out") == 0);
  CHECK(cycleOut(sim, {1, 5}, "out") == 5); // posedge commits 5
  CHECK(cycleOut(sim, {0, 7}, "out") == 5); // no edge, holds
}

TEST_CASE("Moore property: output depends only on past inputs") {
  // Two runs that differ only in the current cycle's next-value input have
  // the same register output at non-edge cycles.
  const char *text =
      "hw.module @R(in %clk : !seq.clock, in %next : i8, out out : i8) {\n"
      "  %count = seq.firreg %next clock %clk preset 0 : i8\n"
      "  hw.output %count : i8\n"
      "}\n";
  Simulation a = makeSim(text, "R");
  Simulation b = makeSim(text, "R");
  CHECK(cycleOut(a, {0, 10}, "out") == cycleOut(b, {0, 99}, "out"));
}

TEST_CASE("firreg registers its inner symbol") {
  const char *text =
      "hw.module @R(in %clk : !seq.clock, in %rst : i1, out out : i8) {\n"
      "  %c1 = hw.constant 1 : i8\n"
      "  %next = comb.add %count, %c1 : i8\n"
      "  %count = seq.firreg %next clock %clk sym @count preset 0 : i8\n"
      "  hw.output %count : i8\n"
      "}\n";
  Simulation sim = makeSim(text, "R");
  driveClkRst(sim, {{0, 0}}, "out");
  CHECK(sim.root->reg.count("count") == 1);
}

namespace {

const char *kMemHarness =
    "hw.module @M(in %clk : !seq.clock, in %waddr : i4, in %wdata : i8,\n"
    "             in %wen : i1, in %raddr : i4, out rdata : i8) {\n"
    "  %mem = seq.firmem 0, 1 : <12 x 8>\n"
    "  seq.firmem.write_port %mem[%waddr] = %wdata, clock %clk enable %wen "
    ": <12 x 8>\n"
    "  %r = seq.firmem.read_port %mem[%raddr], clock %clk : <12 x 8>\n"
    "  hw.output %r : i8\n"
    "}\n";

std::optional<uint64_t> memCycle(Simulation &sim, int clk, uint64_t waddr,
                                 uint64_t wdata, int wen, uint64_t raddr) {
  return cycleOut(sim, {uint64_t(clk), waddr, wdata, uint64_t(wen), raddr},
                  "rdata");
}

} // namespace

TEST_CASE("memory write-then-read trace (latency 0)") {
  Simulation sim = makeSim(kMemHarness, "M");
  // Unwritten cells read all-X.
  CHECK(memCycle(sim, 0, 3, 0xAB, 1, 3) == std::nullopt);
  // The posedge write commits at end of cycle; the same-cycle read still
  // sees the old contents.
  CHECK(memCycle(sim, 1, 3, 0xAB, 1, 3) == std::nullopt);
  CHECK(memCycle(sim, 0, 3, 0, 0, 3) == 0xAB);
  // Disabled writes change nothing.
  CHECK(memCycle(sim, 1, 3, 0xFF, 0, 3) == 0xAB);
  CHECK(memCycle(sim, 0, 3, 0, 0, 3) == 0xAB);
}

TEST_CASE("out-of-range writes are dropped with a diagnostic") {
  Simulation sim = makeSim(kMemHarness, "M");
  memCycle(sim, 0, 0, 0, 0, 0);
  size_t before = sim.diags.size();
  memCycle(sim, 1, 13, 0x55, 1, 0); // depth is 12
  CHECK(sim.diags.size() > before);
  // Nothing was written anywhere.
  for (int addr = 0; addr < 12; ++addr)
    CHECK(memCycle(sim, 0, 0, 0, 0, uint64_t(addr)) == std::nullopt);
}

TEST_CASE("no lost writes: memory equals a fold of the write history") {
  Simulation sim = makeSim(kMemHarness, "M");
  std::map<uint64_t, uint64_t> model;
  std::mt19937_64 rng(5);
  int clk = 0;
  for (int i = 0; i < 60; ++i) {
    clk ^= 1;
    uint64_t addr = rng() % 12;
    uint64_t data = rng() & 0xFF;
    int wen = rng() % 2;
    memCycle(sim, clk, addr, data, wen, 0);
    if (clk == 1 && wen == 1)
      model[addr] = data;
  }
  if (clk == 1)
    memCycle(sim, 0, 0, 0, 0, 0);
  for (auto &[addr, data] : model)
    CHECK(memCycle(sim, 0, 0, 0, 0, addr) == data);
}

TEST_CASE("latency-1 read port behaves as a pipeline register") {
  const char *text =
      "hw.module @M(in %clk : !seq.clock, in %waddr : i2, in %wdata : i8,\n"
      "             in %wen : i1, in %raddr : i2, in %ren : i1, out rdata : "
      "i8) {\n"
      "  %mem = seq.firmem 1, 1 : <4 x 8>\n"
      "  seq.firmem.write_port %mem[%waddr] = %wdata, clock %clk enable %wen "
      ": <4 x 8>\n"
      "  %r = seq.firmem.read_port %mem[%raddr], clock %clk enable %ren : <4 "
      "x 8>\n"
      "  hw.output %r : i8\n"
      "}\n";
  Simulation sim = makeSim(text, "M");
  auto cyc = [&](int clk, uint64_t wa, uint64_t wd, int we, uint64_t ra,
                 int re) {
    return cycleOut(sim, {uint64_t(clk), wa, wd, uint64_t(we), ra,
                          uint64_t(re)},
                    "rdata");
  };
  cyc(0, 1, 0x42, 1, 1, 1);
  cyc(1, 1, 0x42, 1, 1, 1); // write 0x42@1; capture reads old (X)
  CHECK(cyc(0, 0, 0, 0, 1, 1) == std::nullopt); // pipeline still X
  // Next posedge captures the written value; visible from the snapshot of
  // that cycle onward.
  CHECK(cyc(1, 0, 0, 0, 1, 1) == 0x42);
  CHECK(cyc(0, 0, 0, 0, 1, 1) == 0x42);
  // A disabled read captures all-X at the pipeline output.
  CHECK(cyc(1, 0, 0, 0, 1, 0) == std::nullopt);
}

TEST_CASE("read-write port trace") {
  const char *text =
      "hw.module @M(in %clk : !seq.clock, in %addr : i2, in %wdata : i8,\n"
      "             in %mode : i1, in %en : i1, out rdata : i8) {\n"
      "  %mem = seq.firmem 0, 1 : <4 x 8>\n"
      "  %r = seq.firmem.read_write_port %mem[%addr] = %wdata if %mode, "
      "clock %clk enable %en : <4 x 8>\n"
      "  hw.output %r : i8\n"
      "}\n";
  Simulation sim = makeSim(text, "M");
  auto cyc = [&](int clk, uint64_t addr, uint64_t wd, int mode, int en) {
    return cycleOut(sim, {uint64_t(clk), addr, wd, uint64_t(mode),
                          uint64_t(en)},
                    "rdata");
  };
  // mode=1 writes and reads all-X that cycle.
  CHECK(cyc(0, 2, 0x7E, 1, 1) == std::nullopt);
  CHECK(cyc(1, 2, 0x7E, 1, 1) == std::nullopt); // write 0x7E@2
  // mode=0 reads it back.
  CHECK(cyc(0, 2, 0, 0, 1) == 0x7E);
  // enable=0 is inert: no write happens on the posedge.
  CHECK(cyc(1, 2, 0x11, 1, 0) == std::nullopt); // mode=1 still reads X
  CHECK(cyc(0, 2, 0, 0, 1) == 0x7E);
}

TEST_CASE("read-write port with unknown mode drops the write") {
  const char *text =
      "hw.module @M(in %clk : !seq.clock, in %addr : i2, in %wdata : i8,\n"
      "             in %mode : i1, in %en : i1, out rdata : i8) {\n"
      "  %mem = seq.firmem 0, 1 : <4 x 8>\n"
      "  %r = seq.firmem.read_write_port %mem[%addr] = %wdata if %mode, "
      "clock %clk enable %en : <4 x 8>\n"
      "  hw.output %r : i8\n"
      "}\n";
  Simulation sim = makeSim(text, "M");
  const CanonOp &mod = sim.refinedOp("M");
  const TypeExpr &ports = modulePortsOf(mod);
  auto mk = [&](uint64_t v, size_t i) {
    return TypedValue(ports.fields[i].second,
                      BitVec4::fromUint(flatWidth(ports.fields[i].second), v));
  };
  // Drive mode = X on a posedge with enable high.
  std::vector<TypedValue> in0{mk(0, 0), mk(1, 1), mk(0x5A, 2), mk(1, 3),
                              mk(1, 4)};
  sim.runCycle(in0);
  std::vector<TypedValue> in1{mk(1, 0), mk(1, 1), mk(0x5A, 2),
                              TypedValue(ports.fields[3].second,
                                         BitVec4::allX(1)),
                              mk(1, 4)};
  size_t before = sim.diags.size();
  auto outs = sim.runCycle(in1);
  CHECK(!flattenValue(outs[0].second).toUint64().has_value()); // all-X read
  CHECK(sim.diags.size() > before);
  // The write was dropped.
  std::vector<TypedValue> in2{mk(0, 0), mk(1, 1), mk(0, 2), mk(0, 3), mk(1, 4)};
  auto outs2 = sim.runCycle(in2);
  CHECK(!flattenValue(outs2[0].second).toUint64().has_value());
}

TEST_CASE("missing clock raises MissingClock") {
  Simulation sim = makeSim(kSyncReset, "R");
  const CanonOp &mod = sim.refinedOp("R");
  const CanonOp &firreg = mod.regions[0].blocks[0].ops[3];
  REQUIRE(firreg.name == "seq.firreg");
  InstanceState inst;
  EvalCtx ctx{sim, inst, nullptr, false};
  const OpInfo *info = OpRegistry::global().find("seq.firreg");
  try {
    info->eval(ctx, firreg);
    FAIL("expected MissingClock");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::MissingClock);
  }
}
