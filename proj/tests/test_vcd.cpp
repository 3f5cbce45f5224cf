// VCD writer: structure, initial dump, change-only encoding, reconstruction.

#include <doctest.h>

#include <set>
#include <sstream>

#include "testutil.hpp"
#include "vcd_check.hpp"

using namespace hwsim;
using namespace hwsim::test;

TEST_CASE("a one-bit toggle produces #0/0!/#1/1! lines") {
  VcdTrace trace;
  trace.signals.push_back({"Top", "clk", 1});
  trace.addCycle({BitVec4::fromUint(1, 0)});
  trace.addCycle({BitVec4::fromUint(1, 1)});
  std::ostringstream os;
  writeVcd(trace, os);
  std::string text = os.str();
  CHECK(text.find("$timescale 1ns $end") != std::string::npos);
  CHECK(text.find("$scope module Top $end") != std::string::npos);
  CHECK(text.find("$var wire 1 ! clk $end") != std::string::npos);
  CHECK(text.find("#0\n$dumpvars\n0!\n$end\n#1\n1!\n") != std::string::npos);
  CHECK(checkVcd(text).error.empty());
  CHECK(reconstructAgainst(trace, text).empty());
}

TEST_CASE("no signals: header and enddefinitions only") {
  VcdTrace trace;
  std::ostringstream os;
  writeVcd(trace, os);
  std::string text = os.str();
  CHECK(text.find("$enddefinitions $end") != std::string::npos);
  CHECK(text.find("$var") == std::string::npos);
  CHECK(checkVcd(text).error.empty());
}

TEST_CASE("four-state vector values serialize with x digits") {
  VcdTrace trace;
  trace.signals.push_back({"Top", "bus", 4});
  trace.addCycle({BitVec4::allX(4)});
  trace.addCycle({BitVec4::fromUint(4, 10)});
  std::ostringstream os;
  writeVcd(trace, os);
  std::string text = os.str();
  CHECK(text.find("bxxxx !") != std::string::npos);
  CHECK(text.find("b1010 !") != std::string::npos);
  CHECK(reconstructAgainst(trace, text).empty());
}

TEST_CASE("only changed values appear after t=0") {
  VcdTrace trace;
  trace.signals.push_back({"Top", "a", 1});
  trace.signals.push_back({"Top", "b", 1});
  trace.addCycle({BitVec4::fromUint(1, 0), BitVec4::fromUint(1, 1)});
  trace.addCycle({BitVec4::fromUint(1, 0), BitVec4::fromUint(1, 0)});
  trace.addCycle({BitVec4::fromUint(1, 0), BitVec4::fromUint(1, 0)});
  std::ostringstream os;
  writeVcd(trace, os);
  VcdCheck c = checkVcd(os.str());
  REQUIRE(c.error.empty());
  REQUIRE(c.changes.size() == 3);
  CHECK(c.changes[0].size() == 2); // full dump
  CHECK(c.changes[1].size() == 1); // only b changed
  CHECK(c.changes[2].empty());
  CHECK(reconstructAgainst(trace, os.str()).empty());
}

TEST_CASE("scope tree mirrors dotted instance paths") {
  VcdTrace trace;
  trace.signals.push_back({"Top", "clk", 1});
  trace.signals.push_back({"Top.child", "out", 8});
  trace.addCycle({BitVec4::fromUint(1, 1), BitVec4::fromUint(8, 3)});
  std::ostringstream os;
  writeVcd(trace, os);
  std::string text = os.str();
  auto topPos = text.find("$scope module Top $end");
  auto childPos = text.find("$scope module child $end");
  REQUIRE(topPos != std::string::npos);
  REQUIRE(childPos != std::string::npos);
  CHECK(topPos < childPos);
  VcdCheck c = checkVcd(text);
  CHECK(c.error.empty());
  bool foundChild = false;
  for (auto &[id, var] : c.vars)
    if (var.scope == "Top.child" && var.name == "out")
      foundChild = true;
  CHECK(foundChild);
}

TEST_CASE("id codes are printable and unique") {
  CHECK(vcdIdCode(0) == "!");
  CHECK(vcdIdCode(1) == "\"");
  CHECK(vcdIdCode(93) == "~");
  CHECK(vcdIdCode(94).size() == 2);
  std::set<std::string> seen;
  for (size_t i = 0; i < 500; ++i)
    CHECK(seen.insert(vcdIdCode(i)).second);
}

TEST_CASE("trace cycle arity is checked") {
  VcdTrace trace;
  trace.signals.push_back({"Top", "a", 1});
  try {
    trace.addCycle({});
    FAIL("expected ArityMismatch");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::ArityMismatch);
  }
}

TEST_CASE("sink failures raise SinkError") {
  VcdTrace trace;
  trace.signals.push_back({"Top", "a", 1});
  trace.addCycle({BitVec4::fromUint(1, 0)});
  std::ostringstream os;
  os.setstate(std::ios::failbit);
  try {
    writeVcd(trace, os);
    FAIL("expected SinkError");
  } catch (const SimError &e) {
    CHECK(e.kind == Err::SinkError);
  }
}
