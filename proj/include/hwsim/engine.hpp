//===- engine.hpp - Generic hardware model and scheduler --------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The dialect-agnostic simulation core: instance states (exec queue, curr and
// last value maps, out/reg/wire maps), the effectful functions the dialect
// evaluators use to touch that state, the per-cycle worklist scheduler, and
// the operation dispatch registry.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <atomic>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwsim/static_sem.hpp"
#include "hwsim/value.hpp"

namespace hwsim {

class Simulation;

//===----------------------------------------------------------------------===//
// Instance state (the <ckt> cell)
//===----------------------------------------------------------------------===//

struct Evaluation {
  const CanonOp *op = nullptr;
};

struct Cell {
  std::string name;
  TypedValue value;
};

struct MemStore {
  uint64_t depth = 0;
  uint32_t width = 0;
  uint32_t readLatency = 0;
  std::map<uint64_t, BitVec4> cells; // sparse; absent reads all-X
};

struct PendingNBA {
  StorageRef target;
  TypedValue value;
};

/// End-of-cycle register commit: overwrites curr[resultId] (and thus what the
/// output snapshot and next cycle's last see) either with the current value
/// of another id (firreg next) or with a precomputed value.
struct RegCommit {
  std::string resultId;
  std::optional<std::string> fromId;
  TypedValue value;
};

struct MemCommit {
  MemRef mem;
  uint64_t addr = 0;
  BitVec4 data;
};

struct InstanceState {
  std::vector<std::string> cid; // instance path, root = top symbol
  std::string mod;              // module symbol
  InstanceState *parent = nullptr;

  std::vector<Evaluation> exec;
  std::unordered_map<std::string, TypedValue> curr;
  std::unordered_map<std::string, TypedValue> last;
  std::vector<std::pair<std::string, std::string>> out; // port -> value id
  std::map<std::string, std::string> reg;               // symbol -> value id
  std::map<std::string, std::string> wire;              // symbol -> value id
  std::map<std::string, std::unique_ptr<InstanceState>> children;

  // Persistent dialect-backed storage.
  std::unordered_map<uint32_t, uint32_t> cellByOp; // op seq -> cell index
  std::vector<Cell> cells;
  std::unordered_map<uint32_t, MemStore> mems; // op seq -> memory

  // Per-cycle work.
  std::vector<const CanonOp *> procedural; // blocks, source order
  std::vector<RegCommit> regCommits;
  std::vector<MemCommit> memCommits;
  std::vector<PendingNBA> nba;
  std::map<std::string, uint32_t> assignDrivers; // continuous drivers per slot
  std::vector<TypedValue> pendingInputs;         // set by stimulate

  std::string pathKey() const;
};

//===----------------------------------------------------------------------===//
// Dialect-specific states
//===----------------------------------------------------------------------===//

struct HwState {
  // hierarchy path symbol -> list of symbol paths
  std::map<std::string, std::vector<std::vector<std::string>>> hier;
};

struct LogEntry {
  std::string severity; // "error", "warning", "info", "fatal", "assert", ...
  std::string text;
};

struct SvState {
  // forced overrides: instance path -> storage slot key -> value
  std::map<std::string, std::map<std::string, TypedValue>> force;
  // macro name -> body (nullopt for a bare declaration)
  std::map<std::string, std::optional<std::string>> macros;
  std::set<std::string> inited; // instance paths whose initials have run
  std::map<std::string, std::string> fd; // descriptor token -> sink name
  std::vector<LogEntry> log;
  std::map<std::string, uint64_t> coverCounts;
  uint64_t assertionFailures = 0;
  bool terminateRequested = false;
  bool fatalRaised = false;
};

//===----------------------------------------------------------------------===//
// Commands
//===----------------------------------------------------------------------===//

struct Command {
  enum class Kind { CRop, Debug, DialectCmd };
  Kind kind;
  std::string text;            // CRop symbol / Debug message
  const CanonOp *op = nullptr; // DialectCmd payload
};

//===----------------------------------------------------------------------===//
// Operation dispatch registry
//===----------------------------------------------------------------------===//

/// Scoped frame for procedural execution; values defined inside a procedural
/// region live here, not in curr, so loop bodies can re-execute.
struct Frame {
  std::unordered_map<std::string, TypedValue> vars;
  Frame *parent = nullptr;
};

struct EvalCtx {
  Simulation &sim;
  InstanceState &inst;
  Frame *frame = nullptr;
  bool procedural = false;
};

using EvalFn = std::vector<TypedValue> (*)(EvalCtx &, const CanonOp &);
using PreprocessFn = void (*)(Simulation &, const CanonOp &);

struct OpInfo {
  EvalFn eval = nullptr;
  PreprocessFn preprocess = nullptr; // command-queue handler
  bool proceduralBlock = false; // diverted to the procedural phase
  std::vector<uint32_t> deferredOperands; // not needed for readiness
  mutable std::atomic<uint64_t> hits{0};
};

class OpRegistry {
public:
  static OpRegistry &global();

  void add(const std::string &name, OpInfo info);
  const OpInfo *find(const std::string &name) const;
  std::vector<std::pair<std::string, const OpInfo *>> entries() const;
  void resetHits();

private:
  std::map<std::string, OpInfo> table_;
};

void registerCombDialect(OpRegistry &);
void registerHwDialect(OpRegistry &);
void registerSeqDialect(OpRegistry &);
void registerSvDialect(OpRegistry &);
/// Idempotent; called by the Simulation constructor.
void ensureDialectsRegistered();

//===----------------------------------------------------------------------===//
// Effectful helpers shared with the dialect evaluators
//===----------------------------------------------------------------------===//

/// Unwrap typed values to raw vectors, checking widths (Fig-6 style bits()).
std::vector<BitVec4> bitsOf(const std::vector<TypedValue> &vals,
                            const std::vector<uint32_t> &widths);

/// Refine a canonical operation for the hardware domain: keep only the
/// attributes the owning dialect uses. Idempotent; unknown operations pass
/// through unchanged.
CanonOp canonicalizeHw(const CanonOp &op);

/// The module interface type stored in a hw.module's module_type attribute
/// (fields = inputs, outputs = outputs).
const TypeExpr &modulePortsOf(const CanonOp &moduleOp);

//===----------------------------------------------------------------------===//
// Simulation
//===----------------------------------------------------------------------===//

struct SimOptions {
  std::optional<uint64_t> schedulerSeed; // randomize ready-pick when set
  uint64_t maxEvalSteps = 1u << 20;
  std::ostream *taskOut = nullptr; // sv task / fwrite sink; null = stdout
  bool traceAll = false;           // record every SSA id, not just ports/syms
};

/// One simulation = one preprocessed design + one instance tree. A cycle is
/// driven by runCycle; all mutation happens on the calling thread.
class Simulation {
public:
  Simulation(MlirState mlir, std::string topSymbol, SimOptions opts = {});

  /// Drive one clock cycle: stimulate with the given input port values,
  /// evaluate to completion, apply end-of-cycle commits, snapshot outputs,
  /// finish. Returns output port values in declaration order.
  std::vector<std::pair<std::string, TypedValue>>
  runCycle(const std::vector<TypedValue> &inputs);

  //===--------------------------------------------------------------------===//
  // Effectful functions (Table-1 surface), public for the dialect layers
  // and for unit tests.
  //===--------------------------------------------------------------------===//

  void stimulate(InstanceState &inst, const std::vector<TypedValue> &inputs);
  void writeArgs(InstanceState &inst,
                 const std::vector<std::pair<std::string, TypeRef>> &blockArgs,
                 const std::vector<TypedValue> &vals);
  const TypedValue &readCurr(const InstanceState &inst,
                             const std::string &id) const;
  void writeCurr(InstanceState &inst, const std::string &id, TypedValue val);
  TypedValue readLast(const InstanceState &inst, const std::string &id,
                      const TypeRef &declaredType) const;
  std::string readReg(const InstanceState &inst, const std::string &sym) const;
  void writeReg(InstanceState &inst, const std::string &sym,
                const std::string &id);
  std::string readWire(const InstanceState &inst,
                       const std::string &sym) const;
  void writeWire(InstanceState &inst, const std::string &sym,
                 const std::string &id);
  void writeOut(InstanceState &inst, const std::string &port,
                const std::string &id);
  void finish(InstanceState &inst);
  void execCommand(const Command &cmd);
  /// Standardize a region into evaluations (procedural blocks divert to the
  /// procedural list) and parallelize them onto the exec worklist.
  void splitRegion(InstanceState &inst, const CanonRegion &region);
  void parallelize(InstanceState &inst, std::vector<const CanonOp *> ops);
  void writeResults(InstanceState &inst, const CanonOp &op,
                    const std::vector<TypedValue> &signals);

  //===--------------------------------------------------------------------===//
  // Cycle machinery
  //===--------------------------------------------------------------------===//

  /// Dataflow settle + procedural phase + NBA/register commits + output
  /// snapshot for one instance (used for the root and by hw.instance).
  std::vector<std::pair<std::string, TypedValue>>
  completeInstanceCycle(InstanceState &inst);

  /// Resolve an operand id through the frame chain, then curr.
  const TypedValue &resolveOperand(const EvalCtx &ctx,
                                   const std::string &id) const;
  std::vector<TypedValue> readOperands(const EvalCtx &ctx, const CanonOp &op);
  /// Evaluate one operation immediately (procedural statement execution).
  void evalProceduralOp(EvalCtx &ctx, const CanonOp &op);
  /// Run a region's single block as a procedural statement list.
  void runProceduralRegion(EvalCtx &ctx, const CanonRegion &region,
                           std::vector<std::pair<std::string, TypedValue>>
                               bindings = {});
  /// Splice a region's operations into the dataflow worklist (graph-context
  /// control ops such as sv.if / sv.ifdef).
  void spliceRegion(InstanceState &inst, const CanonRegion &region);

  bool posedge(const InstanceState &inst, const std::string &clkId) const;
  bool negedge(const InstanceState &inst, const std::string &clkId) const;

  //===--------------------------------------------------------------------===//
  // Storage cells and force
  //===--------------------------------------------------------------------===//

  InstanceState &findInstance(const std::string &pathKey);
  TypedValue loadCell(const StorageRef &ref) const; // force-aware
  enum class WriteKind { Continuous, Blocking, Nonblocking };
  void storeCell(const StorageRef &ref, const TypedValue &v, WriteKind kind);
  void installForce(const StorageRef &ref, TypedValue v);
  void releaseForce(const StorageRef &ref);

  //===--------------------------------------------------------------------===//
  // Bookkeeping
  //===--------------------------------------------------------------------===//

  void diagnose(std::string message, std::optional<SourceLoc> loc = {});
  void taskOutput(const std::string &severity, const std::string &text);
  std::ostream &taskSink();

  struct SignalRecord {
    std::string instancePath; // dotted
    std::string name;
    uint32_t width;
    BitVec4 value; // flattened
  };
  /// Deterministic snapshot of recordable signals (ports + registered
  /// symbols per instance), taken after commits.
  std::vector<SignalRecord> collectSignals(bool traceAll) const;

  MlirState mlir;
  HwState hw;
  SvState sv;
  std::unique_ptr<InstanceState> root;
  std::vector<Diagnostic> diags;
  SimOptions opts;
  uint64_t cycleIndex = 0;
  uint64_t evalSteps = 0; // within the current cycle
  /// Signal snapshot of the most recent cycle (post-commit, pre-finish).
  std::vector<SignalRecord> lastSignals;

  /// Refined (hardware-canonical) module lookup; same keys as mlir.table.
  const CanonOp &refinedOp(const std::string &symbol) const;

private:
  void settle(InstanceState &inst);
  void runProceduralPhase(InstanceState &inst);
  void applyCommits(InstanceState &inst);
  void collectInstanceSignals(const InstanceState &inst, bool traceAll,
                              std::vector<SignalRecord> &out) const;
  bool evaluationReady(const InstanceState &inst, const CanonOp &op,
                       const OpInfo &info) const;
  [[noreturn]] void throwDeadlock(const InstanceState &inst) const;
  void processCommands();
  void refineTable();

  std::deque<Command> commands_;
  std::optional<std::mt19937_64> rng_;
  // Stable storage for refined module ops (table entries + commands).
  std::map<std::string, CanonOp> refined_;
  std::vector<CanonOp> refinedCommands_;
};

} // namespace hwsim
