//===- cli.cpp - Command-line entry points --------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "hwsim/engine.hpp"
#include "hwsim/parser.hpp"
#include "hwsim/printer.hpp"
#include "hwsim/stimulus.hpp"
#include "hwsim/vcd.hpp"

namespace hwsim {

namespace {

std::string readFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw SimError(Err::Parse, "cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool recordMatches(const std::vector<std::string> &filter,
                   const Simulation::SignalRecord &sig) {
  for (const std::string &want : filter)
    if (want == sig.name || want == sig.instancePath + "." + sig.name)
      return true;
  return false;
}

} // namespace

int cliRun(const RunOptions &runOpts, std::ostream &out, std::ostream &err) {
  // Parse phase.
  SourceFile file;
  try {
    file = parseSource(readFile(runOpts.designPath));
  } catch (const SimError &e) {
    err << e.render() << "\n";
    return 1;
  }

  // Static phase: preprocess, load stimulus, resolve the top module.
  std::ofstream logFile;
  Stimulus stim;
  std::optional<Simulation> sim;
  const TypeExpr *ports = nullptr;
  try {
    stim = loadStimulusFile(runOpts.stimPath);
    std::string top =
        runOpts.topSymbol.empty() ? stim.top : runOpts.topSymbol;
    if (top.empty())
      throw SimError(Err::BadFormat, "no top module given");
    MlirState state = preprocess(file);

    SimOptions simOpts;
    simOpts.schedulerSeed = runOpts.seed;
    if (runOpts.maxEvalSteps)
      simOpts.maxEvalSteps = *runOpts.maxEvalSteps;
    else if (stim.maxEvalSteps)
      simOpts.maxEvalSteps = *stim.maxEvalSteps;
    simOpts.traceAll = runOpts.traceAll;
    if (!runOpts.logPath.empty()) {
      logFile.open(runOpts.logPath);
      if (!logFile)
        throw SimError(Err::SinkError,
                       "cannot open log file '" + runOpts.logPath + "'");
      simOpts.taskOut = &logFile;
    } else {
      simOpts.taskOut = &out;
    }
    sim.emplace(std::move(state), top, simOpts);
    for (const std::string &mapping : runOpts.fdMappings) {
      size_t eq = mapping.find('=');
      if (eq == std::string::npos)
        throw SimError(Err::BadFormat,
                       "--fd expects token=name, got '" + mapping + "'");
      sim->sv.fd[mapping.substr(0, eq)] = mapping.substr(eq + 1);
    }

    const CanonOp &moduleOp = sim->refinedOp(top); // UnknownSymbol -> static
    if (moduleOp.name != "hw.module")
      throw SimError(Err::UnknownSymbol,
                     "top symbol '" + top + "' is not a hw.module");
    ports = &modulePortsOf(moduleOp);
    for (size_t i = 0; i < stim.cycles.size(); ++i)
      for (const auto &[port, literal] : stim.cycles[i]) {
        bool known = false;
        for (const auto &[name, ty] : ports->fields)
          known |= name == port;
        if (!known)
          throw SimError(Err::PortMismatch,
                         "stimulus cycle " + std::to_string(i) +
                             " drives unknown input port '" + port + "'");
      }
  } catch (const SimError &e) {
    err << e.render() << "\n";
    return 2;
  }

  // Simulation phase.
  VcdTrace trace;
  bool traceInitialized = false;
  uint64_t cyclesRun = 0;
  try {
    std::vector<TypedValue> inputs;
    for (const auto &[name, ty] : ports->fields)
      inputs.push_back(allXValue(ty));

    for (const auto &cycle : stim.cycles) {
      // Inputs omitted from a cycle hold their previous value.
      for (size_t i = 0; i < ports->fields.size(); ++i) {
        auto it = cycle.find(ports->fields[i].first);
        if (it != cycle.end())
          inputs[i] = literalToValue(it->second, ports->fields[i].second);
      }
      sim->runCycle(inputs);
      ++cyclesRun;

      std::vector<Simulation::SignalRecord> signals = sim->lastSignals;
      if (stim.record) {
        std::vector<Simulation::SignalRecord> kept;
        for (auto &sig : signals)
          if (recordMatches(*stim.record, sig))
            kept.push_back(sig);
        signals = std::move(kept);
      }
      if (!traceInitialized) {
        for (const auto &sig : signals)
          trace.signals.push_back({sig.instancePath, sig.name, sig.width});
        traceInitialized = true;
      }
      if (signals.size() != trace.signals.size())
        throw SimError(Err::ArityMismatch,
                       "recorded signal set changed between cycles");
      std::vector<BitVec4> values;
      values.reserve(signals.size());
      for (auto &sig : signals)
        values.push_back(std::move(sig.value));
      trace.addCycle(std::move(values));

      if (sim->sv.terminateRequested)
        break;
    }

    if (!runOpts.vcdPath.empty()) {
      std::ofstream vcdFile(runOpts.vcdPath);
      if (!vcdFile)
        throw SimError(Err::SinkError,
                       "cannot open VCD file '" + runOpts.vcdPath + "'");
      writeVcd(trace, vcdFile);
    }
  } catch (const SimError &e) {
    err << e.render() << "\n";
    return 3;
  }

  err << "cycles run: " << cyclesRun << "\n";
  err << "assertion failures: " << sim->sv.assertionFailures << "\n";
  err << "diagnostics: " << sim->diags.size() << "\n";
  for (const Diagnostic &d : sim->diags) {
    err << "  " << d.message;
    if (d.loc && d.loc->valid())
      err << " at " << d.loc->str();
    err << "\n";
  }
  if (sim->sv.fatalRaised || sim->sv.assertionFailures > 0)
    return 4;
  return 0;
}

int cliCheck(const std::string &designPath, std::ostream &out,
             std::ostream &err) {
  SourceFile file;
  try {
    file = parseSource(readFile(designPath));
  } catch (const SimError &e) {
    err << e.render() << "\n";
    return 1;
  }
  try {
    MlirState state = preprocess(file);
    for (const auto &[sym, op] : state.table)
      out << sym << "\n";
  } catch (const SimError &e) {
    err << e.render() << "\n";
    return 2;
  }
  return 0;
}

int cliFmt(const std::string &designPath, std::ostream &out,
           std::ostream &err) {
  try {
    SourceFile file = parseSource(readFile(designPath));
    out << printFile(file);
  } catch (const SimError &e) {
    err << e.render() << "\n";
    return 1;
  }
  return 0;
}

int cliMain(int argc, const char *const *argv) {
  CLI::App app{"hwsim - cycle simulator for hw/comb/seq/sv MLIR designs"};
  app.require_subcommand(1);

  RunOptions runOpts;
  CLI::App *run = app.add_subcommand("run", "simulate a design");
  run->add_option("design", runOpts.designPath, "input .mlir file")
      ->required();
  run->add_option("--top", runOpts.topSymbol, "top module symbol");
  run->add_option("--stim", runOpts.stimPath, "stimulus JSON file")
      ->required();
  run->add_option("--vcd", runOpts.vcdPath, "VCD output file");
  uint64_t maxSteps = 0;
  CLI::Option *maxStepsOpt = run->add_option(
      "--max-eval-steps", maxSteps, "per-run evaluation budget");
  uint64_t seed = 0;
  CLI::Option *seedOpt = run->add_option(
      "--seed", seed, "randomize scheduler tie-breaking with this seed");
  run->add_flag("--trace-all", runOpts.traceAll, "record every SSA value");
  run->add_option("--log", runOpts.logPath, "redirect sv task output");
  run->add_option("--fd", runOpts.fdMappings,
                  "map an fwrite descriptor token to a sink name "
                  "(token=name, repeatable)");

  std::string checkPath;
  CLI::App *check = app.add_subcommand("check", "parse and preprocess only");
  check->add_option("design", checkPath, "input .mlir file")->required();

  std::string fmtPath;
  CLI::App *fmt = app.add_subcommand("fmt", "print canonical generic form");
  fmt->add_option("design", fmtPath, "input .mlir file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  if (run->parsed()) {
    if (*maxStepsOpt)
      runOpts.maxEvalSteps = maxSteps;
    if (*seedOpt)
      runOpts.seed = seed;
    return cliRun(runOpts, std::cout, std::cerr);
  }
  if (check->parsed())
    return cliCheck(checkPath, std::cout, std::cerr);
  return cliFmt(fmtPath, std::cout, std::cerr);
}

} // namespace hwsim
