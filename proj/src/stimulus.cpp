//===- stimulus.cpp - JSON stimulus files --------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/stimulus.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hwsim/printer.hpp"

namespace hwsim {

using nlohmann::json;

Stimulus parseStimulus(const std::string &jsonText) {
  json doc;
  try {
    doc = json::parse(jsonText);
  } catch (const json::exception &e) {
    throw SimError(Err::BadFormat,
                   std::string("stimulus is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("top") || !doc["top"].is_string())
    throw SimError(Err::BadFormat, "stimulus requires a string 'top' field");
  Stimulus s;
  s.top = doc["top"].get<std::string>();
  if (doc.contains("cycles")) {
    if (!doc["cycles"].is_array())
      throw SimError(Err::BadFormat, "'cycles' must be an array");
    for (const json &cycle : doc["cycles"]) {
      if (!cycle.is_object())
        throw SimError(Err::BadFormat, "each cycle must be an object");
      std::map<std::string, std::string> record;
      for (auto it = cycle.begin(); it != cycle.end(); ++it) {
        const json &v = it.value();
        if (v.is_string())
          record[it.key()] = v.get<std::string>();
        else if (v.is_number_integer())
          record[it.key()] = std::to_string(v.get<long long>());
        else
          throw SimError(Err::BadFormat,
                         "cycle values must be strings or integers");
      }
      s.cycles.push_back(std::move(record));
    }
  }
  if (doc.contains("record")) {
    if (!doc["record"].is_array())
      throw SimError(Err::BadFormat, "'record' must be an array of names");
    std::vector<std::string> names;
    for (const json &n : doc["record"]) {
      if (!n.is_string())
        throw SimError(Err::BadFormat, "'record' entries must be strings");
      names.push_back(n.get<std::string>());
    }
    s.record = std::move(names);
  }
  if (doc.contains("maxEvalSteps")) {
    if (!doc["maxEvalSteps"].is_number_unsigned())
      throw SimError(Err::BadFormat,
                     "'maxEvalSteps' must be a non-negative integer");
    s.maxEvalSteps = doc["maxEvalSteps"].get<uint64_t>();
  }
  return s;
}

Stimulus loadStimulusFile(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw SimError(Err::BadFormat, "cannot read stimulus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseStimulus(buf.str());
}

TypedValue literalToValue(const std::string &literal, const TypeRef &ty) {
  uint32_t w = flatWidth(ty);
  if (literal == "x" || literal == "X")
    return unflattenValue(ty, BitVec4::allX(w));
  if (literal == "z" || literal == "Z")
    return unflattenValue(ty, BitVec4::allZ(w));
  IntLit lit;
  try {
    lit = IntLit::fromDigits(literal);
  } catch (const SimError &) {
    throw SimError(Err::BadFormat,
                   "bad stimulus literal '" + literal + "' for type " +
                       typeToString(ty));
  }
  return unflattenValue(ty, BitVec4::fromLimbs(w, lit.toTwosComplement(w)));
}

} // namespace hwsim
