//===- printer.cpp - Canonical generic-form text output ---------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/printer.hpp"

#include <sstream>

namespace hwsim {

namespace {

void printTypeTo(std::ostream &os, const TypeRef &t);
void printAttrTo(std::ostream &os, const AttrRef &a);

std::string escapeString(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    case '\0': out += "\\0"; break;
    default: out.push_back(c);
    }
  }
  return out;
}

bool isBareIdent(const std::string &s) {
  if (s.empty())
    return false;
  auto start = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!start(s[0]))
    return false;
  for (char c : s)
    if (!(start(c) || (c >= '0' && c <= '9') || c == '$' || c == '.'))
      return false;
  return true;
}

void printSymbol(std::ostream &os, const std::string &s) {
  if (isBareIdent(s) || (!s.empty() && s.find_first_not_of("0123456789") ==
                                           std::string::npos))
    os << "@" << s;
  else
    os << "@\"" << escapeString(s) << "\"";
}

void printTypeListTo(std::ostream &os,
                     const std::vector<TypeRef> &types) {
  os << "(";
  for (size_t i = 0; i < types.size(); ++i) {
    if (i)
      os << ", ";
    printTypeTo(os, types[i]);
  }
  os << ")";
}

void printTypeTo(std::ostream &os, const TypeRef &t) {
  if (!t) {
    os << "<<null type>>";
    return;
  }
  switch (t->kind) {
  case TypeExpr::Kind::Int:
    os << "i" << t->intWidth;
    return;
  case TypeExpr::Kind::Clock:
    os << "!seq.clock";
    return;
  case TypeExpr::Kind::Alias:
    os << "!" << t->name;
    return;
  case TypeExpr::Kind::Inout:
    os << "!hw.inout<";
    printTypeTo(os, t->elem);
    os << ">";
    return;
  case TypeExpr::Kind::Array:
    os << "!hw.array<" << t->arraySize << "x";
    printTypeTo(os, t->elem);
    os << ">";
    return;
  case TypeExpr::Kind::Struct:
  case TypeExpr::Kind::Union: {
    os << (t->kind == TypeExpr::Kind::Struct ? "!hw.struct<" : "!hw.union<");
    for (size_t i = 0; i < t->fields.size(); ++i) {
      if (i)
        os << ", ";
      os << t->fields[i].first << ": ";
      printTypeTo(os, t->fields[i].second);
    }
    os << ">";
    return;
  }
  case TypeExpr::Kind::Enum: {
    os << "!hw.enum<";
    for (size_t i = 0; i < t->enumerators.size(); ++i) {
      if (i)
        os << ", ";
      os << t->enumerators[i];
    }
    os << ">";
    return;
  }
  case TypeExpr::Kind::Func: {
    printTypeListTo(os, t->funcIns);
    os << " -> ";
    if (t->funcOuts.size() == 1 &&
        t->funcOuts[0]->kind != TypeExpr::Kind::Func) {
      printTypeTo(os, t->funcOuts[0]);
    } else {
      printTypeListTo(os, t->funcOuts);
    }
    return;
  }
  case TypeExpr::Kind::Module: {
    os << "!hw.modty<";
    bool first = true;
    for (const auto &[n, ty] : t->fields) {
      if (!first)
        os << ", ";
      first = false;
      os << "input " << n << " : ";
      printTypeTo(os, ty);
    }
    for (const auto &[n, ty] : t->outputs) {
      if (!first)
        os << ", ";
      first = false;
      os << "output " << n << " : ";
      printTypeTo(os, ty);
    }
    os << ">";
    return;
  }
  case TypeExpr::Kind::FirMem:
    os << "!seq.firmem<" << t->memDepth << " x " << t->memWidth << ">";
    return;
  case TypeExpr::Kind::OpaqueDialect:
    os << "!" << t->name;
    return;
  }
}

void printDictTo(std::ostream &os, const DictAttr &dict) {
  for (size_t i = 0; i < dict.size(); ++i) {
    if (i)
      os << ", ";
    if (isBareIdent(dict[i].first))
      os << dict[i].first;
    else
      os << "\"" << escapeString(dict[i].first) << "\"";
    if (dict[i].second->kind != AttrExpr::Kind::Unit) {
      os << " = ";
      printAttrTo(os, dict[i].second);
    }
  }
}

void printAttrTo(std::ostream &os, const AttrRef &a) {
  switch (a->kind) {
  case AttrExpr::Kind::Int:
    os << a->intVal.toDecimalString();
    if (a->intType) {
      os << " : ";
      printTypeTo(os, a->intType);
    }
    return;
  case AttrExpr::Kind::Bool:
    os << (a->boolVal ? "true" : "false");
    return;
  case AttrExpr::Kind::String:
    os << "\"" << escapeString(a->str) << "\"";
    return;
  case AttrExpr::Kind::Array: {
    os << "[";
    for (size_t i = 0; i < a->elems.size(); ++i) {
      if (i)
        os << ", ";
      printAttrTo(os, a->elems[i]);
    }
    os << "]";
    return;
  }
  case AttrExpr::Kind::Dict:
    os << "{";
    printDictTo(os, a->entries);
    os << "}";
    return;
  case AttrExpr::Kind::SymbolRef: {
    for (size_t i = 0; i < a->symbolPath.size(); ++i) {
      if (i)
        os << "::";
      printSymbol(os, a->symbolPath[i]);
    }
    return;
  }
  case AttrExpr::Kind::Unit:
    os << "unit";
    return;
  case AttrExpr::Kind::Type:
    printTypeTo(os, a->typeVal);
    return;
  case AttrExpr::Kind::Alias:
    os << "#" << a->str;
    return;
  case AttrExpr::Kind::OpaqueDialect:
    os << "#" << a->str;
    return;
  }
}

void printOpTo(std::ostream &os, const Operation &op, unsigned indent);

void printBlockOps(std::ostream &os, const std::vector<Operation> &ops,
                   unsigned indent) {
  for (const Operation &inner : ops) {
    os << std::string(indent * 2, ' ');
    printOpTo(os, inner, indent);
    os << "\n";
  }
}

void printRegionTo(std::ostream &os, const Region &region, unsigned indent) {
  os << "{\n";
  for (const Block &b : region.blocks) {
    if (b.label) {
      os << std::string(indent * 2, ' ') << "^" << *b.label;
      if (!b.args.empty()) {
        os << "(";
        for (size_t i = 0; i < b.args.size(); ++i) {
          if (i)
            os << ", ";
          os << "%" << b.args[i].first << ": ";
          printTypeTo(os, b.args[i].second);
        }
        os << ")";
      }
      os << ":\n";
    }
    printBlockOps(os, b.ops, indent + 1);
  }
  os << std::string(indent * 2, ' ') << "}";
}

void printOpTo(std::ostream &os, const Operation &op, unsigned indent) {
  if (!op.results.empty()) {
    for (size_t i = 0; i < op.results.size(); ++i) {
      if (i)
        os << ", ";
      os << "%" << op.results[i].id;
      if (op.results[i].count)
        os << ":" << *op.results[i].count;
    }
    os << " = ";
  }
  os << "\"" << escapeString(op.name) << "\"(";
  for (size_t i = 0; i < op.operands.size(); ++i) {
    if (i)
      os << ", ";
    os << "%" << op.operands[i].id;
    if (op.operands[i].resultIdx)
      os << "#" << *op.operands[i].resultIdx;
  }
  os << ")";
  if (!op.successors.empty()) {
    os << "[";
    for (size_t i = 0; i < op.successors.size(); ++i) {
      if (i)
        os << ", ";
      os << "^" << op.successors[i];
    }
    os << "]";
  }
  if (op.properties) {
    os << " <{";
    printDictTo(os, *op.properties);
    os << "}>";
  }
  if (!op.regions.empty()) {
    os << " (";
    for (size_t i = 0; i < op.regions.size(); ++i) {
      if (i)
        os << ", ";
      printRegionTo(os, op.regions[i], indent + 1);
    }
    os << ")";
  }
  if (!op.attributes.empty()) {
    os << " {";
    printDictTo(os, op.attributes);
    os << "}";
  }
  os << " : ";
  printTypeTo(os, op.funcType);
}

} // namespace

std::string typeToString(const TypeRef &t) {
  std::ostringstream os;
  printTypeTo(os, t);
  return os.str();
}

std::string attrToString(const AttrRef &a) {
  std::ostringstream os;
  printAttrTo(os, a);
  return os.str();
}

std::string printOperation(const Operation &op, unsigned indent) {
  std::ostringstream os;
  printOpTo(os, op, indent);
  return os.str();
}

std::string printFile(const SourceFile &file) {
  std::ostringstream os;
  for (const TopItem &item : file.items) {
    if (const auto *op = std::get_if<Operation>(&item)) {
      printOpTo(os, *op, 0);
      os << "\n";
    } else if (const auto *ta = std::get_if<TypeAliasDef>(&item)) {
      os << "!" << ta->name << " = ";
      printTypeTo(os, ta->type);
      os << "\n";
    } else if (const auto *aa = std::get_if<AttrAliasDef>(&item)) {
      os << "#" << aa->name << " = ";
      printAttrTo(os, aa->value);
      os << "\n";
    }
  }
  return os.str();
}

} // namespace hwsim
