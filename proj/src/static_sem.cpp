//===- static_sem.cpp - MLIR static semantics --------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/static_sem.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hwsim {

namespace {

//===----------------------------------------------------------------------===//
// Alias resolution
//===----------------------------------------------------------------------===//

struct AliasResolver {
  std::map<std::string, TypeRef> &types;
  std::map<std::string, AttrRef> &attrs;
  std::set<std::string> visitingTypes, visitingAttrs;

  TypeRef resolveType(const TypeRef &t) {
    if (!t)
      return t;
    switch (t->kind) {
    case TypeExpr::Kind::Alias: {
      auto it = types.find(t->name);
      if (it == types.end())
        throw SimError(Err::UnresolvedAlias,
                       "type alias '!" + t->name + "' is not defined");
      if (!visitingTypes.insert(t->name).second)
        throw SimError(Err::AliasCycle,
                       "type alias '!" + t->name + "' is defined cyclically");
      TypeRef resolved = resolveType(it->second);
      visitingTypes.erase(t->name);
      it->second = resolved;
      return resolved;
    }
    case TypeExpr::Kind::Inout:
      return TypeExpr::makeInout(resolveType(t->elem));
    case TypeExpr::Kind::Array:
      return TypeExpr::makeArray(t->arraySize, resolveType(t->elem));
    case TypeExpr::Kind::Struct:
    case TypeExpr::Kind::Union: {
      std::vector<std::pair<std::string, TypeRef>> fields;
      for (const auto &[n, ft] : t->fields)
        fields.emplace_back(n, resolveType(ft));
      return t->kind == TypeExpr::Kind::Struct
                 ? TypeExpr::makeStruct(std::move(fields))
                 : TypeExpr::makeUnion(std::move(fields));
    }
    case TypeExpr::Kind::Func: {
      std::vector<TypeRef> ins, outs;
      for (const auto &x : t->funcIns)
        ins.push_back(resolveType(x));
      for (const auto &x : t->funcOuts)
        outs.push_back(resolveType(x));
      return TypeExpr::makeFunc(std::move(ins), std::move(outs));
    }
    case TypeExpr::Kind::Module: {
      std::vector<std::pair<std::string, TypeRef>> ins, outs;
      for (const auto &[n, ft] : t->fields)
        ins.emplace_back(n, resolveType(ft));
      for (const auto &[n, ft] : t->outputs)
        outs.emplace_back(n, resolveType(ft));
      return TypeExpr::makeModule(std::move(ins), std::move(outs));
    }
    default:
      return t;
    }
  }

  AttrRef resolveAttr(const AttrRef &a) {
    if (!a)
      return a;
    switch (a->kind) {
    case AttrExpr::Kind::Alias: {
      auto it = attrs.find(a->str);
      if (it == attrs.end())
        throw SimError(Err::UnresolvedAlias,
                       "attribute alias '#" + a->str + "' is not defined");
      if (!visitingAttrs.insert(a->str).second)
        throw SimError(Err::AliasCycle, "attribute alias '#" + a->str +
                                            "' is defined cyclically");
      AttrRef resolved = resolveAttr(it->second);
      visitingAttrs.erase(a->str);
      it->second = resolved;
      return resolved;
    }
    case AttrExpr::Kind::Int:
      if (a->intType)
        return AttrExpr::makeInt(a->intVal, resolveType(a->intType));
      return a;
    case AttrExpr::Kind::Array: {
      std::vector<AttrRef> elems;
      for (const auto &e : a->elems)
        elems.push_back(resolveAttr(e));
      return AttrExpr::makeArray(std::move(elems));
    }
    case AttrExpr::Kind::Dict: {
      DictAttr entries;
      for (const auto &[k, v] : a->entries)
        entries.emplace_back(k, resolveAttr(v));
      return AttrExpr::makeDict(std::move(entries));
    }
    case AttrExpr::Kind::Type:
      return AttrExpr::makeType(resolveType(a->typeVal));
    default:
      return a;
    }
  }
};

void checkWidths(const TypeRef &t, SourceLoc loc) {
  if (!t)
    return;
  switch (t->kind) {
  case TypeExpr::Kind::Int:
    if (t->intWidth < 1 || t->intWidth > 65536)
      throw SimError(Err::WidthCap,
                     "integer width " + std::to_string(t->intWidth) +
                         " outside the supported range [1, 65536]",
                     loc);
    return;
  case TypeExpr::Kind::Inout:
  case TypeExpr::Kind::Array:
    checkWidths(t->elem, loc);
    return;
  case TypeExpr::Kind::Struct:
  case TypeExpr::Kind::Union:
    for (const auto &[n, ft] : t->fields)
      checkWidths(ft, loc);
    return;
  case TypeExpr::Kind::Module:
    for (const auto &[n, ft] : t->fields)
      checkWidths(ft, loc);
    for (const auto &[n, ft] : t->outputs)
      checkWidths(ft, loc);
    return;
  case TypeExpr::Kind::Func:
    for (const auto &x : t->funcIns)
      checkWidths(x, loc);
    for (const auto &x : t->funcOuts)
      checkWidths(x, loc);
    return;
  case TypeExpr::Kind::FirMem:
    if (t->memWidth < 1 || t->memWidth > 65536)
      throw SimError(Err::WidthCap, "memory width outside [1, 65536]", loc);
    return;
  default:
    return;
  }
}

//===----------------------------------------------------------------------===//
// Normalization
//===----------------------------------------------------------------------===//

struct Normalizer {
  AliasResolver &aliases;
  uint32_t nextSeq = 0;
  std::unordered_set<std::string> usedIds;
  std::vector<std::unordered_map<std::string, std::string>> scopes;

  std::string freshen(const std::string &id) {
    std::string candidate = id;
    unsigned n = 0;
    while (!usedIds.insert(candidate).second)
      candidate = id + "_" + std::to_string(++n);
    scopes.back()[id] = candidate;
    return candidate;
  }

  std::string lookup(const std::string &id) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto found = it->find(id);
      if (found != it->end())
        return found->second;
    }
    return id; // undefined use; reported when evaluated
  }

  CanonOp normalize(const Operation &op) {
    CanonOp c;
    c.name = op.name;
    c.seq = nextSeq++;
    c.loc = op.loc;

    // Merge properties into the attribute dictionary.
    if (op.properties) {
      for (const auto &[k, v] : *op.properties) {
        if (dictGet(op.attributes, k))
          throw SimError(Err::DuplicateKey,
                         "attribute '" + k +
                             "' appears in both properties and attributes",
                         op.loc);
        c.attrs.emplace_back(k, aliases.resolveAttr(v));
      }
    }
    for (const auto &[k, v] : op.attributes)
      c.attrs.emplace_back(k, aliases.resolveAttr(v));

    // Distribute the function type.
    if (!op.funcType || op.funcType->kind != TypeExpr::Kind::Func)
      throw SimError(Err::MalformedAttribute, "operation lacks a function type",
                     op.loc);
    for (const auto &t : op.funcType->funcIns) {
      TypeRef r = aliases.resolveType(t);
      checkWidths(r, op.loc);
      c.operandTypes.push_back(std::move(r));
    }
    for (const auto &t : op.funcType->funcOuts) {
      TypeRef r = aliases.resolveType(t);
      checkWidths(r, op.loc);
      c.resultTypes.push_back(std::move(r));
    }
    for (const auto &[k, v] : c.attrs)
      if (v->kind == AttrExpr::Kind::Type)
        checkWidths(v->typeVal, op.loc);

    if (op.operands.size() != c.operandTypes.size())
      throw SimError(Err::ArityMismatch,
                     "operation '" + op.name + "' has " +
                         std::to_string(op.operands.size()) +
                         " operands but its type lists " +
                         std::to_string(c.operandTypes.size()),
                     op.loc);

    uint32_t declared = 0;
    for (const OpResult &r : op.results)
      declared += r.count.value_or(1);
    if (declared != c.resultTypes.size())
      throw SimError(Err::ArityMismatch,
                     "operation '" + op.name + "' declares " +
                         std::to_string(declared) +
                         " results but its type lists " +
                         std::to_string(c.resultTypes.size()),
                     op.loc);

    // Operand uses resolve against enclosing scopes.
    for (const ValueUse &u : op.operands) {
      std::string id = lookup(u.id);
      if (u.resultIdx)
        id += "#" + std::to_string(*u.resultIdx);
      c.operands.push_back(std::move(id));
    }

    // Result ids: rename to unique names and expand groups. Ids of ops in a
    // block are pre-assigned before the block's uses are resolved (graph
    // regions allow use-before-def), so reuse the mapping when present.
    for (const OpResult &r : op.results) {
      std::string base;
      auto preassigned = scopes.back().find(r.id);
      if (preassigned != scopes.back().end())
        base = preassigned->second;
      else
        base = freshen(r.id);
      if (r.count) {
        for (uint32_t i = 0; i < *r.count; ++i)
          c.resultIds.push_back(base + "#" + std::to_string(i));
      } else {
        c.resultIds.push_back(base);
      }
    }

    for (const Region &region : op.regions) {
      CanonRegion cr;
      for (const Block &b : region.blocks) {
        scopes.emplace_back();
        CanonBlock cb;
        cb.label = b.label.value_or("");
        for (const auto &[argId, argTy] : b.args) {
          TypeRef r = aliases.resolveType(argTy);
          checkWidths(r, op.loc);
          cb.args.emplace_back(freshen(argId), std::move(r));
        }
        // Graph regions allow use-before-def: pre-assign result names of
        // every op in the block before resolving any uses.
        for (const Operation &inner : b.ops)
          for (const OpResult &r : inner.results)
            if (!scopes.back().count(r.id))
              freshen(r.id);
        for (const Operation &inner : b.ops)
          cb.ops.push_back(normalize(inner));
        cr.blocks.push_back(std::move(cb));
        scopes.pop_back();
      }
      c.regions.push_back(std::move(cr));
    }
    return c;
  }
};

void collectSymbols(const CanonOp &op, MlirState &state) {
  if (const AttrRef *sym = op.attr("sym_name")) {
    if ((*sym)->kind != AttrExpr::Kind::String)
      throw SimError(Err::MalformedAttribute,
                     "sym_name must be a string attribute", op.loc);
    const std::string &name = (*sym)->str;
    if (!state.table.emplace(name, op).second)
      throw SimError(Err::DuplicateSymbol,
                     "symbol '" + name + "' is defined more than once",
                     op.loc);
    return; // do not descend into a symboled operation
  }
  for (const CanonRegion &r : op.regions)
    for (const CanonBlock &b : r.blocks)
      for (const CanonOp &inner : b.ops)
        collectSymbols(inner, state);
}

} // namespace

//===----------------------------------------------------------------------===//
// Canonical-op structural equality
//===----------------------------------------------------------------------===//

bool canonOpEquals(const CanonOp &a, const CanonOp &b) {
  if (a.name != b.name || a.operands != b.operands ||
      a.resultIds != b.resultIds)
    return false;
  if (!dictEquals(a.attrs, b.attrs))
    return false;
  auto typesEq = [](const std::vector<TypeRef> &x,
                    const std::vector<TypeRef> &y) {
    if (x.size() != y.size())
      return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (!typeEquals(x[i], y[i]))
        return false;
    return true;
  };
  if (!typesEq(a.operandTypes, b.operandTypes) ||
      !typesEq(a.resultTypes, b.resultTypes))
    return false;
  if (a.regions.size() != b.regions.size())
    return false;
  for (size_t i = 0; i < a.regions.size(); ++i) {
    const auto &ra = a.regions[i], &rb = b.regions[i];
    if (ra.blocks.size() != rb.blocks.size())
      return false;
    for (size_t j = 0; j < ra.blocks.size(); ++j) {
      const auto &ba = ra.blocks[j], &bb = rb.blocks[j];
      if (ba.label != bb.label || ba.args.size() != bb.args.size() ||
          ba.ops.size() != bb.ops.size())
        return false;
      for (size_t k = 0; k < ba.args.size(); ++k)
        if (ba.args[k].first != bb.args[k].first ||
            !typeEquals(ba.args[k].second, bb.args[k].second))
          return false;
      for (size_t k = 0; k < ba.ops.size(); ++k)
        if (!canonOpEquals(ba.ops[k], bb.ops[k]))
          return false;
    }
  }
  return true;
}

//===----------------------------------------------------------------------===//
// Preprocessing
//===----------------------------------------------------------------------===//

MlirState preprocess(const SourceFile &file) {
  MlirState state;

  // Phase 1: assign aliases.
  for (const TopItem &item : file.items) {
    if (const auto *ta = std::get_if<TypeAliasDef>(&item)) {
      if (!state.types.emplace(ta->name, ta->type).second)
        throw SimError(Err::DuplicateAlias,
                       "type alias '!" + ta->name + "' defined twice");
    } else if (const auto *aa = std::get_if<AttrAliasDef>(&item)) {
      if (!state.attrs.emplace(aa->name, aa->value).second)
        throw SimError(Err::DuplicateAlias,
                       "attribute alias '#" + aa->name + "' defined twice");
    }
  }
  AliasResolver resolver{state.types, state.attrs, {}, {}};
  for (auto &[name, t] : state.types)
    t = resolver.resolveType(t);
  for (auto &[name, a] : state.attrs)
    a = resolver.resolveAttr(a);

  // Phase 2: normalize operations. Each top-level operation is one id scope.
  std::vector<CanonOp> canonical;
  uint32_t seq = 0;
  for (const TopItem &item : file.items) {
    if (const auto *op = std::get_if<Operation>(&item)) {
      Normalizer norm{resolver, seq, {}, {}};
      norm.scopes.emplace_back();
      canonical.push_back(norm.normalize(*op));
      seq = norm.nextSeq;
    }
  }

  // Phase 3: construct the symbol table (symbols at any nesting depth
  // reachable without entering another symboled op); unsymboled top-level
  // operations are handed to the CIRCT layer as pending commands.
  for (CanonOp &op : canonical) {
    collectSymbols(op, state);
    if (!op.attr("sym_name"))
      state.pendingCommands.push_back(op);
  }

  state.phase = Phase::Simulation;
  return state;
}

const TypeRef &MlirState::rta(const std::string &alias) const {
  auto it = types.find(alias);
  if (it == types.end())
    throw SimError(Err::UnknownAlias,
                   "type alias '!" + alias + "' is not defined");
  return it->second;
}

const AttrRef &MlirState::raa(const std::string &alias) const {
  auto it = attrs.find(alias);
  if (it == attrs.end())
    throw SimError(Err::UnknownAlias,
                   "attribute alias '#" + alias + "' is not defined");
  return it->second;
}

const CanonOp &MlirState::rop(const std::string &symbol) const {
  auto it = table.find(symbol);
  if (it == table.end())
    throw SimError(Err::UnknownSymbol,
                   "no operation registered under symbol '" + symbol + "'");
  return it->second;
}

} // namespace hwsim
