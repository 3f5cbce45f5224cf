//===- parser_custom.cpp - Custom operation forms ---------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Pretty per-op syntax for the supported hw/comb/seq/sv operations. Every
// form lowers directly into the generic Operation shape, so everything after
// the parser (printing, preprocessing, evaluation) sees one representation.
//
//===----------------------------------------------------------------------===//

#include "parser_impl.hpp"

#include <algorithm>

namespace hwsim {

namespace {

AttrRef typedInt(IntLit v, TypeRef t) {
  return AttrExpr::makeInt(std::move(v), std::move(t));
}

AttrRef symbol(std::string s) {
  return AttrExpr::makeSymbolRef({std::move(s)});
}

TypeRef funcOf(std::vector<TypeRef> ins, std::vector<TypeRef> outs) {
  return TypeExpr::makeFunc(std::move(ins), std::move(outs));
}

uint32_t clog2(uint64_t n) {
  uint32_t w = 0;
  while ((uint64_t(1) << w) < n)
    ++w;
  return w == 0 ? 1 : w;
}

bool isVariadicComb(std::string_view op) {
  return op == "add" || op == "mul" || op == "and" || op == "or" ||
         op == "xor" || op == "concat";
}

bool isBinaryComb(std::string_view op) {
  return op == "sub" || op == "divs" || op == "divu" || op == "mods" ||
         op == "modu" || op == "shl" || op == "shrs" || op == "shru";
}

} // namespace

Region Parser::parseBracedBody() {
  expect(Tok::LBrace, "'{'");
  Region region;
  Block entry;
  while (!peekIs(Tok::RBrace))
    entry.ops.push_back(parseOperation());
  if (entry.ops.empty())
    error("at least one operation in body");
  region.blocks.push_back(std::move(entry));
  expect(Tok::RBrace, "'}'");
  return region;
}

Operation Parser::parseCustomOp(std::vector<OpResult> results, Token nameTok) {
  const std::string &n = nameTok.text;
  if (n.rfind("hw.", 0) == 0)
    return customHw(std::move(results), nameTok);
  if (n.rfind("comb.", 0) == 0)
    return customComb(std::move(results), nameTok);
  if (n.rfind("seq.", 0) == 0)
    return customSeq(std::move(results), nameTok);
  if (n.rfind("sv.", 0) == 0)
    return customSv(std::move(results), nameTok);
  throw SimError(Err::Parse, "unknown operation '" + n + "'", nameTok.loc);
}

//===----------------------------------------------------------------------===//
// hw dialect
//===----------------------------------------------------------------------===//

Operation Parser::customHw(std::vector<OpResult> results, const Token &name) {
  Operation op;
  op.results = std::move(results);
  op.name = name.text;
  op.loc = name.loc;
  std::string_view tail = std::string_view(name.text).substr(3);

  if (tail == "module") {
    Token sym = expect(Tok::AtId, "module symbol");
    expect(Tok::LParen, "'('");
    std::vector<std::pair<std::string, TypeRef>> ins, outs;
    std::vector<std::pair<std::string, TypeRef>> blockArgs;
    if (!consumeIf(Tok::RParen)) {
      do {
        if (peekKeyword("in")) {
          lex_.next();
          Token id = expect(Tok::ValueId, "input port value");
          expect(Tok::Colon, "':'");
          TypeRef ty = parseType();
          ins.emplace_back(id.text, ty);
          blockArgs.emplace_back(id.text, ty);
        } else if (peekKeyword("out")) {
          lex_.next();
          Token pname = expect(Tok::BareId, "output port name");
          expect(Tok::Colon, "':'");
          outs.emplace_back(pname.text, parseType());
        } else {
          error("'in' or 'out' port");
        }
      } while (consumeIf(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    Region body = parseBracedBody();
    body.blocks.front().label = "bb0";
    body.blocks.front().args = std::move(blockArgs);
    op.regions.push_back(std::move(body));
    op.attributes.emplace_back("sym_name", AttrExpr::makeString(sym.text));
    op.attributes.emplace_back(
        "module_type",
        AttrExpr::makeType(TypeExpr::makeModule(std::move(ins), std::move(outs))));
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "output") {
    std::vector<TypeRef> types;
    if (peekIs(Tok::ValueId)) {
      do {
        op.operands.push_back(parseValueUse());
      } while (consumeIf(Tok::Comma));
      expect(Tok::Colon, "':'");
      do {
        types.push_back(parseType());
      } while (consumeIf(Tok::Comma));
    }
    op.funcType = funcOf(std::move(types), {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "constant") {
    IntLit v = parseIntLit();
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.attributes.emplace_back("value", typedInt(std::move(v), ty));
    op.funcType = funcOf({}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "instance") {
    Token iname = expect(Tok::String, "instance name");
    Token mod = expect(Tok::AtId, "module symbol");
    expect(Tok::LParen, "'('");
    std::vector<TypeRef> inTypes;
    std::vector<AttrRef> argNames;
    if (!consumeIf(Tok::RParen)) {
      do {
        Token pname = expect(Tok::BareId, "port name");
        expect(Tok::Colon, "':'");
        op.operands.push_back(parseValueUse());
        expect(Tok::Colon, "':'");
        inTypes.push_back(parseType());
        argNames.push_back(AttrExpr::makeString(pname.text));
      } while (consumeIf(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Arrow, "'->'");
    expect(Tok::LParen, "'('");
    std::vector<TypeRef> outTypes;
    std::vector<AttrRef> resultNames;
    if (!consumeIf(Tok::RParen)) {
      do {
        Token pname = expect(Tok::BareId, "result port name");
        expect(Tok::Colon, "':'");
        outTypes.push_back(parseType());
        resultNames.push_back(AttrExpr::makeString(pname.text));
      } while (consumeIf(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    op.attributes.emplace_back("instanceName", AttrExpr::makeString(iname.text));
    op.attributes.emplace_back("moduleName", symbol(mod.text));
    op.attributes.emplace_back("argNames", AttrExpr::makeArray(argNames));
    op.attributes.emplace_back("resultNames", AttrExpr::makeArray(resultNames));
    op.funcType = funcOf(std::move(inTypes), std::move(outTypes));
    parseLocSuffix(op);
    return op;
  }

  if (tail == "bitcast") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    op.funcType = parseFuncType();
    parseLocSuffix(op);
    return op;
  }

  if (tail == "wire") {
    op.operands.push_back(parseValueUse());
    if (peekKeyword("sym")) {
      lex_.next();
      Token s = expect(Tok::AtId, "inner symbol");
      op.attributes.emplace_back("inner_sym", symbol(s.text));
    }
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({ty}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "aggregate_constant") {
    AttrRef value = parseAttrValue();
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.attributes.emplace_back("value", value);
    op.funcType = funcOf({}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "enum.constant") {
    Token field = expect(Tok::BareId, "enum member");
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.attributes.emplace_back("field", AttrExpr::makeString(field.text));
    op.funcType = funcOf({}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "enum.cmp") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Comma, "','");
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({ty, ty}, {TypeExpr::makeInt(1)});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "array_create") {
    do {
      op.operands.push_back(parseValueUse());
    } while (consumeIf(Tok::Comma));
    expect(Tok::Colon, "':'");
    TypeRef elem = parseType();
    std::vector<TypeRef> ins(op.operands.size(), elem);
    op.funcType =
        funcOf(std::move(ins), {TypeExpr::makeArray(op.operands.size(), elem)});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "array_get") {
    op.operands.push_back(parseValueUse());
    expect(Tok::LBracket, "'['");
    op.operands.push_back(parseValueUse());
    expect(Tok::RBracket, "']'");
    expect(Tok::Colon, "':'");
    TypeRef arrTy = parseType();
    expect(Tok::Comma, "','");
    TypeRef idxTy = parseType();
    if (arrTy->kind != TypeExpr::Kind::Array)
      error("array type");
    op.funcType = funcOf({arrTy, idxTy}, {arrTy->elem});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "array_slice") {
    op.operands.push_back(parseValueUse());
    expect(Tok::LBracket, "'['");
    op.operands.push_back(parseValueUse());
    expect(Tok::RBracket, "']'");
    expect(Tok::Colon, "':'");
    TypeRef fn = parseFuncType();
    if (fn->funcIns.size() != 1 || fn->funcOuts.size() != 1 ||
        fn->funcIns[0]->kind != TypeExpr::Kind::Array)
      error("(array) -> array function type");
    TypeRef idxTy = TypeExpr::makeInt(clog2(fn->funcIns[0]->arraySize));
    op.funcType = funcOf({fn->funcIns[0], idxTy}, {fn->funcOuts[0]});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "array_concat") {
    do {
      op.operands.push_back(parseValueUse());
    } while (consumeIf(Tok::Comma));
    expect(Tok::Colon, "':'");
    std::vector<TypeRef> ins;
    uint64_t total = 0;
    TypeRef elem;
    do {
      TypeRef t = parseType();
      if (t->kind != TypeExpr::Kind::Array)
        error("array type");
      total += t->arraySize;
      elem = t->elem;
      ins.push_back(std::move(t));
    } while (consumeIf(Tok::Comma));
    op.funcType = funcOf(std::move(ins), {TypeExpr::makeArray(total, elem)});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "struct_create") {
    expect(Tok::LParen, "'('");
    if (!consumeIf(Tok::RParen)) {
      do {
        op.operands.push_back(parseValueUse());
      } while (consumeIf(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    if (ty->kind != TypeExpr::Kind::Struct)
      error("struct type");
    std::vector<TypeRef> ins;
    for (auto &[fname, fty] : ty->fields)
      ins.push_back(fty);
    op.funcType = funcOf(std::move(ins), {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "struct_extract" || tail == "union_extract") {
    op.operands.push_back(parseValueUse());
    expect(Tok::LBracket, "'['");
    Token field = expect(Tok::String, "field name");
    expect(Tok::RBracket, "']'");
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    if (ty->kind != TypeExpr::Kind::Struct && ty->kind != TypeExpr::Kind::Union)
      error("struct or union type");
    TypeRef fieldTy;
    for (auto &[fname, fty] : ty->fields)
      if (fname == field.text)
        fieldTy = fty;
    if (!fieldTy)
      throw SimError(Err::Parse, "unknown field '" + field.text + "'",
                     field.loc);
    op.attributes.emplace_back("field", AttrExpr::makeString(field.text));
    op.funcType = funcOf({ty}, {fieldTy});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "struct_inject") {
    op.operands.push_back(parseValueUse());
    expect(Tok::LBracket, "'['");
    Token field = expect(Tok::String, "field name");
    expect(Tok::RBracket, "']'");
    expect(Tok::Comma, "','");
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    if (ty->kind != TypeExpr::Kind::Struct)
      error("struct type");
    TypeRef fieldTy;
    for (auto &[fname, fty] : ty->fields)
      if (fname == field.text)
        fieldTy = fty;
    if (!fieldTy)
      throw SimError(Err::Parse, "unknown field '" + field.text + "'",
                     field.loc);
    op.attributes.emplace_back("field", AttrExpr::makeString(field.text));
    op.funcType = funcOf({ty, fieldTy}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "struct_explode") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    if (ty->kind != TypeExpr::Kind::Struct)
      error("struct type");
    std::vector<TypeRef> outs;
    for (auto &[fname, fty] : ty->fields)
      outs.push_back(fty);
    op.funcType = funcOf({ty}, std::move(outs));
    parseLocSuffix(op);
    return op;
  }

  if (tail == "union_create") {
    Token field = expect(Tok::String, "field name");
    expect(Tok::Comma, "','");
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    if (ty->kind != TypeExpr::Kind::Union)
      error("union type");
    TypeRef fieldTy;
    for (auto &[fname, fty] : ty->fields)
      if (fname == field.text)
        fieldTy = fty;
    if (!fieldTy)
      throw SimError(Err::Parse, "unknown field '" + field.text + "'",
                     field.loc);
    op.attributes.emplace_back("field", AttrExpr::makeString(field.text));
    op.funcType = funcOf({fieldTy}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "hierpath") {
    Token sym = expect(Tok::AtId, "path symbol");
    expect(Tok::LBracket, "'['");
    std::vector<AttrRef> path;
    if (!consumeIf(Tok::RBracket)) {
      do {
        std::vector<std::string> components;
        components.push_back(expect(Tok::AtId, "path element").text);
        while (consumeIf(Tok::ColonColon))
          components.push_back(expect(Tok::AtId, "path element").text);
        path.push_back(AttrExpr::makeSymbolRef(std::move(components)));
      } while (consumeIf(Tok::Comma));
      expect(Tok::RBracket, "']'");
    }
    op.attributes.emplace_back("sym_name", AttrExpr::makeString(sym.text));
    op.attributes.emplace_back("namepath", AttrExpr::makeArray(std::move(path)));
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  throw SimError(Err::Parse, "unknown operation '" + name.text + "'", name.loc);
}

//===----------------------------------------------------------------------===//
// comb dialect
//===----------------------------------------------------------------------===//

Operation Parser::customComb(std::vector<OpResult> results, const Token &name) {
  Operation op;
  op.results = std::move(results);
  op.name = name.text;
  op.loc = name.loc;
  std::string_view tail = std::string_view(name.text).substr(5);

  if (tail == "icmp") {
    Token pred = expect(Tok::BareId, "comparison predicate");
    int idx = icmpPredicateIndex(pred.text);
    if (idx < 0)
      throw SimError(Err::Parse, "unknown predicate '" + pred.text + "'",
                     pred.loc);
    op.operands.push_back(parseValueUse());
    expect(Tok::Comma, "','");
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.attributes.emplace_back(
        "predicate", typedInt(IntLit::fromUint(idx), TypeExpr::makeInt(64)));
    op.funcType = funcOf({ty, ty}, {TypeExpr::makeInt(1)});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "extract") {
    op.operands.push_back(parseValueUse());
    expectKeyword("from");
    IntLit low = parseIntLit();
    expect(Tok::Colon, "':'");
    TypeRef fn = parseFuncType();
    if (fn->funcIns.size() != 1 || fn->funcOuts.size() != 1)
      error("(type) -> type function type");
    op.attributes.emplace_back(
        "lowBit", typedInt(std::move(low), TypeExpr::makeInt(32)));
    op.funcType = fn;
    parseLocSuffix(op);
    return op;
  }

  if (tail == "concat") {
    do {
      op.operands.push_back(parseValueUse());
    } while (consumeIf(Tok::Comma));
    expect(Tok::Colon, "':'");
    std::vector<TypeRef> ins;
    uint64_t total = 0;
    do {
      TypeRef t = parseType();
      if (t->kind == TypeExpr::Kind::Int)
        total += t->intWidth;
      ins.push_back(std::move(t));
    } while (consumeIf(Tok::Comma));
    op.funcType = funcOf(std::move(ins),
                         {TypeExpr::makeInt(static_cast<uint32_t>(total))});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "replicate") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    op.funcType = parseFuncType();
    if (op.funcType->funcIns.size() != 1 || op.funcType->funcOuts.size() != 1)
      error("(type) -> type function type");
    parseLocSuffix(op);
    return op;
  }

  if (tail == "parity") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({ty}, {TypeExpr::makeInt(1)});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "mux") {
    for (int i = 0; i < 3; ++i) {
      if (i)
        expect(Tok::Comma, "','");
      op.operands.push_back(parseValueUse());
    }
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({TypeExpr::makeInt(1), ty, ty}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "truth_table") {
    do {
      op.operands.push_back(parseValueUse());
    } while (consumeIf(Tok::Comma));
    expect(Tok::Arrow, "'->'");
    AttrRef table = parseAttrValue();
    if (table->kind != AttrExpr::Kind::Array)
      error("lookup table array");
    op.attributes.emplace_back("lookupTable", table);
    std::vector<TypeRef> ins(op.operands.size(), TypeExpr::makeInt(1));
    op.funcType = funcOf(std::move(ins), {TypeExpr::makeInt(1)});
    parseLocSuffix(op);
    return op;
  }

  if (isVariadicComb(tail) || isBinaryComb(tail)) {
    do {
      op.operands.push_back(parseValueUse());
    } while (consumeIf(Tok::Comma));
    if (isBinaryComb(tail) && op.operands.size() != 2)
      error("exactly two operands");
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    std::vector<TypeRef> ins(op.operands.size(), ty);
    op.funcType = funcOf(std::move(ins), {ty});
    parseLocSuffix(op);
    return op;
  }

  throw SimError(Err::Parse, "unknown operation '" + name.text + "'", name.loc);
}

//===----------------------------------------------------------------------===//
// seq dialect
//===----------------------------------------------------------------------===//

Operation Parser::customSeq(std::vector<OpResult> results, const Token &name) {
  Operation op;
  op.results = std::move(results);
  op.name = name.text;
  op.loc = name.loc;
  std::string_view tail = std::string_view(name.text).substr(4);

  if (tail == "firreg") {
    op.operands.push_back(parseValueUse()); // next
    expectKeyword("clock");
    op.operands.push_back(parseValueUse());
    std::optional<std::string> resetKind;
    ValueUse resetSig, resetVal;
    std::optional<IntLit> preset;
    while (peekIs(Tok::BareId)) {
      if (peekKeyword("reset")) {
        lex_.next();
        Token kind = expect(Tok::BareId, "'sync' or 'async'");
        if (kind.text != "sync" && kind.text != "async")
          error("'sync' or 'async'");
        resetKind = kind.text;
        resetSig = parseValueUse();
        expect(Tok::Comma, "','");
        resetVal = parseValueUse();
      } else if (peekKeyword("preset")) {
        lex_.next();
        preset = parseIntLit();
      } else if (peekKeyword("sym")) {
        lex_.next();
        Token s = expect(Tok::AtId, "inner symbol");
        op.attributes.emplace_back("inner_sym", symbol(s.text));
      } else {
        break;
      }
    }
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    std::vector<TypeRef> ins{ty, TypeExpr::makeClock()};
    if (resetKind) {
      op.operands.push_back(resetSig);
      op.operands.push_back(resetVal);
      ins.push_back(TypeExpr::makeInt(1));
      ins.push_back(ty);
      op.attributes.emplace_back("reset", AttrExpr::makeString(*resetKind));
    }
    if (preset)
      op.attributes.emplace_back("preset", typedInt(std::move(*preset), ty));
    op.funcType = funcOf(std::move(ins), {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "firmem") {
    if (peekKeyword("sym")) {
      lex_.next();
      Token s = expect(Tok::AtId, "inner symbol");
      op.attributes.emplace_back("inner_sym", symbol(s.text));
    }
    IntLit rl = parseIntLit();
    expect(Tok::Comma, "','");
    IntLit wl = parseIntLit();
    expect(Tok::Colon, "':'");
    expect(Tok::Less, "'<'");
    Token depth = expect(Tok::Integer, "memory depth");
    Token sep = expect(Tok::BareId, "'x'");
    uint32_t width = 0;
    if (sep.text == "x")
      width = static_cast<uint32_t>(
          std::stoul(expect(Tok::Integer, "memory width").text));
    else if (sep.text[0] == 'x')
      width = static_cast<uint32_t>(std::stoul(std::string(sep.text).substr(1)));
    else
      error("'x'");
    expect(Tok::Greater, "'>'");
    TypeRef memTy = TypeExpr::makeFirMem(std::stoull(depth.text), width);
    op.attributes.emplace_back("readLatency",
                               typedInt(std::move(rl), TypeExpr::makeInt(32)));
    op.attributes.emplace_back("writeLatency",
                               typedInt(std::move(wl), TypeExpr::makeInt(32)));
    op.funcType = funcOf({}, {memTy});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "firmem.read_port" || tail == "firmem.write_port" ||
      tail == "firmem.read_write_port") {
    op.operands.push_back(parseValueUse()); // memory
    expect(Tok::LBracket, "'['");
    op.operands.push_back(parseValueUse()); // address
    expect(Tok::RBracket, "']'");
    if (tail != "firmem.read_port") {
      expect(Tok::Equal, "'='");
      op.operands.push_back(parseValueUse()); // write data
      if (tail == "firmem.read_write_port") {
        expectKeyword("if");
        op.operands.push_back(parseValueUse()); // write mode
      }
    }
    expect(Tok::Comma, "','");
    expectKeyword("clock");
    op.operands.push_back(parseValueUse());
    bool hasEnable = false;
    if (peekKeyword("enable")) {
      lex_.next();
      op.operands.push_back(parseValueUse());
      hasEnable = true;
    }
    expect(Tok::Colon, "':'");
    expect(Tok::Less, "'<'");
    Token depth = expect(Tok::Integer, "memory depth");
    Token sep = expect(Tok::BareId, "'x'");
    uint32_t width = 0;
    if (sep.text == "x")
      width = static_cast<uint32_t>(
          std::stoul(expect(Tok::Integer, "memory width").text));
    else if (sep.text[0] == 'x')
      width = static_cast<uint32_t>(std::stoul(std::string(sep.text).substr(1)));
    else
      error("'x'");
    expect(Tok::Greater, "'>'");
    uint64_t d = std::stoull(depth.text);
    TypeRef memTy = TypeExpr::makeFirMem(d, width);
    TypeRef addrTy = TypeExpr::makeInt(clog2(d));
    TypeRef dataTy = TypeExpr::makeInt(width);
    std::vector<TypeRef> ins{memTy, addrTy};
    if (tail == "firmem.write_port")
      ins.push_back(dataTy);
    if (tail == "firmem.read_write_port") {
      ins.push_back(dataTy);
      ins.push_back(TypeExpr::makeInt(1));
    }
    ins.push_back(TypeExpr::makeClock());
    if (hasEnable) {
      ins.push_back(TypeExpr::makeInt(1));
      op.attributes.emplace_back("hasEnable", AttrExpr::makeUnit());
    }
    std::vector<TypeRef> outs;
    if (tail != "firmem.write_port")
      outs.push_back(dataTy);
    op.funcType = funcOf(std::move(ins), std::move(outs));
    parseLocSuffix(op);
    return op;
  }

  throw SimError(Err::Parse, "unknown operation '" + name.text + "'", name.loc);
}

//===----------------------------------------------------------------------===//
// sv dialect
//===----------------------------------------------------------------------===//

Operation Parser::customSv(std::vector<OpResult> results, const Token &name) {
  Operation op;
  op.results = std::move(results);
  op.name = name.text;
  op.loc = name.loc;
  std::string_view tail = std::string_view(name.text).substr(3);

  auto parseOptionalLabel = [&] {
    if (peekKeyword("label")) {
      lex_.next();
      Token s = expect(Tok::String, "label string");
      op.attributes.emplace_back("label", AttrExpr::makeString(s.text));
    }
  };

  if (tail == "reg" || tail == "logic" || tail == "wire") {
    if (peekKeyword("sym")) {
      lex_.next();
      Token s = expect(Tok::AtId, "inner symbol");
      op.attributes.emplace_back("inner_sym", symbol(s.text));
    }
    if (peekKeyword("name")) {
      lex_.next();
      Token s = expect(Tok::String, "name string");
      op.attributes.emplace_back("name", AttrExpr::makeString(s.text));
    }
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "read_inout") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    if (ty->kind != TypeExpr::Kind::Inout)
      error("!hw.inout type");
    op.funcType = funcOf({ty}, {ty->elem});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "array_index_inout") {
    op.operands.push_back(parseValueUse());
    expect(Tok::LBracket, "'['");
    op.operands.push_back(parseValueUse());
    expect(Tok::RBracket, "']'");
    expect(Tok::Colon, "':'");
    TypeRef refTy = parseType();
    expect(Tok::Comma, "','");
    TypeRef idxTy = parseType();
    if (refTy->kind != TypeExpr::Kind::Inout ||
        refTy->elem->kind != TypeExpr::Kind::Array)
      error("!hw.inout<!hw.array<...>> type");
    op.funcType =
        funcOf({refTy, idxTy}, {TypeExpr::makeInout(refTy->elem->elem)});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "assign" || tail == "bpassign" || tail == "passign" ||
      tail == "force") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Comma, "','");
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({TypeExpr::makeInout(ty), ty}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "release") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({TypeExpr::makeInout(ty)}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "initial" || tail == "alwayscomb") {
    op.regions.push_back(parseBracedBody());
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "always") {
    std::vector<AttrRef> events;
    std::vector<TypeRef> ins;
    while (peekKeyword("posedge") || peekKeyword("negedge") ||
           peekKeyword("edge")) {
      Token ev = lex_.next();
      events.push_back(AttrExpr::makeString(ev.text));
      op.operands.push_back(parseValueUse());
      ins.push_back(TypeExpr::makeInt(1));
      if (!consumeIf(Tok::Comma))
        break;
    }
    if (!events.empty())
      op.attributes.emplace_back("events", AttrExpr::makeArray(std::move(events)));
    op.regions.push_back(parseBracedBody());
    op.funcType = funcOf(std::move(ins), {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "alwaysff") {
    expect(Tok::LParen, "'('");
    Token edge = expect(Tok::BareId, "clock edge");
    if (edge.text != "posedge" && edge.text != "negedge")
      error("'posedge' or 'negedge'");
    op.operands.push_back(parseValueUse());
    expect(Tok::RParen, "')'");
    op.attributes.emplace_back("clockEdge", AttrExpr::makeString(edge.text));
    op.regions.push_back(parseBracedBody());
    std::vector<TypeRef> ins{TypeExpr::makeInt(1)};
    if (peekKeyword("syncreset") || peekKeyword("asyncreset")) {
      Token style = lex_.next();
      Token redge = expect(Tok::BareId, "reset edge");
      if (redge.text != "posedge" && redge.text != "negedge")
        error("'posedge' or 'negedge'");
      op.operands.push_back(parseValueUse());
      ins.push_back(TypeExpr::makeInt(1));
      op.attributes.emplace_back(
          "resetStyle", AttrExpr::makeString(
                            style.text == "syncreset" ? "sync" : "async"));
      op.attributes.emplace_back("resetEdge", AttrExpr::makeString(redge.text));
      op.regions.push_back(parseBracedBody());
    }
    op.funcType = funcOf(std::move(ins), {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "if") {
    op.operands.push_back(parseValueUse());
    op.regions.push_back(parseBracedBody());
    if (peekKeyword("else")) {
      lex_.next();
      op.regions.push_back(parseBracedBody());
    }
    op.funcType = funcOf({TypeExpr::makeInt(1)}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "case") {
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    std::vector<AttrRef> labels;
    bool hasDefault = false;
    while (peekKeyword("case") || peekKeyword("default")) {
      if (peekKeyword("case")) {
        lex_.next();
        IntLit v = parseIntLit();
        labels.push_back(typedInt(std::move(v), ty));
        op.regions.push_back(parseBracedBody());
      } else {
        lex_.next();
        hasDefault = true;
        op.regions.push_back(parseBracedBody());
        break;
      }
    }
    op.attributes.emplace_back("caseValues",
                               AttrExpr::makeArray(std::move(labels)));
    if (hasDefault)
      op.attributes.emplace_back("hasDefault", AttrExpr::makeUnit());
    op.funcType = funcOf({ty}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "for") {
    Token iv = expect(Tok::ValueId, "induction variable");
    expect(Tok::Equal, "'='");
    op.operands.push_back(parseValueUse());
    expectKeyword("to");
    op.operands.push_back(parseValueUse());
    expectKeyword("step");
    op.operands.push_back(parseValueUse());
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    Region body = parseBracedBody();
    body.blocks.front().label = "bb0";
    body.blocks.front().args = {{iv.text, ty}};
    op.regions.push_back(std::move(body));
    op.funcType = funcOf({ty, ty, ty}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "constantX" || tail == "constantZ") {
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.funcType = funcOf({}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "assert" || tail == "assume" || tail == "cover") {
    op.operands.push_back(parseValueUse());
    parseOptionalLabel();
    op.funcType = funcOf({TypeExpr::makeInt(1)}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "error" || tail == "warning" || tail == "info" ||
      tail == "fatal") {
    if (peekIs(Tok::String)) {
      Token msg = lex_.next();
      op.attributes.emplace_back("message", AttrExpr::makeString(msg.text));
    }
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "finish" || tail == "stop" || tail == "exit") {
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "fwrite") {
    op.operands.push_back(parseValueUse()); // fd
    expect(Tok::Comma, "','");
    Token fmt = expect(Tok::String, "format string");
    op.attributes.emplace_back("format", AttrExpr::makeString(fmt.text));
    std::vector<TypeRef> ins{TypeExpr::makeInt(32)};
    if (consumeIf(Tok::LParen)) {
      if (!consumeIf(Tok::RParen)) {
        do {
          op.operands.push_back(parseValueUse());
        } while (consumeIf(Tok::Comma));
        expect(Tok::RParen, "')'");
      }
      expect(Tok::Colon, "':'");
      expect(Tok::LParen, "'('");
      if (!consumeIf(Tok::RParen)) {
        do {
          ins.push_back(parseType());
        } while (consumeIf(Tok::Comma));
        expect(Tok::RParen, "')'");
      }
    }
    op.funcType = funcOf(std::move(ins), {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "macro.decl") {
    Token sym = expect(Tok::AtId, "macro name");
    op.attributes.emplace_back("name", symbol(sym.text));
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "macro.def") {
    Token sym = expect(Tok::AtId, "macro name");
    op.attributes.emplace_back("name", symbol(sym.text));
    if (peekIs(Tok::String)) {
      Token body = lex_.next();
      op.attributes.emplace_back("value", AttrExpr::makeString(body.text));
    }
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "macro.ref" || tail == "macro.ref.se") {
    Token sym = expect(Tok::AtId, "macro name");
    expect(Tok::Colon, "':'");
    TypeRef ty = parseType();
    op.attributes.emplace_back("macro", symbol(sym.text));
    op.funcType = funcOf({}, {ty});
    parseLocSuffix(op);
    return op;
  }

  if (tail == "ifdef" || tail == "ifdef.procedural") {
    Token sym = expect(Tok::AtId, "macro name");
    op.attributes.emplace_back("macro", symbol(sym.text));
    op.regions.push_back(parseBracedBody());
    if (peekKeyword("else")) {
      lex_.next();
      op.regions.push_back(parseBracedBody());
    }
    op.funcType = funcOf({}, {});
    parseLocSuffix(op);
    return op;
  }

  throw SimError(Err::Parse, "unknown operation '" + name.text + "'", name.loc);
}

} // namespace hwsim
