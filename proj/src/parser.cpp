//===- parser.cpp - Generic MLIR grammar ------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "hwsim/parser.hpp"

#include "parser_impl.hpp"

namespace hwsim {

SourceFile parseSource(std::string_view text) {
  Parser p(text);
  return p.parseFile();
}

TypeRef parseTypeString(std::string_view text) {
  Parser p(text);
  return p.parseType();
}

AttrRef parseAttrString(std::string_view text) {
  Parser p(text);
  return p.parseAttrValue();
}

//===----------------------------------------------------------------------===//
// Utilities
//===----------------------------------------------------------------------===//

void Parser::error(const std::string &expected) {
  const Token &t = lex_.peek();
  std::string got = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
  throw SimError(Err::Parse, "expected " + expected + ", got " + got, t.loc);
}

Token Parser::expect(Tok k, std::string_view what) {
  if (!peekIs(k))
    error(std::string(what));
  return lex_.next();
}

bool Parser::consumeIf(Tok k) {
  if (!peekIs(k))
    return false;
  lex_.next();
  return true;
}

void Parser::expectKeyword(std::string_view kw) {
  if (!peekKeyword(kw))
    error("'" + std::string(kw) + "'");
  lex_.next();
}

//===----------------------------------------------------------------------===//
// Top level
//===----------------------------------------------------------------------===//

SourceFile Parser::parseFile() {
  SourceFile file;
  while (!peekIs(Tok::Eof)) {
    if (peekIs(Tok::BangId) && peekIs(Tok::Equal, 1)) {
      Token name = lex_.next();
      lex_.next(); // =
      file.items.emplace_back(TypeAliasDef{name.text, parseType()});
      continue;
    }
    if (peekIs(Tok::HashId) && peekIs(Tok::Equal, 1)) {
      Token name = lex_.next();
      lex_.next(); // =
      file.items.emplace_back(AttrAliasDef{name.text, parseAttrValue()});
      continue;
    }
    file.items.emplace_back(parseOperation());
  }
  return file;
}

//===----------------------------------------------------------------------===//
// Operations
//===----------------------------------------------------------------------===//

Operation Parser::parseOperation() {
  std::vector<OpResult> results;
  if (peekIs(Tok::ValueId)) {
    do {
      Token id = expect(Tok::ValueId, "result id");
      OpResult r{id.text, std::nullopt};
      if (consumeIf(Tok::Colon)) {
        Token n = expect(Tok::Integer, "result count");
        r.count = static_cast<uint32_t>(std::stoul(n.text));
      }
      results.push_back(std::move(r));
    } while (consumeIf(Tok::Comma));
    expect(Tok::Equal, "'='");
  }
  if (peekIs(Tok::String)) {
    Token name = lex_.next();
    return parseGenericOpTail(std::move(results), name);
  }
  if (peekIs(Tok::BareId)) {
    Token name = lex_.next();
    return parseCustomOp(std::move(results), name);
  }
  error("operation name");
}

Operation Parser::parseGenericOpTail(std::vector<OpResult> results,
                                     Token nameTok) {
  Operation op;
  op.results = std::move(results);
  op.name = nameTok.text;
  op.loc = nameTok.loc;
  if (op.name.empty())
    throw SimError(Err::Parse, "operation name must not be empty",
                   nameTok.loc);

  expect(Tok::LParen, "'('");
  op.operands = parseValueUseList();

  if (consumeIf(Tok::LBracket)) {
    do {
      Token s = expect(Tok::CaretId, "successor label");
      op.successors.push_back(s.text);
    } while (consumeIf(Tok::Comma));
    expect(Tok::RBracket, "']'");
  }

  if (peekIs(Tok::Less)) {
    lex_.next();
    expect(Tok::LBrace, "'{' of properties");
    op.properties = parseDictBody(Tok::RBrace);
    expect(Tok::RBrace, "'}'");
    expect(Tok::Greater, "'>'");
  }

  if (peekIs(Tok::LParen)) {
    lex_.next();
    do {
      op.regions.push_back(parseRegion());
    } while (consumeIf(Tok::Comma));
    expect(Tok::RParen, "')'");
  }

  if (peekIs(Tok::LBrace)) {
    lex_.next();
    op.attributes = parseDictBody(Tok::RBrace);
    expect(Tok::RBrace, "'}'");
  }

  expect(Tok::Colon, "':' before function type");
  op.funcType = parseFuncType();
  parseLocSuffix(op);
  return op;
}

void Parser::parseLocSuffix(Operation &op) {
  if (peekKeyword("loc") && peekIs(Tok::LParen, 1)) {
    lex_.next();
    lex_.next();
    op.locText = captureBalanced(Tok::LParen, Tok::RParen);
  }
}

std::vector<ValueUse> Parser::parseValueUseList() {
  std::vector<ValueUse> uses;
  if (consumeIf(Tok::RParen))
    return uses;
  do {
    uses.push_back(parseValueUse());
  } while (consumeIf(Tok::Comma));
  expect(Tok::RParen, "')'");
  return uses;
}

ValueUse Parser::parseValueUse() {
  Token id = expect(Tok::ValueId, "value use");
  ValueUse u{id.text, std::nullopt};
  if (peekIs(Tok::Hash)) {
    lex_.next();
    Token n = expect(Tok::Integer, "result index");
    u.resultIdx = static_cast<uint32_t>(std::stoul(n.text));
  }
  return u;
}

//===----------------------------------------------------------------------===//
// Regions and blocks
//===----------------------------------------------------------------------===//

Region Parser::parseRegion() {
  expect(Tok::LBrace, "'{' of region");
  Region region;

  // Entry block: unlabeled ops, or a labeled block with arguments. The
  // figure-level grammar has no label on the entry block; upstream MLIR
  // allows one and module bodies with block arguments need it, so both are
  // accepted here.
  Block entry;
  if (peekIs(Tok::CaretId)) {
    Token label = lex_.next();
    entry.label = label.text;
    if (consumeIf(Tok::LParen))
      entry.args = parseBlockArgList();
    expect(Tok::Colon, "':' after block label");
  }
  while (!peekIs(Tok::RBrace) && !peekIs(Tok::CaretId))
    entry.ops.push_back(parseOperation());
  if (entry.ops.empty())
    error("at least one operation in region");
  region.blocks.push_back(std::move(entry));

  while (peekIs(Tok::CaretId)) {
    Block b;
    Token label = lex_.next();
    b.label = label.text;
    if (consumeIf(Tok::LParen))
      b.args = parseBlockArgList();
    expect(Tok::Colon, "':' after block label");
    while (!peekIs(Tok::RBrace) && !peekIs(Tok::CaretId))
      b.ops.push_back(parseOperation());
    if (b.ops.empty())
      error("at least one operation in block");
    region.blocks.push_back(std::move(b));
  }
  expect(Tok::RBrace, "'}' of region");
  return region;
}

std::vector<std::pair<std::string, TypeRef>> Parser::parseBlockArgList() {
  std::vector<std::pair<std::string, TypeRef>> args;
  if (consumeIf(Tok::RParen))
    return args;
  do {
    Token id = expect(Tok::ValueId, "block argument");
    expect(Tok::Colon, "':' in block argument");
    args.emplace_back(id.text, parseType());
  } while (consumeIf(Tok::Comma));
  expect(Tok::RParen, "')'");
  return args;
}

//===----------------------------------------------------------------------===//
// Attributes
//===----------------------------------------------------------------------===//

DictAttr Parser::parseDictBody(Tok closer) {
  DictAttr dict;
  if (peekIs(closer))
    return dict;
  do {
    std::string key;
    if (peekIs(Tok::BareId))
      key = lex_.next().text;
    else if (peekIs(Tok::String))
      key = lex_.next().text;
    else
      error("attribute name");
    for (const auto &[k, v] : dict)
      if (k == key)
        throw SimError(Err::Parse, "duplicate attribute key '" + key + "'",
                       lex_.peek().loc);
    if (consumeIf(Tok::Equal))
      dict.emplace_back(std::move(key), parseAttrValue());
    else
      dict.emplace_back(std::move(key), AttrExpr::makeUnit());
  } while (consumeIf(Tok::Comma));
  return dict;
}

IntLit Parser::parseIntLit() {
  bool neg = consumeIf(Tok::Minus);
  Token n = expect(Tok::Integer, "integer literal");
  IntLit lit = IntLit::fromDigits(n.text);
  if (neg)
    lit.negative = !lit.isZero();
  return lit;
}

AttrRef Parser::parseAttrValue() {
  const Token &t = lex_.peek();
  switch (t.kind) {
  case Tok::Minus:
  case Tok::Integer: {
    IntLit lit = parseIntLit();
    TypeRef type;
    if (consumeIf(Tok::Colon))
      type = parseType();
    return AttrExpr::makeInt(std::move(lit), std::move(type));
  }
  case Tok::String: {
    Token s = lex_.next();
    return AttrExpr::makeString(s.text);
  }
  case Tok::LBracket: {
    lex_.next();
    std::vector<AttrRef> elems;
    if (!consumeIf(Tok::RBracket)) {
      do {
        elems.push_back(parseAttrValue());
      } while (consumeIf(Tok::Comma));
      expect(Tok::RBracket, "']'");
    }
    return AttrExpr::makeArray(std::move(elems));
  }
  case Tok::LBrace: {
    lex_.next();
    DictAttr entries = parseDictBody(Tok::RBrace);
    expect(Tok::RBrace, "'}'");
    return AttrExpr::makeDict(std::move(entries));
  }
  case Tok::AtId: {
    std::vector<std::string> path;
    path.push_back(lex_.next().text);
    while (peekIs(Tok::ColonColon)) {
      lex_.next();
      Token nxt = expect(Tok::AtId, "nested symbol after '::'");
      path.push_back(nxt.text);
    }
    return AttrExpr::makeSymbolRef(std::move(path));
  }
  case Tok::HashId: {
    Token h = lex_.next();
    bool isDialect = h.text.find('.') != std::string::npos;
    if (peekIs(Tok::Less)) {
      lex_.next();
      std::string raw = captureBalanced(Tok::Less, Tok::Greater);
      return AttrExpr::makeOpaque(h.text + "<" + raw + ">");
    }
    if (isDialect)
      return AttrExpr::makeOpaque(h.text);
    return AttrExpr::makeAlias(h.text);
  }
  case Tok::BareId: {
    if (t.text == "true") {
      lex_.next();
      return AttrExpr::makeBool(true);
    }
    if (t.text == "false") {
      lex_.next();
      return AttrExpr::makeBool(false);
    }
    if (t.text == "unit") {
      lex_.next();
      return AttrExpr::makeUnit();
    }
    // A type used as an attribute value (e.g. module_type).
    return AttrExpr::makeType(parseType());
  }
  case Tok::BangId:
  case Tok::LParen:
    return AttrExpr::makeType(parseType());
  default:
    break;
  }
  error("attribute value");
}

//===----------------------------------------------------------------------===//
// Types
//===----------------------------------------------------------------------===//

static bool parseIntWidth(std::string_view text, uint32_t &width) {
  if (text.size() < 2 || text[0] != 'i')
    return false;
  uint64_t w = 0;
  for (char c : text.substr(1)) {
    if (c < '0' || c > '9')
      return false;
    w = w * 10 + (c - '0');
    if (w > 10'000'000)
      return false;
  }
  width = static_cast<uint32_t>(w);
  return true;
}

TypeRef Parser::parseType() {
  const Token &t = lex_.peek();
  if (t.kind == Tok::BareId) {
    uint32_t width = 0;
    if (parseIntWidth(t.text, width)) {
      lex_.next();
      return TypeExpr::makeInt(width);
    }
    error("type");
  }
  if (t.kind == Tok::LParen)
    return parseFuncType();
  if (t.kind == Tok::BangId) {
    Token bang = lex_.next();
    if (bang.text.find('.') == std::string::npos)
      return TypeExpr::makeAlias(bang.text);
    return parseDialectType(bang);
  }
  error("type");
}

TypeRef Parser::parseDialectType(const Token &bang) {
  const std::string &n = bang.text;
  if (n == "seq.clock")
    return TypeExpr::makeClock();
  if (n == "hw.inout") {
    expect(Tok::Less, "'<'");
    TypeRef elem = parseType();
    expect(Tok::Greater, "'>'");
    return TypeExpr::makeInout(std::move(elem));
  }
  if (n == "hw.array") {
    expect(Tok::Less, "'<'");
    Token size = expect(Tok::Integer, "array size");
    uint64_t count = std::stoull(size.text);
    // Accept both "4xi8" (lexed as 4 then "xi8") and "4 x i8".
    TypeRef elem;
    Token sep = expect(Tok::BareId, "'x' separator");
    if (sep.text == "x") {
      elem = parseType();
    } else if (sep.text.size() > 1 && sep.text[0] == 'x') {
      uint32_t w = 0;
      if (!parseIntWidth(std::string_view(sep.text).substr(1), w))
        error("element type");
      elem = TypeExpr::makeInt(w);
    } else {
      error("'x' separator");
    }
    expect(Tok::Greater, "'>'");
    return TypeExpr::makeArray(count, std::move(elem));
  }
  if (n == "hw.struct" || n == "hw.union") {
    expect(Tok::Less, "'<'");
    std::vector<std::pair<std::string, TypeRef>> fields;
    if (!peekIs(Tok::Greater)) {
      do {
        Token fname = expect(Tok::BareId, "field name");
        expect(Tok::Colon, "':'");
        fields.emplace_back(fname.text, parseType());
      } while (consumeIf(Tok::Comma));
    }
    expect(Tok::Greater, "'>'");
    return n == "hw.struct" ? TypeExpr::makeStruct(std::move(fields))
                            : TypeExpr::makeUnion(std::move(fields));
  }
  if (n == "hw.enum") {
    expect(Tok::Less, "'<'");
    std::vector<std::string> members;
    if (!peekIs(Tok::Greater)) {
      do {
        Token m = expect(Tok::BareId, "enum member");
        members.push_back(m.text);
      } while (consumeIf(Tok::Comma));
    }
    expect(Tok::Greater, "'>'");
    return TypeExpr::makeEnum(std::move(members));
  }
  if (n == "hw.modty") {
    expect(Tok::Less, "'<'");
    std::vector<std::pair<std::string, TypeRef>> ins, outs;
    if (!peekIs(Tok::Greater)) {
      do {
        bool isInput;
        if (peekKeyword("input"))
          isInput = true;
        else if (peekKeyword("output"))
          isInput = false;
        else
          error("'input' or 'output'");
        lex_.next();
        Token pname = expect(Tok::BareId, "port name");
        expect(Tok::Colon, "':'");
        TypeRef ty = parseType();
        (isInput ? ins : outs).emplace_back(pname.text, std::move(ty));
      } while (consumeIf(Tok::Comma));
    }
    expect(Tok::Greater, "'>'");
    return TypeExpr::makeModule(std::move(ins), std::move(outs));
  }
  if (n == "seq.firmem") {
    expect(Tok::Less, "'<'");
    Token depth = expect(Tok::Integer, "memory depth");
    Token sep = expect(Tok::BareId, "'x' separator");
    uint32_t width = 0;
    if (sep.text == "x") {
      Token w = expect(Tok::Integer, "memory width");
      width = static_cast<uint32_t>(std::stoul(w.text));
    } else if (sep.text[0] == 'x') {
      width = static_cast<uint32_t>(
          std::stoul(std::string(sep.text).substr(1)));
    } else {
      error("'x' separator");
    }
    expect(Tok::Greater, "'>'");
    return TypeExpr::makeFirMem(std::stoull(depth.text), width);
  }
  // Unknown dialect type: keep it verbatim (with any <...> payload).
  if (peekIs(Tok::Less)) {
    lex_.next();
    std::string raw = captureBalanced(Tok::Less, Tok::Greater);
    return TypeExpr::makeOpaque(n + "<" + raw + ">");
  }
  return TypeExpr::makeOpaque(n);
}

TypeRef Parser::parseFuncType() {
  std::vector<TypeRef> ins = parseTypeListParen();
  expect(Tok::Arrow, "'->'");
  std::vector<TypeRef> outs = parseTypeListParen();
  return TypeExpr::makeFunc(std::move(ins), std::move(outs));
}

std::vector<TypeRef> Parser::parseTypeListParen() {
  std::vector<TypeRef> types;
  if (consumeIf(Tok::LParen)) {
    if (consumeIf(Tok::RParen))
      return types;
    do {
      types.push_back(parseType());
    } while (consumeIf(Tok::Comma));
    expect(Tok::RParen, "')'");
    return types;
  }
  types.push_back(parseType());
  return types;
}

//===----------------------------------------------------------------------===//
// Raw capture for opaque payloads
//===----------------------------------------------------------------------===//

std::string Parser::captureBalanced(Tok open, Tok close) {
  std::string out;
  int depth = 1;
  while (depth > 0) {
    const Token &t = lex_.peek();
    if (t.kind == Tok::Eof)
      error("balanced close delimiter");
    if (t.kind == open)
      ++depth;
    if (t.kind == close) {
      --depth;
      if (depth == 0) {
        lex_.next();
        break;
      }
    }
    if (!out.empty())
      out.push_back(' ');
    switch (t.kind) {
    case Tok::ValueId: out += "%" + t.text; break;
    case Tok::CaretId: out += "^" + t.text; break;
    case Tok::BangId: out += "!" + t.text; break;
    case Tok::HashId: out += "#" + t.text; break;
    case Tok::AtId: out += "@" + t.text; break;
    case Tok::String: out += "\"" + t.text + "\""; break;
    default: out += t.text; break;
    }
    lex_.next();
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Predicate names
//===----------------------------------------------------------------------===//

static constexpr std::string_view kPredicates[] = {
    "eq", "ne", "slt", "sle", "sgt", "sge", "ult", "ule", "ugt", "uge"};

int icmpPredicateIndex(std::string_view name) {
  for (int i = 0; i < 10; ++i)
    if (kPredicates[i] == name)
      return i;
  return -1;
}

std::string_view icmpPredicateName(int index) {
  return (index >= 0 && index < 10) ? kPredicates[index] : "";
}

} // namespace hwsim
