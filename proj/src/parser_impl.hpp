//===- parser_impl.hpp - Recursive-descent parser internals ----------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include "hwsim/ast.hpp"
#include "lexer.hpp"

namespace hwsim {

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) {}

  SourceFile parseFile();
  TypeRef parseType();
  AttrRef parseAttrValue();

private:
  Lexer lex_;

  [[noreturn]] void error(const std::string &expected);
  Token expect(Tok k, std::string_view what);
  bool consumeIf(Tok k);
  bool peekIs(Tok k, size_t ahead = 0) const {
    return lex_.peek(ahead).kind == k;
  }
  bool peekKeyword(std::string_view kw, size_t ahead = 0) const {
    const Token &t = lex_.peek(ahead);
    return t.kind == Tok::BareId && t.text == kw;
  }
  void expectKeyword(std::string_view kw);

  // Generic grammar.
  Operation parseOperation();
  Operation parseGenericOpTail(std::vector<OpResult> results, Token nameTok);
  Region parseRegion();
  std::vector<ValueUse> parseValueUseList(); // after '('
  ValueUse parseValueUse();
  DictAttr parseDictBody(Tok closer); // entries up to (not consuming) closer
  IntLit parseIntLit();               // with optional leading '-'
  TypeRef parseFuncType();
  std::vector<TypeRef> parseTypeListParen(); // '(' t, t ')' or single type
  std::vector<std::pair<std::string, TypeRef>> parseBlockArgList(); // after '('
  void parseLocSuffix(Operation &op);

  // Dialect type bodies (after the '!dialect.name' token).
  TypeRef parseDialectType(const Token &bang);
  std::string captureBalanced(Tok open, Tok close); // raw text re-rendering

  // Custom (pretty) operation forms; nameTok is the bare id, e.g. hw.module.
  Operation parseCustomOp(std::vector<OpResult> results, Token nameTok);
  Operation customHw(std::vector<OpResult> results, const Token &name);
  Operation customComb(std::vector<OpResult> results, const Token &name);
  Operation customSeq(std::vector<OpResult> results, const Token &name);
  Operation customSv(std::vector<OpResult> results, const Token &name);
  Region parseBracedBody(); // '{' ops '}' as a single-block region
};

/// Index of comparison predicate names, shared with the evaluator.
int icmpPredicateIndex(std::string_view name); // -1 if unknown
std::string_view icmpPredicateName(int index);

} // namespace hwsim
