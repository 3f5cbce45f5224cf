//===- lexer.hpp - Token stream for MLIR text ------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hwsim/diag.hpp"

namespace hwsim {

enum class Tok : uint8_t {
  Eof,
  BareId,   // letter/underscore then [letter digit _ $ .]
  ValueId,  // %foo / %0  (text excludes the sigil)
  CaretId,  // ^bb0
  BangId,   // !alias or !hw.array (text excludes '!')
  HashId,   // #alias or #hw.attr (text excludes '#')
  AtId,     // @Symbol or @"quoted" (text is the symbol, unquoted)
  Integer,  // 123 or 0x1F
  String,   // "..." (text is unescaped)
  LParen, RParen,
  LBrace, RBrace,
  LBracket, RBracket,
  Less, Greater,
  Equal, Comma, Colon, ColonColon, Arrow, Minus, Hash, Question, Star,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceLoc loc;
};

/// Lexes the whole input up front. Comments ("// ...") are whitespace.
class Lexer {
public:
  explicit Lexer(std::string_view src);

  const Token &peek(size_t ahead = 0) const;
  Token next();
  size_t position() const { return pos_; }
  void rewind(size_t position) { pos_ = position; }

private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

} // namespace hwsim
