//===- lexer.cpp ------------------------------------------------------------===//
//
// Part of the hwsim project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "lexer.hpp"

namespace hwsim {

namespace {

bool isIdStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool isIdBody(char c) {
  return isIdStart(c) || (c >= '0' && c <= '9') || c == '$' || c == '.';
}
bool isDigit(char c) { return c >= '0' && c <= '9'; }
bool isHexDigit(char c) {
  return isDigit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

struct Cursor {
  std::string_view src;
  size_t i = 0;
  uint32_t line = 1, col = 1;

  bool done() const { return i >= src.size(); }
  char cur() const { return src[i]; }
  char at(size_t off) const {
    return i + off < src.size() ? src[i + off] : '\0';
  }
  void advance() {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  SourceLoc loc() const { return {line, col}; }
};

} // namespace

Lexer::Lexer(std::string_view src) {
  Cursor c{src};
  auto emit = [&](Tok k, std::string text, SourceLoc loc) {
    tokens_.push_back({k, std::move(text), loc});
  };

  auto lexSuffixedId = [&](char sigil, Tok kind) {
    SourceLoc loc = c.loc();
    c.advance(); // sigil
    std::string text;
    if (!c.done() && isDigit(c.cur())) {
      while (!c.done() && isDigit(c.cur())) {
        text.push_back(c.cur());
        c.advance();
      }
    } else if (!c.done() && isIdStart(c.cur())) {
      while (!c.done() && isIdBody(c.cur())) {
        text.push_back(c.cur());
        c.advance();
      }
    } else {
      throw SimError(Err::Parse,
                     std::string("expected identifier after '") + sigil + "'",
                     loc);
    }
    emit(kind, std::move(text), loc);
  };

  while (!c.done()) {
    char ch = c.cur();
    // whitespace
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      c.advance();
      continue;
    }
    // comments
    if (ch == '/' && c.at(1) == '/') {
      while (!c.done() && c.cur() != '\n')
        c.advance();
      continue;
    }
    SourceLoc loc = c.loc();
    if (isIdStart(ch)) {
      std::string text;
      while (!c.done() && isIdBody(c.cur())) {
        text.push_back(c.cur());
        c.advance();
      }
      emit(Tok::BareId, std::move(text), loc);
      continue;
    }
    if (isDigit(ch)) {
      std::string text;
      if (ch == '0' && (c.at(1) == 'x' || c.at(1) == 'X')) {
        text += "0x";
        c.advance();
        c.advance();
        while (!c.done() && isHexDigit(c.cur())) {
          text.push_back(c.cur());
          c.advance();
        }
        if (text.size() == 2)
          throw SimError(Err::Parse, "expected hex digits after 0x", loc);
      } else {
        while (!c.done() && isDigit(c.cur())) {
          text.push_back(c.cur());
          c.advance();
        }
      }
      emit(Tok::Integer, std::move(text), loc);
      continue;
    }
    switch (ch) {
    case '%':
      lexSuffixedId('%', Tok::ValueId);
      continue;
    case '^':
      lexSuffixedId('^', Tok::CaretId);
      continue;
    case '!':
      lexSuffixedId('!', Tok::BangId);
      continue;
    case '#':
      if (isIdStart(c.at(1))) {
        lexSuffixedId('#', Tok::HashId);
      } else {
        c.advance();
        emit(Tok::Hash, "#", loc);
      }
      continue;
    case '@': {
      c.advance();
      std::string text;
      if (!c.done() && c.cur() == '"') {
        c.advance();
        while (!c.done() && c.cur() != '"') {
          text.push_back(c.cur());
          c.advance();
        }
        if (c.done())
          throw SimError(Err::Parse, "unterminated symbol name", loc);
        c.advance();
      } else if (!c.done() && (isIdStart(c.cur()) || isDigit(c.cur()))) {
        while (!c.done() && isIdBody(c.cur())) {
          text.push_back(c.cur());
          c.advance();
        }
      } else {
        throw SimError(Err::Parse, "expected symbol name after '@'", loc);
      }
      emit(Tok::AtId, std::move(text), loc);
      continue;
    }
    case '"': {
      c.advance();
      std::string text;
      while (!c.done() && c.cur() != '"') {
        char cc = c.cur();
        if (cc == '\\') {
          c.advance();
          if (c.done())
            break;
          switch (c.cur()) {
          case 'n': text.push_back('\n'); break;
          case 't': text.push_back('\t'); break;
          case '\\': text.push_back('\\'); break;
          case '"': text.push_back('"'); break;
          case '0': text.push_back('\0'); break;
          default:
            throw SimError(Err::Parse, "unknown string escape", c.loc());
          }
          c.advance();
          continue;
        }
        text.push_back(cc);
        c.advance();
      }
      if (c.done())
        throw SimError(Err::Parse, "unterminated string literal", loc);
      c.advance();
      emit(Tok::String, std::move(text), loc);
      continue;
    }
    case '(': c.advance(); emit(Tok::LParen, "(", loc); continue;
    case ')': c.advance(); emit(Tok::RParen, ")", loc); continue;
    case '{': c.advance(); emit(Tok::LBrace, "{", loc); continue;
    case '}': c.advance(); emit(Tok::RBrace, "}", loc); continue;
    case '[': c.advance(); emit(Tok::LBracket, "[", loc); continue;
    case ']': c.advance(); emit(Tok::RBracket, "]", loc); continue;
    case '<': c.advance(); emit(Tok::Less, "<", loc); continue;
    case '>': c.advance(); emit(Tok::Greater, ">", loc); continue;
    case '=': c.advance(); emit(Tok::Equal, "=", loc); continue;
    case ',': c.advance(); emit(Tok::Comma, ",", loc); continue;
    case '*': c.advance(); emit(Tok::Star, "*", loc); continue;
    case '?': c.advance(); emit(Tok::Question, "?", loc); continue;
    case ':':
      c.advance();
      if (!c.done() && c.cur() == ':') {
        c.advance();
        emit(Tok::ColonColon, "::", loc);
      } else {
        emit(Tok::Colon, ":", loc);
      }
      continue;
    case '-':
      c.advance();
      if (!c.done() && c.cur() == '>') {
        c.advance();
        emit(Tok::Arrow, "->", loc);
      } else {
        emit(Tok::Minus, "-", loc);
      }
      continue;
    default:
      throw SimError(Err::Parse,
                     std::string("unexpected character '") + ch + "'", loc);
    }
  }
  tokens_.push_back({Tok::Eof, "", c.loc()});
}

const Token &Lexer::peek(size_t ahead) const {
  size_t idx = pos_ + ahead;
  if (idx >= tokens_.size())
    idx = tokens_.size() - 1;
  return tokens_[idx];
}

Token Lexer::next() {
  Token t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size())
    ++pos_;
  return t;
}

} // namespace hwsim
