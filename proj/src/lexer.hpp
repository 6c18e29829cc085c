#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/source_span.hpp"

namespace fairmodel::detail {

enum class TokenKind {
  Word,      // [A-Za-z0-9_][A-Za-z0-9_-]*; keywords are contextual
  AtWord,    // @is, @env (text excludes the '@')
  String,    // text holds the unescaped contents
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Invalid,   // lexical error; text holds the offending lexeme
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;
  std::string problem;  // set for Invalid tokens
};

std::vector<Token> tokenize(std::string_view source, std::string_view file);

/// "'lexeme'" style rendering of a token for error messages.
std::string describe(const Token& token);

}  // namespace fairmodel::detail
