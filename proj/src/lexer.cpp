#include "lexer.hpp"

namespace fairmodel::detail {

namespace {

bool word_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool word_char(char c) { return word_start(c) || c == '-'; }

class Cursor {
 public:
  Cursor(std::string_view source, std::string_view file) : source_(source), file_(file) {}

  bool done() const { return pos_ >= source_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < source_.size() ? source_[pos_ + ahead] : '\0';
  }

  void advance() {
    char c = source_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80 && c != '\r') {
      ++col_;
    }
  }

  SourceSpan here() const { return SourceSpan{std::string(file_), line_, col_, line_, col_}; }
  void close(SourceSpan& span) const {
    span.line_end = line_;
    span.col_end = col_;
  }
  std::size_t pos() const { return pos_; }
  std::string_view slice(std::size_t from) const { return source_.substr(from, pos_ - from); }

 private:
  std::string_view source_;
  std::string_view file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Token lex_string(Cursor& cur) {
  Token token{TokenKind::String, {}, cur.here(), {}};
  cur.advance();  // opening quote
  while (true) {
    if (cur.done()) {
      token.kind = TokenKind::Invalid;
      token.problem = "unterminated string";
      token.text = "\"" + token.text;
      break;
    }
    char c = cur.peek();
    if (c == '"') {
      cur.advance();
      break;
    }
    if (c == '\\') {
      char next = cur.peek(1);
      if (next == '"' || next == '\\') {
        cur.advance();
        cur.advance();
        token.text.push_back(next);
        continue;
      }
      token.kind = TokenKind::Invalid;
      token.problem = "unknown escape sequence";
      cur.advance();
      if (!cur.done()) cur.advance();
      token.text = std::string("\\") + next;
      // Keep scanning to the closing quote so one bad escape is one error.
      while (!cur.done() && cur.peek() != '"') cur.advance();
      if (!cur.done()) cur.advance();
      break;
    }
    if (c == '\r' && cur.peek(1) == '\n') {
      cur.advance();
      continue;
    }
    token.text.push_back(c);
    cur.advance();
  }
  cur.close(token.span);
  return token;
}

}  // namespace

std::vector<Token> tokenize(std::string_view source, std::string_view file) {
  std::vector<Token> tokens;
  Cursor cur(source, file);
  // Skip a UTF-8 byte order mark.
  if (source.substr(0, 3) == "\xEF\xBB\xBF") {
    for (int i = 0; i < 3; ++i) cur.advance();
  }
  while (!cur.done()) {
    char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      cur.advance();
      continue;
    }
    if (c == '#') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }
    if (c == '"') {
      tokens.push_back(lex_string(cur));
      continue;
    }
    Token token{TokenKind::Invalid, {}, cur.here(), {}};
    std::size_t start = cur.pos();
    auto single = [&](TokenKind kind) {
      token.kind = kind;
      cur.advance();
    };
    switch (c) {
      case '{': single(TokenKind::LBrace); break;
      case '}': single(TokenKind::RBrace); break;
      case '[': single(TokenKind::LBracket); break;
      case ']': single(TokenKind::RBracket); break;
      case ',': single(TokenKind::Comma); break;
      case '@':
        cur.advance();
        while (word_char(cur.peek())) cur.advance();
        token.kind = TokenKind::AtWord;
        token.text = std::string(cur.slice(start + 1));
        if (token.text.empty()) {
          token.kind = TokenKind::Invalid;
          token.problem = "expected attribution name after '@'";
          token.text = "@";
        }
        break;
      default:
        if (word_start(c)) {
          while (word_char(cur.peek())) cur.advance();
          token.kind = TokenKind::Word;
          token.text = std::string(cur.slice(start));
        } else {
          // Consume one whole UTF-8 sequence.
          cur.advance();
          while (!cur.done() && (static_cast<unsigned char>(cur.peek()) & 0xC0) == 0x80) {
            cur.advance();
          }
          token.text = std::string(cur.slice(start));
          token.problem = "unexpected character";
        }
        break;
    }
    if (token.kind != TokenKind::Word && token.kind != TokenKind::AtWord &&
        token.kind != TokenKind::Invalid) {
      token.text = std::string(cur.slice(start));
    }
    cur.close(token.span);
    tokens.push_back(std::move(token));
  }
  Token end{TokenKind::End, {}, cur.here(), {}};
  tokens.push_back(std::move(end));
  return tokens;
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string \"" + token.text + "\"";
    case TokenKind::AtWord: return "'@" + token.text + "'";
    default: return "'" + token.text + "'";
  }
}

}  // namespace fairmodel::detail
