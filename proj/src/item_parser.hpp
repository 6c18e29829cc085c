#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/dsl.hpp"
#include "fairmodel/model.hpp"
#include "lexer.hpp"

namespace fairmodel::detail {

/// Recursive-descent machinery shared by the `.fair` and `.fairpat` readers.
class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const {
    return peek().kind == TokenKind::Word && peek().text == word;
  }

  /// Consumes a token of `kind` or reports `expected` and returns false.
  bool expect(TokenKind kind, std::string_view expected);
  bool expect_word(std::string_view word);
  std::optional<std::string> expect_id(std::string_view what);
  std::optional<std::string> expect_string(std::string_view what);

  void error(const SourceSpan& span, std::string expected, std::string found);
  /// Reports `expected` against the current token (lexical problems are
  /// reported as such). Does not consume.
  void error_here(std::string_view expected);

  /// Parses items up to (not including) the closing '}' of the enclosing
  /// block, adding them to `scope`. Links are resolved once the whole scope
  /// has been read.
  Model parse_scope(Model scope, bool allow_fragments);

  /// At '{': skips to just past the matching '}'.
  void skip_block();
  /// Skips until a token `stop` accepts at brace depth 0, or '}' / end.
  template <typename Stop>
  void skip_until(Stop stop) {
    while (!at(TokenKind::End) && !at(TokenKind::RBrace) && !stop(peek())) {
      if (at(TokenKind::LBrace)) {
        skip_block();
      } else {
        next();
      }
    }
  }

  std::vector<ParseError>& errors() { return errors_; }
  const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

 private:
  struct PendingLink {
    Link link;
  };

  void parse_dimension(Model& scope);
  void parse_element(Model& scope, ElementKind kind, std::vector<PendingLink>& pending);
  void parse_fragment(Model& scope, bool allowed);
  void parse_block(const std::string& source, std::vector<PendingLink>& pending);
  Model resolve_links(Model scope, std::vector<PendingLink>& pending);
  void skip_item();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<ParseError> errors_;
};

bool is_item_keyword(std::string_view word);

/// Writes items of `model` (dimensions, elements with their blocks,
/// fragments) at the given indentation.
void write_items(std::string& out, const Model& model, int indent);

}  // namespace fairmodel::detail
