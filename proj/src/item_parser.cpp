#include "item_parser.hpp"

#include <algorithm>

namespace fairmodel::detail {

namespace {

SourceSpan join(SourceSpan a, const SourceSpan& b) {
  a.line_end = b.line_end;
  a.col_end = b.col_end;
  return a;
}

bool is_clause_keyword(const Token& token) {
  if (token.kind == TokenKind::AtWord) return true;
  if (token.kind != TokenKind::Word) return false;
  const std::string& w = token.text;
  return w == "in" || w == "target" || w == "accepted" || w == "milestone" || w == "pattern";
}

}  // namespace

bool is_item_keyword(std::string_view word) {
  return word == "dimension" || word == "fragment" || element_kind_from_keyword(word).has_value();
}

const Token& Parser::peek(std::size_t ahead) const {
  std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

const Token& Parser::next() {
  const Token& token = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return token;
}

void Parser::error(const SourceSpan& span, std::string expected, std::string found) {
  errors_.push_back(ParseError{span, std::move(expected), std::move(found)});
}

void Parser::error_here(std::string_view expected) {
  const Token& token = peek();
  if (token.kind == TokenKind::Invalid) {
    error(token.span, std::string(expected), describe(token) + " (" + token.problem + ")");
  } else {
    error(token.span, std::string(expected), describe(token));
  }
}

bool Parser::expect(TokenKind kind, std::string_view expected) {
  if (at(kind)) {
    next();
    return true;
  }
  error_here(expected);
  return false;
}

bool Parser::expect_word(std::string_view word) {
  if (at_word(word)) {
    next();
    return true;
  }
  error_here("'" + std::string(word) + "'");
  return false;
}

std::optional<std::string> Parser::expect_id(std::string_view what) {
  if (at(TokenKind::Word)) {
    const Token& token = peek();
    if (!is_slug(token.text)) {
      error(token.span, std::string(what) + " matching [a-z][a-z0-9_-]*",
            "malformed id '" + token.text + "'");
      next();
      return std::nullopt;
    }
    return next().text;
  }
  error_here(what);
  return std::nullopt;
}

std::optional<std::string> Parser::expect_string(std::string_view what) {
  if (at(TokenKind::String)) return next().text;
  error_here(what);
  return std::nullopt;
}

void Parser::skip_block() {
  int depth = 0;
  do {
    if (at(TokenKind::End)) return;
    if (at(TokenKind::LBrace)) ++depth;
    if (at(TokenKind::RBrace)) --depth;
    next();
  } while (depth > 0);
}

void Parser::skip_item() {
  skip_until([](const Token& t) { return t.kind == TokenKind::Word && is_item_keyword(t.text); });
}

Model Parser::parse_scope(Model scope, bool allow_fragments) {
  std::vector<PendingLink> pending;
  while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
    const Token& token = peek();
    if (token.kind == TokenKind::Word) {
      if (token.text == "dimension") {
        parse_dimension(scope);
        continue;
      }
      if (token.text == "fragment") {
        parse_fragment(scope, allow_fragments);
        continue;
      }
      if (auto kind = element_kind_from_keyword(token.text)) {
        parse_element(scope, *kind, pending);
        continue;
      }
    }
    error_here("'dimension', 'fragment' or an element keyword");
    next();
    skip_item();
  }
  return resolve_links(std::move(scope), pending);
}

void Parser::parse_dimension(Model& scope) {
  SourceSpan start = next().span;
  auto id = expect_id("dimension id");
  if (!id) {
    skip_item();
    return;
  }
  Element element;
  element.id = *id;
  element.kind = ElementKind::Dimension;
  element.name = *id;
  element.span = join(start, previous().span);
  try {
    scope = add_element(std::move(scope), std::move(element));
  } catch (const ModelError& e) {
    error(previous().span, "an unused dimension id", "'" + *id + "' (" + e.what() + ")");
  }
}

void Parser::parse_element(Model& scope, ElementKind kind, std::vector<PendingLink>& pending) {
  SourceSpan start = next().span;
  std::string what = std::string(keyword(kind)) + " id";
  auto id = expect_id(what);
  if (!id) {
    skip_item();
    return;
  }
  const SourceSpan id_span = previous().span;
  auto name = expect_string("display name string");
  if (!name) {
    skip_item();
    return;
  }
  Element element;
  element.id = *id;
  element.kind = kind;
  element.name = *name;

  bool ok = true;
  auto duplicate_clause = [&](const Token& clause) {
    error(clause.span, "at most one '" + clause.text + "' clause", describe(clause));
  };
  while (ok && is_clause_keyword(peek())) {
    const Token clause = next();
    if (clause.kind == TokenKind::AtWord) {
      Attribution attribution;
      if (clause.text == "is") {
        attribution = Attribution::System;
      } else if (clause.text == "env") {
        attribution = Attribution::Environment;
      } else {
        error(clause.span, "'@is' or '@env'", describe(clause));
        continue;
      }
      if (element.attribution != Attribution::Unspecified) {
        error(clause.span, "at most one attribution", describe(clause));
      }
      element.attribution = attribution;
    } else if (clause.text == "in") {
      auto dim = expect_id("dimension id after 'in'");
      if (!dim) {
        ok = false;
        break;
      }
      if (kind != ElementKind::Value) {
        error(clause.span, "dimension clause only on value elements (IllegalField)",
              "'in' on " + std::string(keyword(kind)) + " '" + *id + "'");
      } else if (element.dimension) {
        duplicate_clause(clause);
      } else {
        element.dimension = *dim;
      }
    } else if (clause.text == "accepted") {
      auto strategy = expect_id("acceptance strategy after 'accepted'");
      if (!strategy) {
        ok = false;
        break;
      }
      if (kind != ElementKind::Obstacle) {
        error(clause.span, "'accepted' only on obstacle elements (IllegalField)",
              "'accepted' on " + std::string(keyword(kind)) + " '" + *id + "'");
      } else if (!element.annotations.emplace(annotation_key::kAccepted, *strategy).second) {
        duplicate_clause(clause);
      }
    } else if (clause.text == "target" || clause.text == "pattern") {
      auto text = expect_string("string after '" + clause.text + "'");
      if (!text) {
        ok = false;
        break;
      }
      if (!element.annotations.emplace(clause.text, *text).second) duplicate_clause(clause);
    } else if (clause.text == "milestone") {
      if (!element.annotations.emplace(annotation_key::kMilestone, "").second) {
        duplicate_clause(clause);
      }
    }
  }
  if (!ok) {
    skip_item();
    return;
  }
  std::vector<PendingLink> links;
  if (at(TokenKind::LBrace)) parse_block(*id, links);
  element.span = join(start, previous().span);
  try {
    scope = add_element(std::move(scope), std::move(element));
  } catch (const ModelError& e) {
    if (e.code() == ModelErrorCode::DuplicateId) {
      const Element* first = scope.find(*id);
      std::string where;
      if (first != nullptr && first->span) {
        where = " declared at " + std::to_string(first->span->line_start) + ":" +
                std::to_string(first->span->col_start);
      }
      error(id_span, "an unused element id", "'" + *id + "' (already" + where + ")");
    } else {
      error(id_span, "well-formed element", e.what());
    }
    return;
  }
  for (auto& link : links) pending.push_back(std::move(link));
}

void Parser::parse_block(const std::string& source, std::vector<PendingLink>& pending) {
  next();  // '{'
  while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
    const Token& token = peek();
    std::optional<LinkKind> kind;
    if (token.kind == TokenKind::Word) kind = link_kind_from_keyword(token.text);
    if (!kind) {
      error_here("a relation keyword (refines, measures, regulates, operationalizes, obstructs, "
                 "resolves, underpins, details) or '}'");
      next();
      skip_until([](const Token& t) {
        return t.kind == TokenKind::Word && link_kind_from_keyword(t.text).has_value();
      });
      continue;
    }
    SourceSpan start = next().span;
    auto target = expect_id("target id after '" + std::string(keyword(*kind)) + "'");
    if (!target) continue;
    pending.push_back(PendingLink{Link{*kind, source, *target, join(start, previous().span)}});
  }
  expect(TokenKind::RBrace, "'}' closing the relation block");
}

void Parser::parse_fragment(Model& scope, bool allowed) {
  const Token keyword_token = next();
  auto name = expect_id("fragment name");
  if (!allowed) {
    error(keyword_token.span, "an element or dimension (fragments do not nest)", "'fragment'");
    if (at(TokenKind::LBrace)) skip_block();
    return;
  }
  if (!name) {
    skip_item();
    return;
  }
  if (!expect(TokenKind::LBrace, "'{' opening the fragment body")) {
    skip_item();
    return;
  }
  Model fragment = parse_scope(Model(*name), false);
  expect(TokenKind::RBrace, "'}' closing fragment '" + *name + "'");
  try {
    scope = add_fragment(std::move(scope), std::move(fragment));
  } catch (const ModelError& e) {
    error(keyword_token.span, "a unique fragment name", "'" + *name + "' (" + e.what() + ")");
  }
}

Model Parser::resolve_links(Model scope, std::vector<PendingLink>& pending) {
  for (auto& item : pending) {
    Link& link = item.link;
    SourceSpan span = link.span.value_or(SourceSpan{});
    auto source = scope.endpoint_kind(link.kind, link.source, false);
    auto target = scope.endpoint_kind(link.kind, link.target, true);
    if (source && target && !endpoints_compatible(link.kind, *source, *target)) {
      error(span,
            std::string(display_name(link.kind)) + " link " + std::string(endpoint_rule(link.kind)) +
                " (IncompatibleEndpoints)",
            std::string(display_name(*source)) + " '" + link.source + "' -> " +
                std::string(display_name(*target)) + " '" + link.target + "'");
      continue;
    }
    if (scope.has_link(link.kind, link.source, link.target)) {
      error(span, "a link not already declared (DuplicateLink)",
            "'" + std::string(keyword(link.kind)) + " " + link.target + "' on '" + link.source +
                "'");
      continue;
    }
    scope = append_unchecked_link(std::move(scope), std::move(link));
  }
  return scope;
}

}  // namespace fairmodel::detail
