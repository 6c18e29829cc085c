#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/model.hpp"
#include "fairmodel/source_span.hpp"

namespace fairmodel {

struct ParseError {
  SourceSpan span;
  std::string expected;
  std::string found;

  /// "expected <expected>, found <found>"
  std::string message() const;
};

/// FILE:LINE:COL: error: expected ..., found ...
std::string format_parse_error(const ParseError& error);

struct ParseResult {
  std::optional<Model> model;
  std::vector<ParseError> errors;

  bool ok() const noexcept { return model.has_value(); }
};

/// Parses a `.fair` document. Unresolved references survive as links for
/// the validator to report; incompatible endpoints between resolved
/// elements, duplicate ids and duplicate links are parse errors. All
/// recoverable errors are collected in a single pass.
ParseResult parse(std::string_view text, std::string_view file = "<input>");

/// Canonical text: dimensions first, then elements in insertion order with
/// their outgoing links in a block, then fragments. Two-space indentation,
/// LF line endings.
std::string serialize(const Model& model);

/// Double-quoted string literal with `"` and `\` escaped.
std::string quote(std::string_view text);

}  // namespace fairmodel
