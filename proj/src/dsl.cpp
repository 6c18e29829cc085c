#include "fairmodel/dsl.hpp"

#include "item_parser.hpp"
#include "lexer.hpp"

namespace fairmodel {

std::string ParseError::message() const { return "expected " + expected + ", found " + found; }

std::string format_parse_error(const ParseError& error) {
  return error.span.file + ":" + std::to_string(error.span.line_start) + ":" +
         std::to_string(error.span.col_start) + ": error: " + error.message();
}

ParseResult parse(std::string_view text, std::string_view file) {
  detail::Parser parser(detail::tokenize(text, file));
  ParseResult result;
  std::optional<Model> model;
  if (parser.expect_word("model")) {
    auto name = parser.expect_string("model name string");
    if (parser.expect(detail::TokenKind::LBrace, "'{' opening the model body")) {
      Model scope = parser.parse_scope(Model(name.value_or("")), true);
      if (parser.expect(detail::TokenKind::RBrace, "'}' closing the model")) {
        parser.expect(detail::TokenKind::End, "end of input after the model");
      }
      model = std::move(scope);
    }
  }
  result.errors = std::move(parser.errors());
  if (result.errors.empty()) result.model = std::move(model);
  return result;
}

std::string quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace detail {

namespace {

void write_element(std::string& out, const Model& model, const Element& element,
                   const std::string& pad) {
  out += pad;
  out += keyword(element.kind);
  out += ' ';
  out += element.id;
  if (element.kind == ElementKind::Dimension) {
    out += '\n';
    return;
  }
  out += ' ';
  out += quote(element.name);
  if (element.dimension) out += " in " + *element.dimension;
  if (element.attribution == Attribution::System) out += " @is";
  if (element.attribution == Attribution::Environment) out += " @env";
  for (const auto& [key, text] : element.annotations) {
    if (key == annotation_key::kMilestone) {
      out += " milestone";
    } else if (key == annotation_key::kAccepted) {
      out += " accepted " + text;
    } else {
      out += " " + key + " " + quote(text);
    }
  }
  bool opened = false;
  for (const Link& link : model.links()) {
    if (link.source != element.id) continue;
    if (!opened) {
      out += " {\n";
      opened = true;
    }
    out += pad + "  " + std::string(keyword(link.kind)) + " " + link.target + "\n";
  }
  if (opened) out += pad + "}";
  out += '\n';
}

}  // namespace

void write_items(std::string& out, const Model& model, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  bool any = false;
  for (const Element& element : model.elements()) {
    if (element.kind != ElementKind::Dimension) continue;
    write_element(out, model, element, pad);
    any = true;
  }
  bool separated = false;
  for (const Element& element : model.elements()) {
    if (element.kind == ElementKind::Dimension) continue;
    if (any && !separated) out += '\n';
    separated = true;
    write_element(out, model, element, pad);
  }
  any = any || separated;
  for (const Model& fragment : model.fragments()) {
    if (any) out += '\n';
    any = true;
    out += pad + "fragment " + fragment.name() + " {\n";
    write_items(out, fragment, indent + 2);
    out += pad + "}\n";
  }
}

}  // namespace detail

std::string serialize(const Model& model) {
  std::string out = "model " + quote(model.name()) + " {\n";
  detail::write_items(out, model, 2);
  out += "}\n";
  return out;
}

}  // namespace fairmodel
