#include "fairmodel/catalogue.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "builtin_catalogue_text.hpp"
#include "fairmodel/placeholders.hpp"
#include "item_parser.hpp"
#include "lexer.hpp"
#include "text_util.hpp"

namespace fairmodel {

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Design: return "design";
    case Stage::Adoption: return "adoption";
    case Stage::Implementation: return "implementation";
    case Stage::Evolution: return "evolution";
    case Stage::Governance: return "governance";
  }
  return "?";
}

std::optional<Stage> stage_from_string(std::string_view text) noexcept {
  for (Stage stage : kAllStages) {
    if (to_string(stage) == text) return stage;
  }
  return std::nullopt;
}

const Element& PatternCard::root() const {
  for (const Element& e : archetype.elements()) {
    if (e.kind != ElementKind::Dimension) return e;
  }
  throw std::logic_error("pattern `" + name + "` has an empty archetype");
}

std::vector<std::string> PatternCard::placeholders() const {
  std::set<std::string> words;
  for (const Element& e : archetype.elements()) {
    for (auto& w : placeholders_in(e.name)) words.insert(std::move(w));
  }
  return {words.begin(), words.end()};
}

std::size_t PatternCard::census_elements() const {
  return static_cast<std::size_t>(
      std::count_if(archetype.elements().begin(), archetype.elements().end(),
                    [](const Element& e) { return e.kind != ElementKind::Dimension; }));
}

bool cards_equal(const PatternCard& a, const PatternCard& b) {
  return a.name == b.name && a.title == b.title && a.category_primary == b.category_primary &&
         a.category_secondary == b.category_secondary && a.dimensions == b.dimensions &&
         a.summary == b.summary && a.applicability == b.applicability && a.content == b.content &&
         a.discussion == b.discussion && a.examples == b.examples && a.related == b.related &&
         structurally_equal(a.archetype, b.archetype);
}

const PatternCard* Catalogue::find(std::string_view card_name) const {
  auto it = std::find_if(cards.begin(), cards.end(),
                         [&](const PatternCard& c) { return c.name == card_name; });
  return it == cards.end() ? nullptr : &*it;
}

bool catalogues_equal(const Catalogue& a, const Catalogue& b) {
  if (a.name != b.name || a.version != b.version || a.cards.size() != b.cards.size()) return false;
  for (std::size_t i = 0; i < a.cards.size(); ++i) {
    if (!cards_equal(a.cards[i], b.cards[i])) return false;
  }
  return true;
}

std::string_view to_string(CatalogueErrorCode code) noexcept {
  switch (code) {
    case CatalogueErrorCode::Parse: return "Parse";
    case CatalogueErrorCode::InvalidArchetype: return "InvalidArchetype";
    case CatalogueErrorCode::UnknownCategory: return "UnknownCategory";
    case CatalogueErrorCode::UnknownDimension: return "UnknownDimension";
    case CatalogueErrorCode::MissingField: return "MissingField";
    case CatalogueErrorCode::DuplicateField: return "DuplicateField";
    case CatalogueErrorCode::DuplicatePattern: return "DuplicatePattern";
  }
  return "?";
}

std::string format_catalogue_error(const CatalogueError& error) {
  std::string out;
  if (error.span) {
    out = error.span->file + ":" + std::to_string(error.span->line_start) + ":" +
          std::to_string(error.span->col_start) + ": ";
  }
  out += std::string(to_string(error.code)) + ": ";
  if (!error.card.empty()) out += "pattern `" + error.card + "`: ";
  out += error.message;
  for (const Diagnostic& d : error.diagnostics) out += "\n  " + format_diagnostic(d);
  return out;
}

namespace {

using detail::Token;
using detail::TokenKind;

class CatalogueReader {
 public:
  CatalogueReader(std::string_view text, std::string_view file)
      : parser_(detail::tokenize(text, file)) {}

  CatalogueLoadResult read() {
    Catalogue catalogue;
    if (parser_.expect_word("catalogue")) {
      catalogue.name = parser_.expect_string("catalogue name string").value_or("");
      if (parser_.expect_word("version")) {
        catalogue.version = parser_.expect_string("version string").value_or("");
      }
      if (parser_.expect(TokenKind::LBrace, "'{' opening the catalogue body")) {
        while (!parser_.at(TokenKind::RBrace) && !parser_.at(TokenKind::End)) {
          if (parser_.at_word("pattern")) {
            read_pattern(catalogue);
          } else {
            parser_.error_here("'pattern'");
            parser_.next();
            parser_.skip_until([](const Token& t) {
              return t.kind == TokenKind::Word && t.text == "pattern";
            });
          }
        }
        if (parser_.expect(TokenKind::RBrace, "'}' closing the catalogue")) {
          parser_.expect(TokenKind::End, "end of input after the catalogue");
        }
      }
    }
    CatalogueLoadResult result;
    for (const ParseError& e : parser_.errors()) {
      result.errors.push_back(
          CatalogueError{CatalogueErrorCode::Parse, "", e.message(), e.span, {}});
    }
    result.errors.insert(result.errors.end(), semantic_.begin(), semantic_.end());
    std::stable_sort(result.errors.begin(), result.errors.end(),
                     [](const CatalogueError& a, const CatalogueError& b) {
                       auto line = [](const CatalogueError& e) {
                         return e.span ? std::make_pair(e.span->line_start, e.span->col_start)
                                       : std::make_pair(0, 0);
                       };
                       return line(a) < line(b);
                     });
    for (const PatternCard& card : catalogue.cards) {
      for (const std::string& related : card.related) {
        if (catalogue.find(related) == nullptr) result.notices.push_back({card.name, related});
      }
    }
    if (result.errors.empty()) result.catalogue = std::move(catalogue);
    return result;
  }

 private:
  void fail(CatalogueErrorCode code, const std::string& card, std::string message,
            const SourceSpan& span, std::vector<Diagnostic> diagnostics = {}) {
    semantic_.push_back(CatalogueError{code, card, std::move(message), span, std::move(diagnostics)});
  }

  std::optional<std::vector<std::string>> read_id_list(std::string_view what) {
    if (!parser_.expect(TokenKind::LBracket, "'[' opening the " + std::string(what) + " list")) {
      return std::nullopt;
    }
    std::vector<std::string> ids;
    if (parser_.at(TokenKind::RBracket)) {
      parser_.next();
      return ids;
    }
    while (true) {
      auto id = parser_.expect_id(std::string(what) + " name");
      if (!id) return std::nullopt;
      ids.push_back(*id);
      if (parser_.at(TokenKind::Comma)) {
        parser_.next();
        continue;
      }
      if (!parser_.expect(TokenKind::RBracket, "',' or ']'")) return std::nullopt;
      return ids;
    }
  }

  std::optional<Stage> read_stage(const std::string& card) {
    const Token token = parser_.peek();
    auto word = parser_.expect_id("category");
    if (!word) return std::nullopt;
    auto stage = stage_from_string(*word);
    if (!stage) {
      fail(CatalogueErrorCode::UnknownCategory, card,
           "unknown category `" + *word +
               "` (expected design, adoption, implementation, evolution or governance)",
           token.span);
    }
    return stage;
  }

  void read_pattern(Catalogue& catalogue) {
    const Token keyword_token = parser_.next();
    auto name = parser_.expect_id("pattern name");
    if (!name || !parser_.expect(TokenKind::LBrace, "'{' opening the pattern")) {
      parser_.skip_until([](const Token& t) { return t.kind == TokenKind::Word && t.text == "pattern"; });
      if (parser_.at(TokenKind::RBrace)) parser_.next();
      return;
    }
    PatternCard card;
    card.name = *name;
    std::set<std::string> seen;
    bool has_category = false;
    bool has_archetype = false;
    auto is_field = [](const Token& t) {
      static const std::set<std::string, std::less<>> fields = {
          "title",   "category", "dimensions", "summary",   "applicability", "content",
          "discussion", "example", "related", "archetype"};
      return t.kind == TokenKind::Word && fields.count(t.text) != 0;
    };
    while (!parser_.at(TokenKind::RBrace) && !parser_.at(TokenKind::End)) {
      const Token field = parser_.peek();
      if (!is_field(field)) {
        parser_.error_here("a pattern field (title, category, dimensions, summary, applicability, "
                           "content, discussion, example, related, archetype)");
        parser_.next();
        parser_.skip_until(is_field);
        continue;
      }
      parser_.next();
      if (field.text != "example" && !seen.insert(field.text).second) {
        fail(CatalogueErrorCode::DuplicateField, card.name, "field `" + field.text + "` repeated",
             field.span);
      }
      const std::string& f = field.text;
      if (f == "title" || f == "summary" || f == "applicability" || f == "content" ||
          f == "discussion" || f == "example") {
        auto text = parser_.expect_string("string after '" + f + "'");
        if (!text) continue;
        if (f == "title") card.title = *text;
        if (f == "summary") card.summary = *text;
        if (f == "applicability") card.applicability = *text;
        if (f == "content") card.content = *text;
        if (f == "discussion") card.discussion = *text;
        if (f == "example") card.examples.push_back(*text);
      } else if (f == "category") {
        has_category = true;
        if (auto primary = read_stage(card.name)) card.category_primary = *primary;
        bool bracketed = parser_.at(TokenKind::LBracket);
        if (bracketed) parser_.next();
        if (bracketed || (parser_.at(TokenKind::Word) && !is_field(parser_.peek()))) {
          card.category_secondary = read_stage(card.name);
          if (bracketed) parser_.expect(TokenKind::RBracket, "']' closing the secondary category");
        }
      } else if (f == "dimensions") {
        if (auto dims = read_id_list("dimension")) {
          for (const std::string& d : *dims) {
            if (!is_canonical_dimension(d)) {
              fail(CatalogueErrorCode::UnknownDimension, card.name,
                   "dimension `" + d + "` is not one of environmental, economic, social, "
                   "personal, technical",
                   field.span);
            }
          }
          card.dimensions = std::move(*dims);
        }
      } else if (f == "related") {
        if (auto related = read_id_list("related pattern")) card.related = std::move(*related);
      } else if (f == "archetype") {
        if (!parser_.expect(TokenKind::LBrace, "'{' opening the archetype")) continue;
        card.archetype = parser_.parse_scope(Model(card.name), false);
        parser_.expect(TokenKind::RBrace, "'}' closing the archetype");
        has_archetype = true;
      }
    }
    parser_.expect(TokenKind::RBrace, "'}' closing pattern '" + card.name + "'");

    for (std::string_view required : {"title", "dimensions", "summary", "applicability", "content"}) {
      if (seen.count(std::string(required)) == 0) {
        fail(CatalogueErrorCode::MissingField, card.name,
             "missing field `" + std::string(required) + "`", keyword_token.span);
      }
    }
    if (!has_category) {
      fail(CatalogueErrorCode::MissingField, card.name, "missing field `category`",
           keyword_token.span);
    }
    if (!has_archetype) {
      fail(CatalogueErrorCode::MissingField, card.name, "missing field `archetype`",
           keyword_token.span);
    } else {
      check_archetype(card, keyword_token.span);
    }
    if (catalogue.find(card.name) != nullptr) {
      fail(CatalogueErrorCode::DuplicatePattern, card.name, "pattern declared twice",
           keyword_token.span);
      return;
    }
    catalogue.cards.push_back(std::move(card));
  }

  void check_archetype(const PatternCard& card, const SourceSpan& span) {
    if (card.census_elements() == 0) {
      fail(CatalogueErrorCode::InvalidArchetype, card.name, "archetype has no elements", span);
      return;
    }
    std::map<std::string, std::string, std::less<>> trivial;
    for (const std::string& word : card.placeholders()) trivial.emplace(word, word);
    Model substituted(card.archetype.name());
    for (Element e : card.archetype.elements()) {
      e.name = substitute_placeholders(e.name, trivial);
      substituted = add_element(std::move(substituted), std::move(e));
    }
    for (const Link& link : card.archetype.links()) {
      substituted = append_unchecked_link(std::move(substituted), link);
    }
    std::vector<Diagnostic> errors;
    for (Diagnostic& d : validate(substituted)) {
      if (d.severity == Severity::Error) errors.push_back(std::move(d));
    }
    if (!errors.empty()) {
      fail(CatalogueErrorCode::InvalidArchetype, card.name,
           "archetype fails validation with " + std::to_string(errors.size()) + " error(s)", span,
           std::move(errors));
    }
  }

  detail::Parser parser_;
  std::vector<CatalogueError> semantic_;
};

std::string id_list(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i != 0) out += ", ";
    out += ids[i];
  }
  return out + "]";
}

}  // namespace

CatalogueLoadResult load_catalogue(std::string_view text, std::string_view file) {
  return CatalogueReader(text, file).read();
}

std::string serialize_card(const PatternCard& card) {
  std::string out = "  pattern " + card.name + " {\n";
  auto line = [&](std::string_view key, const std::string& value) {
    out += "    " + std::string(key) + " " + value + "\n";
  };
  line("title", quote(card.title));
  std::string category(to_string(card.category_primary));
  if (card.category_secondary) category += " " + std::string(to_string(*card.category_secondary));
  line("category", category);
  line("dimensions", id_list(card.dimensions));
  line("summary", quote(card.summary));
  line("applicability", quote(card.applicability));
  line("content", quote(card.content));
  if (card.discussion) line("discussion", quote(*card.discussion));
  for (const std::string& example : card.examples) line("example", quote(example));
  if (!card.related.empty()) line("related", id_list(card.related));
  out += "    archetype {\n";
  detail::write_items(out, card.archetype, 6);
  out += "    }\n  }\n";
  return out;
}

std::string serialize_catalogue(const Catalogue& catalogue) {
  std::string out =
      "catalogue " + quote(catalogue.name) + " version " + quote(catalogue.version) + " {\n";
  for (std::size_t i = 0; i < catalogue.cards.size(); ++i) {
    if (i != 0) out += '\n';
    out += serialize_card(catalogue.cards[i]);
  }
  out += "}\n";
  return out;
}

std::string_view builtin_catalogue_text() noexcept { return detail::kBuiltinCatalogueText; }

const Catalogue& builtin_catalogue() {
  static const Catalogue catalogue = [] {
    auto result = load_catalogue(builtin_catalogue_text(), "<builtin>");
    if (!result.ok()) {
      std::string message = "built-in catalogue failed to load:";
      for (const auto& e : result.errors) message += "\n" + format_catalogue_error(e);
      throw std::logic_error(message);
    }
    return std::move(*result.catalogue);
  }();
  return catalogue;
}

std::vector<const PatternCard*> search(const Catalogue& catalogue, const SearchQuery& query) {
  std::vector<std::pair<std::size_t, const PatternCard*>> hits;
  for (const PatternCard& card : catalogue.cards) {
    if (query.category && !card.in_stage(*query.category)) continue;
    if (query.dimension && std::find(card.dimensions.begin(), card.dimensions.end(),
                                     *query.dimension) == card.dimensions.end()) {
      continue;
    }
    std::size_t count = 0;
    if (query.keyword && !query.keyword->empty()) {
      for (const std::string* text : {&card.title, &card.summary, &card.content}) {
        count += detail::count_occurrences_ci(*text, *query.keyword);
      }
      if (count == 0) continue;
    }
    hits.emplace_back(count, &card);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->name < b.second->name;
  });
  std::vector<const PatternCard*> out;
  out.reserve(hits.size());
  for (const auto& [count, card] : hits) out.push_back(card);
  return out;
}

}  // namespace fairmodel
