#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/dsl.hpp"
#include "fairmodel/model.hpp"
#include "fairmodel/validator.hpp"

namespace fairmodel {

/// Catalogue stages: the four steps of the improvement cycle plus the
/// cross-cutting governance activity.
enum class Stage : std::uint8_t { Design, Adoption, Implementation, Evolution, Governance };

inline constexpr std::array<Stage, 5> kAllStages = {
    Stage::Design, Stage::Adoption, Stage::Implementation, Stage::Evolution, Stage::Governance};

std::string_view to_string(Stage stage) noexcept;
std::optional<Stage> stage_from_string(std::string_view text) noexcept;

struct PatternCard {
  std::string name;
  std::string title;
  Stage category_primary = Stage::Design;
  std::optional<Stage> category_secondary;
  std::vector<std::string> dimensions;
  std::string summary;
  std::string applicability;
  std::string content;
  std::optional<std::string> discussion;
  std::vector<std::string> examples;
  std::vector<std::string> related;
  /// Generic fragment; element names may contain `<Word>` placeholders.
  /// Its root is the first non-Dimension element.
  Model archetype;

  bool in_stage(Stage stage) const noexcept {
    return category_primary == stage || category_secondary == stage;
  }
  const Element& root() const;
  /// Distinct placeholder words (without brackets), sorted.
  std::vector<std::string> placeholders() const;
  /// Non-Dimension archetype elements.
  std::size_t census_elements() const;
  std::size_t census_links() const { return archetype.links().size(); }
};

bool cards_equal(const PatternCard& a, const PatternCard& b);

struct Catalogue {
  std::string name;
  std::string version;
  std::vector<PatternCard> cards;

  const PatternCard* find(std::string_view card_name) const;
};

bool catalogues_equal(const Catalogue& a, const Catalogue& b);

enum class CatalogueErrorCode : std::uint8_t {
  Parse,
  InvalidArchetype,
  UnknownCategory,
  UnknownDimension,
  MissingField,
  DuplicateField,
  DuplicatePattern,
};

std::string_view to_string(CatalogueErrorCode code) noexcept;

struct CatalogueError {
  CatalogueErrorCode code = CatalogueErrorCode::Parse;
  std::string card;
  std::string message;
  std::optional<SourceSpan> span;
  /// For InvalidArchetype: the archetype's E-diagnostics.
  std::vector<Diagnostic> diagnostics;
};

std::string format_catalogue_error(const CatalogueError& error);

/// Info-level finding: a related-pattern name that is not in the catalogue.
struct CatalogueNotice {
  std::string card;
  std::string related;
};

struct CatalogueLoadResult {
  std::optional<Catalogue> catalogue;
  std::vector<CatalogueError> errors;
  std::vector<CatalogueNotice> notices;

  bool ok() const noexcept { return catalogue.has_value(); }
};

/// Reads the `.fairpat` format. Archetypes are validated after replacing
/// each `<Word>` with `Word`; any E-code rejects the card.
CatalogueLoadResult load_catalogue(std::string_view text, std::string_view file = "<catalogue>");

std::string serialize_catalogue(const Catalogue& catalogue);
/// One `pattern` block as it appears inside a catalogue.
std::string serialize_card(const PatternCard& card);

/// The six shipped fairness patterns.
const Catalogue& builtin_catalogue();
/// Source text of the shipped catalogue.
std::string_view builtin_catalogue_text() noexcept;

struct SearchQuery {
  std::optional<Stage> category;
  std::optional<std::string> dimension;
  std::optional<std::string> keyword;
};

/// Conjunctive filter. Keyword hits are counted case-insensitively over
/// title, summary and content; results rank by hit count (descending) then
/// name. The returned pointers refer into `catalogue`.
std::vector<const PatternCard*> search(const Catalogue& catalogue, const SearchQuery& query);

}  // namespace fairmodel
