#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/catalogue.hpp"
#include "fairmodel/model.hpp"

namespace fairmodel {

struct Binding {
  std::string placeholder;  // without angle brackets
  std::string replacement;
};

/// Parses `Word=replacement`. Throws WeaveError{InvalidBinding}.
Binding parse_binding(std::string_view text);

enum class WeaveErrorCode : std::uint8_t {
  MissingBinding,
  UnknownPlaceholder,
  InvalidBinding,
  UnknownAnchor,
  UnknownPattern,
  InvalidPrefix,
  PrefixCollision,
  UnknownSelection,
  SelectionNotClosed,
  IncompatibleEndpoints,
  UnknownEndpoint,
  UnknownFragment,
  DuplicateLink,
};

std::string_view to_string(WeaveErrorCode code) noexcept;

class WeaveError : public std::runtime_error {
 public:
  WeaveError(WeaveErrorCode code, const std::string& message, std::vector<std::string> subjects = {})
      : std::runtime_error(message), code_(code), subjects_(std::move(subjects)) {}

  WeaveErrorCode code() const noexcept { return code_; }
  /// Placeholders, ids or names the error is about.
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }

 private:
  WeaveErrorCode code_;
  std::vector<std::string> subjects_;
};

/// Substitutes every placeholder in the archetype names and stamps each
/// non-Dimension element with a `pattern` annotation naming the card.
/// Element ids are the archetype's own. Throws MissingBinding (all
/// uncovered placeholders, sorted) or UnknownPlaceholder.
Model instantiate(const PatternCard& card, std::span<const Binding> bindings);

/// Same for a plain fragment; `provenance` becomes the `pattern` annotation.
Model instantiate_fragment(const Model& fragment, std::string_view provenance,
                           std::span<const Binding> bindings);

struct WeaveRequest {
  /// Fragment declared in the model, or a catalogue card.
  std::string source;
  std::string anchor;
  /// Defaults to Obstructs for obstacle-rooted archetypes, Refines otherwise.
  std::optional<LinkKind> attach_kind;
  std::vector<Binding> bindings;
  /// Archetype ids to graft; all non-Dimension elements when absent.
  std::optional<std::vector<std::string>> selection;
  std::string id_prefix;
};

/// Grafts the selected archetype elements into `model` as
/// `<prefix>__<id>`, keeps the links among them, and links the archetype
/// root to the anchor. Archetype dimensions are merged by id.
Model apply(Model model, const WeaveRequest& request, const Catalogue& catalogue);

/// Adds `element` DetailedBy `fragment`. Throws WeaveError{UnknownEndpoint,
/// UnknownFragment, DuplicateLink}.
Model import_fragment(Model model, std::string_view element, std::string_view fragment);

}  // namespace fairmodel
