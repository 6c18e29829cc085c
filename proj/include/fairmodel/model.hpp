#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/source_span.hpp"

namespace fairmodel {

enum class ElementKind : std::uint8_t {
  Goal,
  Value,
  Assumption,
  Obstacle,
  Indicator,
  Regulation,
  Activity,
  Dimension,
  FragmentRef,
};

inline constexpr std::array<ElementKind, 9> kAllElementKinds = {
    ElementKind::Goal,      ElementKind::Value,      ElementKind::Assumption,
    ElementKind::Obstacle,  ElementKind::Indicator,  ElementKind::Regulation,
    ElementKind::Activity,  ElementKind::Dimension,  ElementKind::FragmentRef,
};

/// Goal, Value and Assumption: the kinds that can be refined and obstructed.
bool is_intention(ElementKind kind) noexcept;

/// DSL keyword for the kind ("goal", "value", ..., "dimension", "ref").
std::string_view keyword(ElementKind kind) noexcept;
std::optional<ElementKind> element_kind_from_keyword(std::string_view word) noexcept;
/// Human-readable kind name used in messages ("Goal", "FragmentRef", ...).
std::string_view display_name(ElementKind kind) noexcept;

enum class LinkKind : std::uint8_t {
  Refines,
  Measures,
  Regulates,
  Operationalizes,
  Obstructs,
  Resolves,
  Underpins,
  DetailedBy,
};

inline constexpr std::array<LinkKind, 8> kAllLinkKinds = {
    LinkKind::Refines,   LinkKind::Measures, LinkKind::Regulates,
    LinkKind::Operationalizes, LinkKind::Obstructs, LinkKind::Resolves,
    LinkKind::Underpins, LinkKind::DetailedBy,
};

/// Relation keyword written in an element block ("refines", ..., "details").
std::string_view keyword(LinkKind kind) noexcept;
std::optional<LinkKind> link_kind_from_keyword(std::string_view word) noexcept;
/// CLI/display spelling ("Refines", ..., "DetailedBy"). Parsing accepts both
/// spellings case-insensitively.
std::string_view display_name(LinkKind kind) noexcept;
std::optional<LinkKind> link_kind_from_name(std::string_view name) noexcept;

/// Endpoint-kind compatibility table. Every persisted link satisfies it.
bool endpoints_compatible(LinkKind kind, ElementKind source, ElementKind target) noexcept;
/// Table row for a link kind, e.g. "Activity -> Obstacle".
std::string_view endpoint_rule(LinkKind kind) noexcept;

enum class Attribution : std::uint8_t { Unspecified, System, Environment };

namespace annotation_key {
inline constexpr std::string_view kTarget = "target";
inline constexpr std::string_view kAccepted = "accepted";
inline constexpr std::string_view kPattern = "pattern";
inline constexpr std::string_view kMilestone = "milestone";
}  // namespace annotation_key

inline constexpr std::array<std::string_view, 5> kAcceptanceStrategies = {
    "accept", "avoid", "reduce", "restore", "weaken"};

bool is_acceptance_strategy(std::string_view word) noexcept;

/// `[a-z][a-z0-9_-]*`
bool is_slug(std::string_view text) noexcept;

struct Element {
  std::string id;
  ElementKind kind = ElementKind::Goal;
  std::string name;
  std::optional<std::string> dimension;
  Attribution attribution = Attribution::Unspecified;
  std::map<std::string, std::string, std::less<>> annotations;
  std::optional<SourceSpan> span;

  const std::string* annotation(std::string_view key) const;
  bool milestone() const { return annotation(annotation_key::kMilestone) != nullptr; }
};

struct Link {
  LinkKind kind = LinkKind::Refines;
  std::string source;
  std::string target;
  std::optional<SourceSpan> span;

  bool same_edge(const Link& other) const noexcept {
    return kind == other.kind && source == other.source && target == other.target;
  }
};

enum class ModelErrorCode : std::uint8_t {
  DuplicateId,
  InvalidId,
  IllegalField,
  UnknownEndpoint,
  IncompatibleEndpoints,
  DuplicateLink,
  NestedFragment,
};

std::string_view to_string(ModelErrorCode code) noexcept;

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ModelErrorCode code() const noexcept { return code_; }

 private:
  ModelErrorCode code_;
};

/// A named element/link graph. Fragment definitions are Models themselves
/// (named by a slug) and never nest further.
///
/// Models are values: every construction operation takes a model by value
/// and returns the extended copy, so callers that no longer need the input
/// should move it in.
class Model {
 public:
  Model() = default;
  explicit Model(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::span<const Link> links() const noexcept { return links_; }
  std::span<const Model> fragments() const noexcept { return fragments_; }

  const Element* find(std::string_view id) const;
  const Model* find_fragment(std::string_view name) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  bool has_link(LinkKind kind, std::string_view source, std::string_view target) const;

  /// Kind an id resolves to as a link endpoint: the element's kind, or
  /// FragmentRef for a DetailedBy target naming a declared fragment.
  std::optional<ElementKind> endpoint_kind(LinkKind kind, std::string_view id, bool as_target) const;

  friend Model add_element(Model model, Element element);
  friend Model add_link(Model model, Link link);
  friend Model add_fragment(Model model, Model fragment);
  friend Model append_unchecked_link(Model model, Link link);

 private:
  std::string name_;
  std::vector<Element> elements_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<Link> links_;
  std::vector<Model> fragments_;
};

/// Throws ModelError{DuplicateId, InvalidId, IllegalField}.
Model add_element(Model model, Element element);

/// Checked insertion. Throws ModelError{UnknownEndpoint,
/// IncompatibleEndpoints, DuplicateLink}.
Model add_link(Model model, Link link);
Model add_link(Model model, LinkKind kind, std::string source, std::string target);

/// Throws ModelError{NestedFragment, InvalidId, DuplicateId}.
Model add_fragment(Model model, Model fragment);

/// Appends without endpoint checks. The parser uses this for late-bound
/// references; tests use it to hand-build malformed models.
Model append_unchecked_link(Model model, Link link);

/// Depth-first preorder from `root` over reversed incoming links of every
/// kind except DetailedBy: refinement children plus the activities,
/// indicators, regulations, assumptions and obstacles attached to them.
/// Children follow link insertion order; visited nodes are skipped, so
/// cyclic input terminates. Throws UnknownEndpoint.
std::vector<std::string> subtree(const Model& model, std::string_view root);

/// Equality ignoring spans and the relative placement of dimensions versus
/// other elements; links are compared grouped by source element, which is
/// the order the canonical text preserves.
bool structurally_equal(const Model& a, const Model& b);

}  // namespace fairmodel
