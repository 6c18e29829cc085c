#include "fairmodel/model.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace fairmodel {

bool is_intention(ElementKind kind) noexcept {
  return kind == ElementKind::Goal || kind == ElementKind::Value || kind == ElementKind::Assumption;
}

std::string_view keyword(ElementKind kind) noexcept {
  switch (kind) {
    case ElementKind::Goal: return "goal";
    case ElementKind::Value: return "value";
    case ElementKind::Assumption: return "assumption";
    case ElementKind::Obstacle: return "obstacle";
    case ElementKind::Indicator: return "indicator";
    case ElementKind::Regulation: return "regulation";
    case ElementKind::Activity: return "activity";
    case ElementKind::Dimension: return "dimension";
    case ElementKind::FragmentRef: return "ref";
  }
  return "?";
}

std::optional<ElementKind> element_kind_from_keyword(std::string_view word) noexcept {
  for (ElementKind kind : kAllElementKinds) {
    if (keyword(kind) == word) return kind;
  }
  return std::nullopt;
}

std::string_view display_name(ElementKind kind) noexcept {
  switch (kind) {
    case ElementKind::Goal: return "Goal";
    case ElementKind::Value: return "Value";
    case ElementKind::Assumption: return "Assumption";
    case ElementKind::Obstacle: return "Obstacle";
    case ElementKind::Indicator: return "Indicator";
    case ElementKind::Regulation: return "Regulation";
    case ElementKind::Activity: return "Activity";
    case ElementKind::Dimension: return "Dimension";
    case ElementKind::FragmentRef: return "FragmentRef";
  }
  return "?";
}

std::string_view keyword(LinkKind kind) noexcept {
  switch (kind) {
    case LinkKind::Refines: return "refines";
    case LinkKind::Measures: return "measures";
    case LinkKind::Regulates: return "regulates";
    case LinkKind::Operationalizes: return "operationalizes";
    case LinkKind::Obstructs: return "obstructs";
    case LinkKind::Resolves: return "resolves";
    case LinkKind::Underpins: return "underpins";
    case LinkKind::DetailedBy: return "details";
  }
  return "?";
}

std::optional<LinkKind> link_kind_from_keyword(std::string_view word) noexcept {
  for (LinkKind kind : kAllLinkKinds) {
    if (keyword(kind) == word) return kind;
  }
  return std::nullopt;
}

std::string_view display_name(LinkKind kind) noexcept {
  switch (kind) {
    case LinkKind::Refines: return "Refines";
    case LinkKind::Measures: return "Measures";
    case LinkKind::Regulates: return "Regulates";
    case LinkKind::Operationalizes: return "Operationalizes";
    case LinkKind::Obstructs: return "Obstructs";
    case LinkKind::Resolves: return "Resolves";
    case LinkKind::Underpins: return "Underpins";
    case LinkKind::DetailedBy: return "DetailedBy";
  }
  return "?";
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::optional<LinkKind> link_kind_from_name(std::string_view name) noexcept {
  for (LinkKind kind : kAllLinkKinds) {
    if (iequals(display_name(kind), name) || iequals(keyword(kind), name)) return kind;
  }
  return std::nullopt;
}

bool endpoints_compatible(LinkKind kind, ElementKind source, ElementKind target) noexcept {
  switch (kind) {
    case LinkKind::Refines: return is_intention(source) && is_intention(target);
    case LinkKind::Measures: return source == ElementKind::Indicator && target == ElementKind::Value;
    case LinkKind::Regulates: return source == ElementKind::Regulation && is_intention(target);
    case LinkKind::Operationalizes: return source == ElementKind::Activity && is_intention(target);
    case LinkKind::Obstructs: return source == ElementKind::Obstacle && is_intention(target);
    case LinkKind::Resolves: return source == ElementKind::Activity && target == ElementKind::Obstacle;
    case LinkKind::Underpins: return source == ElementKind::Assumption && is_intention(target);
    case LinkKind::DetailedBy:
      return source != ElementKind::Dimension && target == ElementKind::FragmentRef;
  }
  return false;
}

std::string_view endpoint_rule(LinkKind kind) noexcept {
  switch (kind) {
    case LinkKind::Refines: return "intention -> intention";
    case LinkKind::Measures: return "Indicator -> Value";
    case LinkKind::Regulates: return "Regulation -> intention";
    case LinkKind::Operationalizes: return "Activity -> intention";
    case LinkKind::Obstructs: return "Obstacle -> intention";
    case LinkKind::Resolves: return "Activity -> Obstacle";
    case LinkKind::Underpins: return "Assumption -> intention";
    case LinkKind::DetailedBy: return "any non-Dimension element -> FragmentRef";
  }
  return "?";
}

bool is_acceptance_strategy(std::string_view word) noexcept {
  return std::find(kAcceptanceStrategies.begin(), kAcceptanceStrategies.end(), word) !=
         kAcceptanceStrategies.end();
}

bool is_slug(std::string_view text) noexcept {
  if (text.empty() || text.front() < 'a' || text.front() > 'z') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

const std::string* Element::annotation(std::string_view key) const {
  auto it = annotations.find(key);
  return it == annotations.end() ? nullptr : &it->second;
}

std::string_view to_string(ModelErrorCode code) noexcept {
  switch (code) {
    case ModelErrorCode::DuplicateId: return "DuplicateId";
    case ModelErrorCode::InvalidId: return "InvalidId";
    case ModelErrorCode::IllegalField: return "IllegalField";
    case ModelErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ModelErrorCode::IncompatibleEndpoints: return "IncompatibleEndpoints";
    case ModelErrorCode::DuplicateLink: return "DuplicateLink";
    case ModelErrorCode::NestedFragment: return "NestedFragment";
  }
  return "?";
}

const Element* Model::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &elements_[it->second];
}

const Model* Model::find_fragment(std::string_view name) const {
  auto it = std::find_if(fragments_.begin(), fragments_.end(),
                         [&](const Model& f) { return f.name() == name; });
  return it == fragments_.end() ? nullptr : &*it;
}

bool Model::has_link(LinkKind kind, std::string_view source, std::string_view target) const {
  return std::any_of(links_.begin(), links_.end(), [&](const Link& l) {
    return l.kind == kind && l.source == source && l.target == target;
  });
}

std::optional<ElementKind> Model::endpoint_kind(LinkKind kind, std::string_view id,
                                                bool as_target) const {
  if (const Element* element = find(id)) return element->kind;
  if (as_target && kind == LinkKind::DetailedBy && find_fragment(id) != nullptr) {
    return ElementKind::FragmentRef;
  }
  return std::nullopt;
}

namespace {

void check_fields(const Element& element) {
  auto illegal = [&](const std::string& what) {
    throw ModelError(ModelErrorCode::IllegalField,
                     "element `" + element.id + "` (" + std::string(display_name(element.kind)) +
                         "): " + what);
  };
  if (element.dimension && element.kind != ElementKind::Value) {
    illegal("a dimension is only allowed on Value elements");
  }
  if (element.kind == ElementKind::Dimension &&
      (element.attribution != Attribution::Unspecified || !element.annotations.empty())) {
    illegal("dimensions carry no attribution or annotations");
  }
  for (const auto& [key, text] : element.annotations) {
    if (key == annotation_key::kAccepted) {
      if (element.kind != ElementKind::Obstacle) illegal("`accepted` is only allowed on obstacles");
      if (!is_slug(text)) illegal("`accepted` strategy must be a word, got \"" + text + "\"");
    } else if (key == annotation_key::kMilestone) {
      if (!text.empty()) illegal("`milestone` is a flag and takes no text");
    } else if (key != annotation_key::kTarget && key != annotation_key::kPattern) {
      illegal("unknown annotation key `" + key + "`");
    }
  }
}

}  // namespace

Model add_element(Model model, Element element) {
  if (!is_slug(element.id)) {
    throw ModelError(ModelErrorCode::InvalidId,
                     "invalid element id `" + element.id + "` (expected [a-z][a-z0-9_-]*)");
  }
  if (model.contains(element.id)) {
    throw ModelError(ModelErrorCode::DuplicateId, "element id `" + element.id + "` already bound");
  }
  check_fields(element);
  model.index_.emplace(element.id, model.elements_.size());
  model.elements_.push_back(std::move(element));
  return model;
}

Model add_link(Model model, Link link) {
  auto source = model.endpoint_kind(link.kind, link.source, false);
  auto target = model.endpoint_kind(link.kind, link.target, true);
  if (!source || !target) {
    throw ModelError(ModelErrorCode::UnknownEndpoint,
                     std::string(display_name(link.kind)) + " link `" + link.source + "` -> `" +
                         link.target + "`: unknown endpoint `" +
                         (!source ? link.source : link.target) + "`");
  }
  if (!endpoints_compatible(link.kind, *source, *target)) {
    throw ModelError(ModelErrorCode::IncompatibleEndpoints,
                     std::string(display_name(link.kind)) + " requires " +
                         std::string(endpoint_rule(link.kind)) + ", got " +
                         std::string(display_name(*source)) + " -> " +
                         std::string(display_name(*target)));
  }
  if (model.has_link(link.kind, link.source, link.target)) {
    throw ModelError(ModelErrorCode::DuplicateLink,
                     "duplicate " + std::string(display_name(link.kind)) + " link `" +
                         link.source + "` -> `" + link.target + "`");
  }
  model.links_.push_back(std::move(link));
  return model;
}

Model add_link(Model model, LinkKind kind, std::string source, std::string target) {
  return add_link(std::move(model), Link{kind, std::move(source), std::move(target), std::nullopt});
}

Model add_fragment(Model model, Model fragment) {
  if (!fragment.fragments_.empty()) {
    throw ModelError(ModelErrorCode::NestedFragment,
                     "fragment `" + fragment.name() + "` may not declare fragments");
  }
  if (!is_slug(fragment.name())) {
    throw ModelError(ModelErrorCode::InvalidId, "invalid fragment name `" + fragment.name() + "`");
  }
  if (model.find_fragment(fragment.name()) != nullptr) {
    throw ModelError(ModelErrorCode::DuplicateId,
                     "fragment `" + fragment.name() + "` already declared");
  }
  model.fragments_.push_back(std::move(fragment));
  return model;
}

Model append_unchecked_link(Model model, Link link) {
  model.links_.push_back(std::move(link));
  return model;
}

namespace {

bool subtree_edge(LinkKind kind) { return kind != LinkKind::DetailedBy; }

void visit(const Model& model, const std::string& id, std::vector<std::string>& order,
           std::map<std::string, bool, std::less<>>& seen) {
  seen[id] = true;
  order.push_back(id);
  for (const Link& link : model.links()) {
    if (!subtree_edge(link.kind) || link.target != id) continue;
    if (!model.contains(link.source) || seen.count(link.source) != 0) continue;
    visit(model, link.source, order, seen);
  }
}

}  // namespace

std::vector<std::string> subtree(const Model& model, std::string_view root) {
  const Element* element = model.find(root);
  if (element == nullptr) {
    throw ModelError(ModelErrorCode::UnknownEndpoint, "unknown element `" + std::string(root) + "`");
  }
  std::vector<std::string> order;
  std::map<std::string, bool, std::less<>> seen;
  visit(model, element->id, order, seen);
  return order;
}

namespace {

bool elements_equal(const Element& a, const Element& b) {
  return a.id == b.id && a.kind == b.kind && a.name == b.name && a.dimension == b.dimension &&
         a.attribution == b.attribution && a.annotations == b.annotations;
}

std::vector<const Element*> of_kind_group(const Model& m, bool dimensions) {
  std::vector<const Element*> out;
  for (const Element& e : m.elements()) {
    if ((e.kind == ElementKind::Dimension) == dimensions) out.push_back(&e);
  }
  return out;
}

/// Links stably ordered by the position of their source element.
std::vector<const Link*> grouped_links(const Model& m) {
  std::vector<const Link*> out;
  for (const Link& l : m.links()) out.push_back(&l);
  auto position = [&](const Link* l) {
    auto elements = m.elements();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].id == l->source) return i;
    }
    return elements.size();
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const Link* x, const Link* y) { return position(x) < position(y); });
  return out;
}

}  // namespace

bool structurally_equal(const Model& a, const Model& b) {
  if (a.name() != b.name()) return false;
  for (bool dims : {true, false}) {
    auto xs = of_kind_group(a, dims);
    auto ys = of_kind_group(b, dims);
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!elements_equal(*xs[i], *ys[i])) return false;
    }
  }
  auto la = grouped_links(a);
  auto lb = grouped_links(b);
  if (la.size() != lb.size()) return false;
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (!la[i]->same_edge(*lb[i])) return false;
  }
  if (a.fragments().size() != b.fragments().size()) return false;
  for (std::size_t i = 0; i < a.fragments().size(); ++i) {
    if (!structurally_equal(a.fragments()[i], b.fragments()[i])) return false;
  }
  return true;
}

}  // namespace fairmodel
