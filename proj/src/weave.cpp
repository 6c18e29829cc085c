#include "fairmodel/weave.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fairmodel/placeholders.hpp"

namespace fairmodel {

std::string_view to_string(WeaveErrorCode code) noexcept {
  switch (code) {
    case WeaveErrorCode::MissingBinding: return "MissingBinding";
    case WeaveErrorCode::UnknownPlaceholder: return "UnknownPlaceholder";
    case WeaveErrorCode::InvalidBinding: return "InvalidBinding";
    case WeaveErrorCode::UnknownAnchor: return "UnknownAnchor";
    case WeaveErrorCode::UnknownPattern: return "UnknownPattern";
    case WeaveErrorCode::InvalidPrefix: return "InvalidPrefix";
    case WeaveErrorCode::PrefixCollision: return "PrefixCollision";
    case WeaveErrorCode::UnknownSelection: return "UnknownSelection";
    case WeaveErrorCode::SelectionNotClosed: return "SelectionNotClosed";
    case WeaveErrorCode::IncompatibleEndpoints: return "IncompatibleEndpoints";
    case WeaveErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case WeaveErrorCode::UnknownFragment: return "UnknownFragment";
    case WeaveErrorCode::DuplicateLink: return "DuplicateLink";
  }
  return "?";
}

namespace {

bool is_placeholder_word(std::string_view word) {
  if (word.empty() || word.front() < 'A' || word.front() > 'Z') return false;
  return std::all_of(word.begin(), word.end(),
                     [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); });
}

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

Binding parse_binding(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw WeaveError(WeaveErrorCode::InvalidBinding,
                     "binding `" + std::string(text) + "` is not of the form Word=replacement");
  }
  std::string_view word = text.substr(0, eq);
  if (word.size() >= 2 && word.front() == '<' && word.back() == '>') {
    word = word.substr(1, word.size() - 2);
  }
  if (!is_placeholder_word(word)) {
    throw WeaveError(WeaveErrorCode::InvalidBinding,
                     "placeholder `" + std::string(word) + "` must match [A-Z][A-Za-z]*");
  }
  return Binding{std::string(word), std::string(text.substr(eq + 1))};
}

Model instantiate_fragment(const Model& fragment, std::string_view provenance,
                           std::span<const Binding> bindings) {
  std::set<std::string> present;
  for (const Element& e : fragment.elements()) {
    for (auto& word : placeholders_in(e.name)) present.insert(std::move(word));
  }
  std::map<std::string, std::string, std::less<>> replacements;
  for (const Binding& b : bindings) {
    if (!is_placeholder_word(b.placeholder)) {
      throw WeaveError(WeaveErrorCode::InvalidBinding,
                       "placeholder `" + b.placeholder + "` must match [A-Z][A-Za-z]*",
                       {b.placeholder});
    }
    if (!replacements.emplace(b.placeholder, b.replacement).second) {
      throw WeaveError(WeaveErrorCode::InvalidBinding,
                       "placeholder `" + b.placeholder + "` bound twice", {b.placeholder});
    }
  }
  std::vector<std::string> missing;
  for (const std::string& word : present) {
    if (replacements.count(word) == 0) missing.push_back(word);
  }
  if (!missing.empty()) {
    throw WeaveError(WeaveErrorCode::MissingBinding,
                     "`" + std::string(provenance) + "` needs bindings for: " + joined(missing),
                     missing);
  }
  std::vector<std::string> unknown;
  for (const auto& [word, text] : replacements) {
    if (present.count(word) == 0) unknown.push_back(word);
  }
  if (!unknown.empty()) {
    throw WeaveError(WeaveErrorCode::UnknownPlaceholder,
                     "`" + std::string(provenance) + "` has no placeholder " + joined(unknown),
                     unknown);
  }

  Model instance(fragment.name());
  for (Element e : fragment.elements()) {
    e.span.reset();
    if (e.kind != ElementKind::Dimension) {
      e.name = substitute_placeholders(e.name, replacements);
      e.annotations[std::string(annotation_key::kPattern)] = std::string(provenance);
    }
    instance = add_element(std::move(instance), std::move(e));
  }
  for (const Link& link : fragment.links()) {
    instance = append_unchecked_link(std::move(instance), Link{link.kind, link.source, link.target, {}});
  }
  return instance;
}

Model instantiate(const PatternCard& card, std::span<const Binding> bindings) {
  return instantiate_fragment(card.archetype, card.name, bindings);
}

Model apply(Model model, const WeaveRequest& request, const Catalogue& catalogue) {
  std::optional<Model> instance;
  if (const Model* fragment = model.find_fragment(request.source)) {
    instance = instantiate_fragment(*fragment, request.source, request.bindings);
  } else if (const PatternCard* card = catalogue.find(request.source)) {
    instance = instantiate(*card, request.bindings);
  } else {
    throw WeaveError(WeaveErrorCode::UnknownPattern,
                     "no fragment or pattern named `" + request.source + "`", {request.source});
  }

  const Element* anchor = model.find(request.anchor);
  if (anchor == nullptr) {
    throw WeaveError(WeaveErrorCode::UnknownAnchor, "unknown anchor `" + request.anchor + "`",
                     {request.anchor});
  }
  if (!is_slug(request.id_prefix)) {
    throw WeaveError(WeaveErrorCode::InvalidPrefix,
                     "prefix `" + request.id_prefix + "` must match [a-z][a-z0-9_-]*",
                     {request.id_prefix});
  }
  const std::string prefix = request.id_prefix + "__";
  for (const Element& e : model.elements()) {
    if (e.id.rfind(prefix, 0) == 0) {
      throw WeaveError(WeaveErrorCode::PrefixCollision,
                       "prefix `" + request.id_prefix + "` already used by `" + e.id + "`",
                       {request.id_prefix, e.id});
    }
  }

  const Element* root = nullptr;
  std::vector<std::string> all_ids;
  for (const Element& e : instance->elements()) {
    if (e.kind == ElementKind::Dimension) continue;
    if (root == nullptr) root = &e;
    all_ids.push_back(e.id);
  }
  if (root == nullptr) {
    throw WeaveError(WeaveErrorCode::UnknownPattern, "`" + request.source + "` has no elements",
                     {request.source});
  }

  std::set<std::string, std::less<>> selected;
  if (request.selection) {
    std::vector<std::string> unknown;
    for (const std::string& id : *request.selection) {
      const Element* e = instance->find(id);
      if (e == nullptr || e->kind == ElementKind::Dimension) {
        unknown.push_back(id);
      } else {
        selected.insert(id);
      }
    }
    if (!unknown.empty()) {
      throw WeaveError(WeaveErrorCode::UnknownSelection,
                       "not archetype elements of `" + request.source + "`: " + joined(unknown),
                       unknown);
    }
    if (selected.count(root->id) == 0) {
      throw WeaveError(WeaveErrorCode::SelectionNotClosed,
                       "selection must include the archetype root `" + root->id + "`", {root->id});
    }
  } else {
    selected.insert(all_ids.begin(), all_ids.end());
  }
  for (const Link& link : instance->links()) {
    if (selected.count(link.source) != 0 && selected.count(link.target) == 0) {
      throw WeaveError(WeaveErrorCode::SelectionNotClosed,
                       "selected `" + link.source + "` " + std::string(keyword(link.kind)) +
                           " unselected `" + link.target + "`",
                       {link.source, link.target});
    }
  }

  const LinkKind attach = request.attach_kind.value_or(
      root->kind == ElementKind::Obstacle ? LinkKind::Obstructs : LinkKind::Refines);
  if (!endpoints_compatible(attach, root->kind, anchor->kind)) {
    throw WeaveError(WeaveErrorCode::IncompatibleEndpoints,
                     std::string(display_name(attach)) + " requires " +
                         std::string(endpoint_rule(attach)) + ", got " +
                         std::string(display_name(root->kind)) + " `" + root->id + "` -> " +
                         std::string(display_name(anchor->kind)) + " `" + anchor->id + "`",
                     {root->id, anchor->id});
  }
  const std::string anchor_id = anchor->id;
  const std::string root_id = prefix + root->id;

  // Dimensions used by the grafted values, in archetype order.
  for (const Element& dim : instance->elements()) {
    if (dim.kind != ElementKind::Dimension || model.contains(dim.id)) continue;
    bool used = std::any_of(instance->elements().begin(), instance->elements().end(),
                            [&](const Element& e) {
                              return selected.count(e.id) != 0 && e.dimension == dim.id;
                            });
    if (used) model = add_element(std::move(model), dim);
  }
  for (Element e : instance->elements()) {
    if (selected.count(e.id) == 0) continue;
    e.id = prefix + e.id;
    model = add_element(std::move(model), std::move(e));
  }
  for (const Link& link : instance->links()) {
    if (selected.count(link.source) == 0) continue;
    model = add_link(std::move(model), link.kind, prefix + link.source, prefix + link.target);
  }
  return add_link(std::move(model), attach, root_id, anchor_id);
}

Model import_fragment(Model model, std::string_view element, std::string_view fragment) {
  if (!model.contains(element)) {
    throw WeaveError(WeaveErrorCode::UnknownEndpoint, "unknown element `" + std::string(element) + "`",
                     {std::string(element)});
  }
  if (model.find_fragment(fragment) == nullptr) {
    throw WeaveError(WeaveErrorCode::UnknownFragment,
                     "unknown fragment `" + std::string(fragment) + "`", {std::string(fragment)});
  }
  try {
    return add_link(std::move(model), LinkKind::DetailedBy, std::string(element),
                    std::string(fragment));
  } catch (const ModelError& e) {
    auto code = e.code() == ModelErrorCode::DuplicateLink ? WeaveErrorCode::DuplicateLink
                                                           : WeaveErrorCode::IncompatibleEndpoints;
    throw WeaveError(code, e.what(), {std::string(element), std::string(fragment)});
  }
}

}  // namespace fairmodel
