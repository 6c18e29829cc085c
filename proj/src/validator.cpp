#include "fairmodel/validator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace fairmodel {

std::string_view to_string(DiagnosticCode code) noexcept {
  switch (code) {
    case DiagnosticCode::E001: return "E001";
    case DiagnosticCode::E002: return "E002";
    case DiagnosticCode::E003: return "E003";
    case DiagnosticCode::E004: return "E004";
    case DiagnosticCode::E005: return "E005";
    case DiagnosticCode::E006: return "E006";
    case DiagnosticCode::W101: return "W101";
    case DiagnosticCode::W102: return "W102";
    case DiagnosticCode::W103: return "W103";
    case DiagnosticCode::W104: return "W104";
    case DiagnosticCode::W105: return "W105";
  }
  return "?";
}

std::optional<DiagnosticCode> diagnostic_code_from_string(std::string_view text) noexcept {
  for (DiagnosticCode code : kAllDiagnosticCodes) {
    if (to_string(code) == text) return code;
  }
  return std::nullopt;
}

Severity severity_of(DiagnosticCode code) noexcept {
  return to_string(code).front() == 'E' ? Severity::Error : Severity::Warning;
}

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::Error ? "error" : "warning";
}

bool is_canonical_dimension(std::string_view name) noexcept {
  return std::find(kCanonicalDimensions.begin(), kCanonicalDimensions.end(), name) !=
         kCanonicalDimensions.end();
}

std::optional<std::string_view> canonical_alias(std::string_view name) noexcept {
  if (name == "individual") return "personal";
  if (name == "environ") return "environmental";
  return std::nullopt;
}

bool has_errors(std::span<const Diagnostic> diagnostics) noexcept {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d, std::string_view fallback_file) {
  std::string out;
  if (d.span) {
    out = d.span->file + ":" + std::to_string(d.span->line_start) + ":" +
          std::to_string(d.span->col_start);
  } else {
    out = std::string(fallback_file) + ":0:0";
  }
  out += ": ";
  out += to_string(d.code);
  out += ' ';
  out += to_string(d.severity);
  out += ": " + d.message + " [";
  for (std::size_t i = 0; i < d.elements.size(); ++i) {
    if (i != 0) out += ", ";
    out += d.elements[i];
  }
  out += "]";
  return out;
}

namespace {

class Checker {
 public:
  Checker(const Model& model, std::string context, const Model* parent)
      : model_(model), context_(std::move(context)), parent_(parent) {}

  void run() {
    check_elements();
    check_links();
    check_refinement_cycles();
    check_fragments();
    check_obstacles();
    check_values();
    check_assumptions();
  }

  std::vector<Diagnostic> take() { return std::move(out_); }

 private:
  void emit(DiagnosticCode code, std::string message, std::vector<std::string> ids,
            std::optional<SourceSpan> span) {
    if (!context_.empty()) message = "in fragment `" + context_ + "`: " + message;
    out_.push_back(Diagnostic{code, severity_of(code), std::move(message), std::move(ids),
                              std::move(span)});
  }

  static std::string q(std::string_view id) { return "`" + std::string(id) + "`"; }

  void check_elements() {
    for (const Element& e : model_.elements()) {
      if (e.kind == ElementKind::Value) {
        if (!e.dimension) {
          emit(DiagnosticCode::E002, "value " + q(e.id) + " has no dimension", {e.id}, e.span);
        } else {
          const Element* dim = model_.find(*e.dimension);
          if (dim == nullptr || dim->kind != ElementKind::Dimension) {
            emit(DiagnosticCode::E001,
                 "value " + q(e.id) + " names unknown dimension " + q(*e.dimension),
                 {e.id, *e.dimension}, e.span);
          } else if (!is_canonical_dimension(*e.dimension)) {
            std::string hint;
            if (auto alias = canonical_alias(*e.dimension)) {
              hint = " (did you mean `" + std::string(*alias) + "`?)";
            }
            emit(DiagnosticCode::W103,
                 "value " + q(e.id) + " uses non-canonical dimension " + q(*e.dimension) + hint,
                 {e.id, *e.dimension}, e.span);
          }
        }
      }
      if (const std::string* strategy = e.annotation(annotation_key::kAccepted)) {
        if (!is_acceptance_strategy(*strategy)) {
          emit(DiagnosticCode::E005,
               "obstacle " + q(e.id) + " has unknown acceptance strategy " + q(*strategy) +
                   " (expected accept, avoid, reduce, restore or weaken)",
               {e.id}, e.span);
        }
      }
    }
  }

  void check_links() {
    for (const Link& link : model_.links()) {
      const Element* source = model_.find(link.source);
      auto span = link.span ? link.span : (source ? source->span : std::nullopt);
      if (source == nullptr) {
        emit(DiagnosticCode::E001,
             std::string(display_name(link.kind)) + " link from unknown element " + q(link.source),
             {link.source}, span);
        continue;
      }
      auto target = model_.endpoint_kind(link.kind, link.target, true);
      if (!target) {
        if (link.kind == LinkKind::DetailedBy) {
          emit(DiagnosticCode::E006,
               q(link.source) + " is detailed by unknown fragment " + q(link.target),
               {link.source, link.target}, span);
        } else {
          emit(DiagnosticCode::E001,
               std::string(display_name(link.kind)) + " link from " + q(link.source) +
                   " names unknown element " + q(link.target),
               {link.source, link.target}, span);
        }
        continue;
      }
      if (!endpoints_compatible(link.kind, source->kind, *target)) {
        emit(DiagnosticCode::E004,
             std::string(display_name(link.kind)) + " requires " +
                 std::string(endpoint_rule(link.kind)) + ", got " +
                 std::string(display_name(source->kind)) + " -> " +
                 std::string(display_name(*target)),
             {link.source, link.target}, span);
      }
    }
  }

  // One E003 per strongly connected component that contains a cycle.
  void check_refinement_cycles() {
    std::map<std::string, std::vector<std::string>, std::less<>> graph;
    std::set<std::string, std::less<>> self_loops;
    for (const Link& link : model_.links()) {
      if (link.kind != LinkKind::Refines) continue;
      if (!model_.contains(link.source) || !model_.contains(link.target)) continue;
      graph[link.source].push_back(link.target);
      if (link.source == link.target) self_loops.insert(link.source);
    }
    // Tarjan, iterating nodes in element order for deterministic output.
    std::map<std::string, int, std::less<>> index;
    std::map<std::string, int, std::less<>> low;
    std::set<std::string, std::less<>> on_stack;
    std::vector<std::string> stack;
    int counter = 0;
    std::function<void(const std::string&)> connect = [&](const std::string& v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack.insert(v);
      for (const std::string& w : graph[v]) {
        if (index.count(w) == 0) {
          connect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.count(w) != 0) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] != index[v]) return;
      std::vector<std::string> component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
      } while (w != v);
      if (component.size() > 1 || self_loops.count(v) != 0) report_cycle(std::move(component));
    };
    for (const Element& e : model_.elements()) {
      if (graph.count(e.id) != 0 && index.count(e.id) == 0) connect(e.id);
    }
  }

  void report_cycle(std::vector<std::string> component) {
    // Anchor the finding at the earliest declared member.
    std::sort(component.begin(), component.end(), [&](const std::string& a, const std::string& b) {
      return position(a) < position(b);
    });
    std::string members;
    for (std::size_t i = 0; i < component.size(); ++i) {
      if (i != 0) members += ", ";
      members += q(component[i]);
    }
    const Element* first = model_.find(component.front());
    emit(DiagnosticCode::E003, "refinement cycle through " + members, component,
         first ? first->span : std::nullopt);
  }

  std::size_t position(std::string_view id) const {
    auto elements = model_.elements();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].id == id) return i;
    }
    return elements.size();
  }

  void check_fragments() {
    if (parent_ != nullptr) return;
    for (const Model& fragment : model_.fragments()) {
      const Element* clash = model_.find(fragment.name());
      if (clash != nullptr && clash->kind != ElementKind::FragmentRef) {
        emit(DiagnosticCode::E006,
             "fragment " + q(fragment.name()) + " collides with " +
                 std::string(display_name(clash->kind)) + " element of the same id",
             {fragment.name()}, clash->span);
      }
    }
  }

  void check_obstacles() {
    for (const Element& e : model_.elements()) {
      if (e.kind != ElementKind::Obstacle) continue;
      bool resolved = false;
      bool obstructs = false;
      for (const Link& link : model_.links()) {
        if (link.kind == LinkKind::Resolves && link.target == e.id) resolved = true;
        if (link.kind == LinkKind::Obstructs && link.source == e.id) obstructs = true;
      }
      if (!resolved && e.annotation(annotation_key::kAccepted) == nullptr) {
        emit(DiagnosticCode::W101,
             "open obstacle " + q(e.id) + ": neither resolved by an activity nor accepted", {e.id},
             e.span);
      }
      if (!obstructs) {
        emit(DiagnosticCode::W105, "obstacle " + q(e.id) + " obstructs nothing", {e.id}, e.span);
      }
    }
  }

  void check_values() {
    for (const Element& e : model_.elements()) {
      if (e.kind != ElementKind::Value) continue;
      bool refined = false;
      bool supported = false;
      for (const Link& link : model_.links()) {
        if (link.target != e.id) continue;
        if (link.kind == LinkKind::Refines && model_.contains(link.source)) refined = true;
        if (link.kind == LinkKind::Operationalizes || link.kind == LinkKind::Measures ||
            link.kind == LinkKind::Underpins) {
          supported = true;
        }
      }
      if (!refined && !supported) {
        emit(DiagnosticCode::W102,
             "inert value " + q(e.id) + ": no activity, indicator or assumption attached", {e.id},
             e.span);
      }
    }
  }

  void check_assumptions() {
    for (const Element& e : model_.elements()) {
      if (e.kind != ElementKind::Assumption) continue;
      bool underpins = std::any_of(model_.links().begin(), model_.links().end(),
                                   [&](const Link& l) {
                                     return l.kind == LinkKind::Underpins && l.source == e.id;
                                   });
      if (!underpins) {
        emit(DiagnosticCode::W104, "free-floating assumption " + q(e.id) + ": underpins nothing",
             {e.id}, e.span);
      }
    }
  }

  const Model& model_;
  std::string context_;
  const Model* parent_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Model& model) {
  std::vector<Diagnostic> all;
  Checker top(model, "", nullptr);
  top.run();
  all = top.take();
  for (const Model& fragment : model.fragments()) {
    Checker inner(fragment, fragment.name(), &model);
    inner.run();
    auto found = inner.take();
    all.insert(all.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  }
  auto key = [](const Diagnostic& d) {
    static const std::string none;
    return std::make_tuple(d.span ? std::cref(d.span->file) : std::cref(none),
                           d.span ? d.span->line_start : 0, to_string(d.code),
                           d.span ? d.span->col_start : 0, std::cref(d.message));
  };
  std::stable_sort(all.begin(), all.end(),
                   [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
  return all;
}

}  // namespace fairmodel
