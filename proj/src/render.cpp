#include "fairmodel/render.hpp"

#include <set>
#include <sstream>

namespace fairmodel {

std::string_view to_string(RenderFormat format) noexcept {
  return format == RenderFormat::Dot ? "dot" : "mermaid";
}

std::optional<RenderFormat> render_format_from_string(std::string_view text) noexcept {
  if (text == "dot") return RenderFormat::Dot;
  if (text == "mermaid") return RenderFormat::Mermaid;
  return std::nullopt;
}

const NodeStyle& node_style(ElementKind kind) {
  static const NodeStyle goal{"parallelogram", "", "[/", "/]"};
  static const NodeStyle value{"box", "rounded", "(", ")"};
  static const NodeStyle assumption{"trapezium", "", "[/", "\\]"};
  static const NodeStyle obstacle{"octagon", "", "{{", "}}"};
  static const NodeStyle indicator{"ellipse", "", "([", "])"};
  static const NodeStyle regulation{"note", "", ">", "]"};
  static const NodeStyle activity{"box", "", "[", "]"};
  static const NodeStyle fragment_ref{"box", "dashed", "[[", "]]"};
  switch (kind) {
    case ElementKind::Goal: return goal;
    case ElementKind::Value: return value;
    case ElementKind::Assumption: return assumption;
    case ElementKind::Obstacle: return obstacle;
    case ElementKind::Indicator: return indicator;
    case ElementKind::Regulation: return regulation;
    case ElementKind::Activity:
    case ElementKind::Dimension: return activity;
    case ElementKind::FragmentRef: return fragment_ref;
  }
  return activity;
}

std::string mermaid_node_id(std::string_view element_id) {
  std::string out = "e_";
  for (char c : element_id) {
    if (c == '_') {
      out += "__";
    } else if (c == '-') {
      out += "_h";
    } else {
      out += c;
    }
  }
  return out;
}

namespace {

std::string fragment_node_id(std::string_view name, RenderFormat format) {
  if (format == RenderFormat::Dot) return "fragment:" + std::string(name);
  std::string id = mermaid_node_id(name);
  id[0] = 'f';
  return id;
}

std::string label_of(const Element& e) {
  std::string label;
  if (e.kind == ElementKind::Obstacle) label = std::string(kObstacleMarker) + " ";
  label += e.name;
  if (e.dimension) label += " [" + *e.dimension + "]";
  return label;
}

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + '"';
}

std::string mermaid_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '#') {
      out += "#35;";
    } else if (c == '"') {
      out += "#quot;";
    } else if (c == '\n') {
      out += "<br/>";
    } else {
      out += c;
    }
  }
  return out + '"';
}

struct Plan {
  std::set<std::string, std::less<>> anchors;
  std::vector<std::string> extra_fragments;  // DetailedBy targets with no element
};

Plan plan_for(const Model& model) {
  Plan plan;
  std::set<std::string, std::less<>> seen;
  for (const Link& link : model.links()) {
    if (link.kind != LinkKind::DetailedBy) continue;
    plan.anchors.insert(link.source);
    if (!model.contains(link.target) && seen.insert(link.target).second) {
      plan.extra_fragments.push_back(link.target);
    }
  }
  return plan;
}

std::string target_node(const Model& model, const Link& link, RenderFormat format) {
  if (model.contains(link.target)) {
    return format == RenderFormat::Dot ? dot_quote(link.target) : mermaid_node_id(link.target);
  }
  std::string id = fragment_node_id(link.target, format);
  return format == RenderFormat::Dot ? dot_quote(id) : id;
}

std::string render_dot(const Model& model, const Plan& plan) {
  std::ostringstream out;
  out << "digraph " << dot_quote(model.name()) << " {\n";
  out << "  rankdir=BT;\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (const Element& e : model.elements()) {
    if (e.kind == ElementKind::Dimension) continue;
    const NodeStyle& style = node_style(e.kind);
    std::vector<std::string_view> styles;
    if (!style.dot_style.empty()) styles.push_back(style.dot_style);
    if (plan.anchors.count(e.id) != 0 && style.dot_style != "dashed") styles.push_back("dashed");
    if (e.attribution == Attribution::System) styles.push_back("filled");
    out << "  " << dot_quote(e.id) << " [label=" << dot_quote(label_of(e)) << ", shape=" << style.dot_shape;
    if (!styles.empty()) {
      std::string joined;
      for (std::string_view s : styles) joined += (joined.empty() ? "" : ",") + std::string(s);
      out << ", style=" << dot_quote(joined);
    }
    if (e.attribution == Attribution::System) out << ", fillcolor=" << dot_quote(kSystemFill);
    out << "];\n";
  }
  for (const std::string& name : plan.extra_fragments) {
    out << "  " << dot_quote(fragment_node_id(name, RenderFormat::Dot)) << " [label=" << dot_quote(name)
        << ", shape=box, style=\"dashed\"];\n";
  }
  for (const Link& link : model.links()) {
    out << "  " << dot_quote(link.source) << " -> " << target_node(model, link, RenderFormat::Dot)
        << " [label=" << dot_quote(keyword(link.kind)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string render_mermaid(const Model& model, const Plan& plan) {
  std::ostringstream out;
  out << "flowchart TD\n";
  std::vector<std::string> system_nodes;
  std::vector<std::string> dashed_nodes;
  for (const Element& e : model.elements()) {
    if (e.kind == ElementKind::Dimension) continue;
    const NodeStyle& style = node_style(e.kind);
    std::string id = mermaid_node_id(e.id);
    out << "  " << id << style.mermaid_open << mermaid_quote(label_of(e)) << style.mermaid_close << '\n';
    if (e.attribution == Attribution::System) system_nodes.push_back(id);
    if (plan.anchors.count(e.id) != 0) dashed_nodes.push_back(id);
  }
  for (const std::string& name : plan.extra_fragments) {
    std::string id = fragment_node_id(name, RenderFormat::Mermaid);
    out << "  " << id << "[[" << mermaid_quote(name) << "]]\n";
    dashed_nodes.push_back(id);
  }
  for (const Link& link : model.links()) {
    out << "  " << mermaid_node_id(link.source) << " -->|" << keyword(link.kind) << "| "
        << target_node(model, link, RenderFormat::Mermaid) << '\n';
  }
  out << "  classDef is fill:" << kSystemFill << '\n';
  out << "  classDef anchor stroke-dasharray: 5 5\n";
  for (const std::string& id : system_nodes) out << "  class " << id << " is\n";
  for (const std::string& id : dashed_nodes) out << "  class " << id << " anchor\n";
  return out.str();
}

}  // namespace

std::string render(const Model& model, RenderFormat format) {
  std::vector<Diagnostic> diagnostics = validate(model);
  if (has_errors(diagnostics)) {
    std::vector<Diagnostic> errors;
    for (Diagnostic& d : diagnostics) {
      if (d.severity == Severity::Error) errors.push_back(std::move(d));
    }
    throw RenderError(RenderErrorCode::InvalidModel,
                      "model `" + model.name() + "` has " + std::to_string(errors.size()) + " error(s)",
                      std::move(errors));
  }
  Plan plan = plan_for(model);
  return format == RenderFormat::Dot ? render_dot(model, plan) : render_mermaid(model, plan);
}

std::string render(const Model& model, std::string_view format) {
  auto parsed = render_format_from_string(format);
  if (!parsed) {
    throw RenderError(RenderErrorCode::UnknownFormat,
                      "unknown format `" + std::string(format) + "` (expected dot or mermaid)");
  }
  return render(model, *parsed);
}

}  // namespace fairmodel
