#include "fairmodel/analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "text_util.hpp"

namespace fairmodel {

std::string to_string(const Fraction& f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

std::string_view to_string(ObstacleState state) noexcept {
  switch (state) {
    case ObstacleState::Resolved: return "resolved";
    case ObstacleState::Accepted: return "accepted";
    case ObstacleState::Open: return "open";
  }
  return "?";
}

std::vector<ObstacleStatus> obstacle_report(const Model& model) {
  std::vector<ObstacleStatus> report;
  for (const Element& e : model.elements()) {
    if (e.kind != ElementKind::Obstacle) continue;
    ObstacleStatus status;
    status.id = e.id;
    for (const Link& link : model.links()) {
      if (link.kind == LinkKind::Obstructs && link.source == e.id) status.targets.push_back(link.target);
      if (link.kind == LinkKind::Resolves && link.target == e.id) status.resolved_by.push_back(link.source);
    }
    std::sort(status.resolved_by.begin(), status.resolved_by.end());
    if (!status.resolved_by.empty()) {
      status.state = ObstacleState::Resolved;
    } else if (const std::string* strategy = e.annotation(annotation_key::kAccepted)) {
      status.state = ObstacleState::Accepted;
      status.strategy = *strategy;
    }
    report.push_back(std::move(status));
  }
  std::sort(report.begin(), report.end(),
            [](const ObstacleStatus& a, const ObstacleStatus& b) { return a.id < b.id; });
  return report;
}

AttributionReport attribution_report(const Model& model) {
  AttributionReport report;
  for (const Element& e : model.elements()) {
    if (e.kind == ElementKind::Dimension) continue;
    switch (e.attribution) {
      case Attribution::System: report.system.push_back(e.id); break;
      case Attribution::Environment: report.environment.push_back(e.id); break;
      case Attribution::Unspecified: report.unspecified.push_back(e.id); break;
    }
  }
  long attributed = static_cast<long>(report.system.size() + report.environment.size());
  if (attributed > 0) report.system_share = Fraction{static_cast<long>(report.system.size()), attributed};
  return report;
}

CoverageReport stage_coverage(const Model& model, const Catalogue& catalogue) {
  std::set<std::string> woven;
  for (const Element& e : model.elements()) {
    if (const std::string* pattern = e.annotation(annotation_key::kPattern)) woven.insert(*pattern);
  }
  CoverageReport report;
  for (const std::string& name : woven) {
    const PatternCard* card = catalogue.find(name);
    if (card == nullptr) {
      report.unmatched.push_back(name);
      continue;
    }
    for (Stage stage : kAllStages) {
      if (card->in_stage(stage)) report.patterns[static_cast<std::size_t>(stage)].push_back(name);
    }
  }
  for (Stage stage : kAllStages) {
    if (!report.patterns[static_cast<std::size_t>(stage)].empty()) report.stages_covered.push_back(stage);
  }
  report.fraction = Fraction{static_cast<long>(report.stages_covered.size()),
                             static_cast<long>(kAllStages.size())};
  return report;
}

std::vector<DimensionCount> dimension_balance(const Model& model) {
  std::vector<DimensionCount> counts;
  for (const Element& e : model.elements()) {
    if (e.kind == ElementKind::Dimension) counts.push_back({e.id, 0});
  }
  std::size_t unassigned = 0;
  for (const Element& e : model.elements()) {
    if (e.kind != ElementKind::Value) continue;
    auto it = std::find_if(counts.begin(), counts.end(), [&](const DimensionCount& c) {
      return e.dimension && c.dimension == *e.dimension;
    });
    if (it == counts.end()) {
      ++unassigned;
    } else {
      ++it->values;
    }
  }
  if (unassigned > 0) counts.push_back({std::string(kUnassignedDimension), unassigned});
  return counts;
}

const std::vector<Trigger>& suggestion_triggers() {
  static const std::vector<Trigger> table = {
      {"violation-anticipation", {"quota", "load", "capacity", "overload"}},
      {"distributive-justice", {"distribution", "allocation", "free", "supply"}},
      {"rule-acceptance", {"accept", "adhere", "adoption"}},
      {"transparency", {"transparent", "audit", "publish"}},
      {"substantial-freedom", {"capability", "fulfilment", "diversity"}},
      {"co-evolution", {"synergy", "innovation", "co-evolution"}},
  };
  return table;
}

std::vector<Suggestion> suggest(const Model& model, const Catalogue& catalogue) {
  std::vector<Suggestion> found;
  for (const Element& e : model.elements()) {
    if (e.kind == ElementKind::Dimension) continue;
    const std::string name = detail::to_lower(e.name);
    for (const Trigger& trigger : suggestion_triggers()) {
      for (std::string_view word : trigger.keywords) {
        if (name.find(word) != std::string::npos) {
          found.push_back({e.id, std::string(trigger.pattern), "name contains \"" + std::string(word) + "\""});
          break;
        }
      }
    }
  }
  for (const ObstacleStatus& status : obstacle_report(model)) {
    if (status.state == ObstacleState::Open) {
      found.push_back({status.id, "violation-anticipation", "open obstacle"});
    }
  }
  // Stable sort keeps the keyword reason ahead of the obstacle reason.
  std::stable_sort(found.begin(), found.end(), [](const Suggestion& a, const Suggestion& b) {
    return std::tie(a.element, a.pattern) < std::tie(b.element, b.pattern);
  });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const Suggestion& a, const Suggestion& b) {
                            return a.element == b.element && a.pattern == b.pattern;
                          }),
              found.end());
  found.erase(std::remove_if(found.begin(), found.end(),
                             [&](const Suggestion& s) { return catalogue.find(s.pattern) == nullptr; }),
              found.end());
  return found;
}

namespace {

using detail::join;
using detail::Row;

std::string or_dash(std::string text) { return text.empty() ? "-" : text; }

}  // namespace

std::string format_obstacles(const std::vector<ObstacleStatus>& report, bool tsv) {
  std::vector<Row> rows;
  for (const ObstacleStatus& s : report) {
    std::string detail = s.state == ObstacleState::Resolved ? join(s.resolved_by) : s.strategy;
    rows.push_back({s.id, std::string(to_string(s.state)), or_dash(detail), or_dash(join(s.targets))});
  }
  return detail::format_table({"obstacle", "state", "by", "obstructs"}, rows, tsv);
}

std::string format_attribution(const AttributionReport& report, bool tsv) {
  std::vector<Row> rows;
  for (const auto& id : report.system) rows.push_back({"system", id});
  for (const auto& id : report.environment) rows.push_back({"environment", id});
  for (const auto& id : report.unspecified) rows.push_back({"unspecified", id});
  std::string share = report.system_share ? to_string(*report.system_share) : "-";
  if (tsv) {
    rows.push_back({"share", share});
    return detail::format_table({}, rows, true);
  }
  return detail::format_table({"attribution", "element"}, rows, false) + "system share: " + share + "\n";
}

std::string format_coverage(const CoverageReport& report, bool tsv) {
  std::vector<Row> rows;
  for (Stage stage : kAllStages) {
    const auto& names = report.patterns[static_cast<std::size_t>(stage)];
    rows.push_back({std::string(to_string(stage)), names.empty() ? "no" : "yes", or_dash(join(names))});
  }
  if (tsv) {
    rows.push_back({"fraction", to_string(report.fraction)});
    return detail::format_table({}, rows, true);
  }
  std::string text = detail::format_table({"stage", "covered", "patterns"}, rows, false);
  text += "coverage: " + to_string(report.fraction) + "\n";
  if (!report.unmatched.empty()) text += "not in catalogue: " + join(report.unmatched, ", ") + "\n";
  return text;
}

std::string format_balance(const std::vector<DimensionCount>& report, bool tsv) {
  std::vector<Row> rows;
  for (const DimensionCount& c : report) rows.push_back({c.dimension, std::to_string(c.values)});
  return detail::format_table({"dimension", "values"}, rows, tsv);
}

std::string format_suggestions(const std::vector<Suggestion>& report, bool tsv) {
  std::vector<Row> rows;
  for (const Suggestion& s : report) rows.push_back({s.element, s.pattern, s.reason});
  return detail::format_table({"element", "pattern", "reason"}, rows, tsv);
}

}  // namespace fairmodel
