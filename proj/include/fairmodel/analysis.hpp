#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/catalogue.hpp"
#include "fairmodel/model.hpp"

namespace fairmodel {

/// Unreduced ratio; equality is by cross-multiplication.
struct Fraction {
  long num = 0;
  long den = 1;

  friend bool operator==(const Fraction& a, const Fraction& b) noexcept {
    return a.num * b.den == b.num * a.den;
  }
};

std::string to_string(const Fraction& f);

enum class ObstacleState : std::uint8_t { Resolved, Accepted, Open };

std::string_view to_string(ObstacleState state) noexcept;

struct ObstacleStatus {
  std::string id;
  std::vector<std::string> targets;
  ObstacleState state = ObstacleState::Open;
  /// Resolving activity ids when Resolved.
  std::vector<std::string> resolved_by;
  /// Acceptance strategy when Accepted.
  std::string strategy;
};

/// One entry per top-level Obstacle, id-sorted. A resolved obstacle
/// reports Resolved even if it is also annotated `accepted`.
std::vector<ObstacleStatus> obstacle_report(const Model& model);

struct AttributionReport {
  std::vector<std::string> system;
  std::vector<std::string> environment;
  std::vector<std::string> unspecified;
  /// |system| / (|system| + |environment|); absent when no element is attributed.
  std::optional<Fraction> system_share;
};

AttributionReport attribution_report(const Model& model);

struct CoverageReport {
  std::vector<Stage> stages_covered;  // in stage order
  Fraction fraction;
  /// Woven pattern names per stage, indexed by Stage.
  std::array<std::vector<std::string>, kAllStages.size()> patterns;
  /// `pattern` annotations naming no catalogue card (e.g. local fragments).
  std::vector<std::string> unmatched;
};

CoverageReport stage_coverage(const Model& model, const Catalogue& catalogue);

struct DimensionCount {
  std::string dimension;
  std::size_t values = 0;
};

inline constexpr std::string_view kUnassignedDimension = "unassigned";

/// Declared dimensions in declaration order (zeros included), followed by
/// an `unassigned` bucket when some value names no declared dimension.
std::vector<DimensionCount> dimension_balance(const Model& model);

struct Suggestion {
  std::string element;
  std::string pattern;
  std::string reason;
};

struct Trigger {
  std::string_view pattern;
  std::vector<std::string_view> keywords;
};

/// Keyword table matched case-insensitively against element names.
const std::vector<Trigger>& suggestion_triggers();

/// Trigger hits plus violation-anticipation for every open obstacle.
/// Sorted by (element, pattern), without duplicates. Patterns absent from
/// the catalogue are dropped.
std::vector<Suggestion> suggest(const Model& model, const Catalogue& catalogue);

// Plain-text tables and tab-separated records. TSV columns:
//   obstacles:   id, state, resolved_by|strategy|-, targets
//   attribution: attribution, id  (last record: share, n/d or -)
//   coverage:    stage, yes|no, patterns  (last record: fraction, n/d)
//   balance:     dimension, count
//   suggest:     element, pattern, reason
std::string format_obstacles(const std::vector<ObstacleStatus>& report, bool tsv);
std::string format_attribution(const AttributionReport& report, bool tsv);
std::string format_coverage(const CoverageReport& report, bool tsv);
std::string format_balance(const std::vector<DimensionCount>& report, bool tsv);
std::string format_suggestions(const std::vector<Suggestion>& report, bool tsv);

}  // namespace fairmodel
