#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/model.hpp"
#include "fairmodel/source_span.hpp"

namespace fairmodel {

enum class Severity : std::uint8_t { Error, Warning };

// Codes are stable; never renumber.
enum class DiagnosticCode : std::uint8_t {
  E001,  // dangling reference
  E002,  // value without a dimension
  E003,  // refinement cycle
  E004,  // endpoint-compatibility violation
  E005,  // unknown acceptance strategy
  E006,  // fragment name collision / unknown fragment
  W101,  // open obstacle
  W102,  // inert leaf value
  W103,  // non-canonical dimension
  W104,  // free-floating assumption
  W105,  // obstacle obstructing nothing
};

inline constexpr std::array<DiagnosticCode, 11> kAllDiagnosticCodes = {
    DiagnosticCode::E001, DiagnosticCode::E002, DiagnosticCode::E003, DiagnosticCode::E004,
    DiagnosticCode::E005, DiagnosticCode::E006, DiagnosticCode::W101, DiagnosticCode::W102,
    DiagnosticCode::W103, DiagnosticCode::W104, DiagnosticCode::W105,
};

std::string_view to_string(DiagnosticCode code) noexcept;
std::optional<DiagnosticCode> diagnostic_code_from_string(std::string_view text) noexcept;
Severity severity_of(DiagnosticCode code) noexcept;
std::string_view to_string(Severity severity) noexcept;

struct Diagnostic {
  DiagnosticCode code = DiagnosticCode::E001;
  Severity severity = Severity::Error;
  std::string message;
  std::vector<std::string> elements;
  std::optional<SourceSpan> span;
};

inline constexpr std::array<std::string_view, 5> kCanonicalDimensions = {
    "environmental", "economic", "social", "personal", "technical"};

bool is_canonical_dimension(std::string_view name) noexcept;
/// Canonical spelling for a known variant ("individual" -> "personal").
std::optional<std::string_view> canonical_alias(std::string_view name) noexcept;

/// All findings, ordered by (file, line, code), then column and message.
/// Fragment bodies are checked in their own scope.
std::vector<Diagnostic> validate(const Model& model);

bool has_errors(std::span<const Diagnostic> diagnostics) noexcept;

/// FILE:LINE:COL: CODE severity: message [ids]
/// `fallback_file` is used for diagnostics without a span (0:0 position).
std::string format_diagnostic(const Diagnostic& diagnostic, std::string_view fallback_file = "-");

}  // namespace fairmodel
