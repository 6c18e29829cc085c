#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fairmodel/model.hpp"
#include "fairmodel/validator.hpp"

namespace fairmodel {

enum class RenderFormat : std::uint8_t { Dot, Mermaid };

std::string_view to_string(RenderFormat format) noexcept;
std::optional<RenderFormat> render_format_from_string(std::string_view text) noexcept;

enum class RenderErrorCode : std::uint8_t { InvalidModel, UnknownFormat };

class RenderError : public std::runtime_error {
 public:
  RenderError(RenderErrorCode code, const std::string& message, std::vector<Diagnostic> diagnostics = {})
      : std::runtime_error(message), code_(code), diagnostics_(std::move(diagnostics)) {}

  RenderErrorCode code() const noexcept { return code_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  RenderErrorCode code_;
  std::vector<Diagnostic> diagnostics_;
};

struct NodeStyle {
  std::string_view dot_shape;
  std::string_view dot_style;  // empty when none
  std::string_view mermaid_open;
  std::string_view mermaid_close;
};

/// Shape per element kind (Dimension has none: dimensions become label suffixes).
const NodeStyle& node_style(ElementKind kind);

inline constexpr std::string_view kSystemFill = "#d3d3d3";
inline constexpr std::string_view kObstacleMarker = "⚡";

/// Throws RenderError{InvalidModel} when the model has E-codes.
std::string render(const Model& model, RenderFormat format);
/// Throws RenderError{UnknownFormat} for anything but "dot" or "mermaid".
std::string render(const Model& model, std::string_view format);

/// Node identifier used for an element id in Mermaid output.
std::string mermaid_node_id(std::string_view element_id);

}  // namespace fairmodel
