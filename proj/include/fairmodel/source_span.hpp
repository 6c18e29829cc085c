#pragma once

#include <string>

namespace fairmodel {

/// Region of a source file. Lines and columns are 1-based; columns count
/// code points, not bytes.
struct SourceSpan {
  std::string file;
  int line_start = 1;
  int col_start = 1;
  int line_end = 1;
  int col_end = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

}  // namespace fairmodel
