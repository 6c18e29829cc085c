#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fairmodel::detail {

std::string to_lower(std::string_view text);

/// Non-overlapping occurrences of `needle` in `haystack`, ASCII
/// case-insensitive. Empty needles never match.
std::size_t count_occurrences_ci(std::string_view haystack, std::string_view needle);

using Row = std::vector<std::string>;

/// Column-aligned table with a header and dashed rule, or tab-separated
/// rows (header omitted) when `tsv`.
std::string format_table(const Row& header, const std::vector<Row>& rows, bool tsv);

std::string join(const std::vector<std::string>& items, std::string_view sep = ",");

}  // namespace fairmodel::detail
