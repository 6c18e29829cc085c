#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fairmodel {

/// Distinct `<Word>` placeholders in `text` (Word = [A-Z][A-Za-z]*), without
/// the angle brackets, in order of first occurrence.
std::vector<std::string> placeholders_in(std::string_view text);

/// Replaces every `<Word>` that has an entry in `replacements`; others are
/// left untouched.
std::string substitute_placeholders(std::string_view text,
                                    const std::map<std::string, std::string, std::less<>>& replacements);

}  // namespace fairmodel
