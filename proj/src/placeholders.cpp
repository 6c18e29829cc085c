#include "fairmodel/placeholders.hpp"

#include <algorithm>

namespace fairmodel {

namespace {

// Length of the placeholder starting at text[i] ('<'), or 0.
std::size_t placeholder_length(std::string_view text, std::size_t i) {
  if (text[i] != '<' || i + 1 >= text.size() || text[i + 1] < 'A' || text[i + 1] > 'Z') return 0;
  std::size_t j = i + 2;
  while (j < text.size() && ((text[j] >= 'A' && text[j] <= 'Z') || (text[j] >= 'a' && text[j] <= 'z'))) {
    ++j;
  }
  return j < text.size() && text[j] == '>' ? j - i + 1 : 0;
}

}  // namespace

std::vector<std::string> placeholders_in(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::size_t n = placeholder_length(text, i)) {
      std::string word(text.substr(i + 1, n - 2));
      if (std::find(out.begin(), out.end(), word) == out.end()) out.push_back(std::move(word));
      i += n - 1;
    }
  }
  return out;
}

std::string substitute_placeholders(
    std::string_view text, const std::map<std::string, std::string, std::less<>>& replacements) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::size_t n = placeholder_length(text, i)) {
      auto it = replacements.find(text.substr(i + 1, n - 2));
      if (it != replacements.end()) {
        out += it->second;
        i += n - 1;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

}  // namespace fairmodel
