#pragma once

// Bundled word lists. All entries are lowercase ASCII.

#include "stylo/annotate.hpp"

#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace stylo::wordlists {

inline constexpr std::string_view kStopwordListVersion = "stylo-stopwords-1";

const std::vector<std::string_view>& stopwords();
const std::unordered_set<std::string_view>& stopword_set();

/// Abbreviations including their final period, e.g. "dr." or "e.g.".
const std::vector<std::string_view>& abbreviations();
const std::unordered_set<std::string_view>& abbreviation_set();

/// Closed-class words and the tag each receives.
const std::unordered_map<std::string_view, Upos>& closed_class();
/// Frequent open-class words with a fixed tag.
const std::unordered_map<std::string_view, Upos>& open_class();

/// "zero" .. "billion", including teens and tens.
const std::unordered_set<std::string_view>& number_words();

/// Full and abbreviated month names (without periods).
const std::unordered_set<std::string_view>& month_names();

}  // namespace stylo::wordlists
