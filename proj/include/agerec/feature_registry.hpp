#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace agerec {

enum class FeatureCategory {
  Lexicon,
  Graphemes,
  Morphosyntax,
  VerbalTenses,
  PersonNumber,
  Dependencies,
  Connectors,
  Phonetics,
  Sentiments,
};

inline constexpr int kFeatureCount = 107;
inline constexpr int kCategoryCount = 9;

struct FeatureInfo {
  std::string name;
  FeatureCategory category;
  int index;
  std::string description;
};

// The 107 expert features in vector order, grouped by category.
const std::vector<FeatureInfo>& feature_registry();
const std::vector<FeatureCategory>& all_categories();
std::string_view category_name(FeatureCategory c);
// Case-insensitive; accepts "person-number"/"PersonNumber" style names.
FeatureCategory parse_category(std::string_view name);

// Throws InvalidArgument for unknown names.
int feature_index(std::string_view name);
std::vector<int> category_indices(FeatureCategory c);

// FNV-1a over the ordered feature names, as 16 hex digits. Models trained
// on expert features record it and refuse inputs with another one.
std::string registry_fingerprint();

}  // namespace agerec
