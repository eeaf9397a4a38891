#pragma once

#include <string>
#include <vector>

namespace fmn {

enum class MasFactor { evaluation, everyday_social, passive_observation };

const char* to_string(MasFactor f);
MasFactor mas_factor_from_string(const std::string& s);

struct MasItem {
  int index = 0;  // 1-based
  MasFactor factor = MasFactor::evaluation;
  std::string en;
  std::string it;
};

/// Factor assignment for the 23-item questionnaire (9 evaluation,
/// 8 everyday/social, 6 passive observation).
struct MasItemMap {
  std::vector<MasItem> items;

  std::vector<MasFactor> factors() const;
  /// Throws ValidationError unless there are exactly 23 items with factor
  /// counts (9, 8, 6) and each item is assigned exactly one factor.
  void check() const;
};

/// Built-in copies of the bundled reference data (identical to the files
/// under data/; a unit test keeps them in sync).
const MasItemMap& default_mas_items();
const std::vector<std::string>& cues_exp1();
const std::vector<std::string>& cues_exp2();

/// Load overrides from JSON files with the documented schemas.
MasItemMap load_mas_items(const std::string& path);
std::vector<std::string> load_cue_list(const std::string& path);

/// "exp1" / "exp2" resolve to the bundled lists; anything else is read as a
/// JSON cue-list file path.
std::vector<std::string> resolve_cue_set(const std::string& name_or_path);

/// Drop duplicate words, keeping first occurrences (schema-level consumers
/// need unique cue columns).
std::vector<std::string> unique_words(const std::vector<std::string>& words);

}  // namespace fmn
