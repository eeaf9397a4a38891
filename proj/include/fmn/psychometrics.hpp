#pragma once

#include <cstddef>
#include <vector>

#include "fmn/reference_data.hpp"

namespace fmn {

/// Factor sums of the 23-item math anxiety questionnaire.
struct MasScores {
  int evaluation = 0;          // 9 items, range [9, 45]
  int everyday_social = 0;     // 8 items, range [8, 40]
  int passive_observation = 0; // 6 items, range [6, 30]
  int total = 0;               // range [23, 115]

  bool operator==(const MasScores&) const = default;
};

/// Sum the answers into factor scores and the total. Throws ValidationError
/// for a wrong answer count or out-of-range answers.
MasScores score_mas(const std::vector<int>& answers, const MasItemMap& item_map);
MasScores score_mas(const std::vector<int>& answers);  // bundled item map

/// Descriptive summary matching the report layout: N, M, SD, Q1, Q3, SKP.
/// SD is the sample standard deviation (n-1); quartiles use the linear
/// interpolation estimator; skewness is the adjusted Fisher-Pearson
/// coefficient g1 * sqrt(n(n-1)) / (n-2), defined as 0 for constant samples.
struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double skewness = 0.0;
};

DescriptiveStats describe(const std::vector<double>& values);

}  // namespace fmn
