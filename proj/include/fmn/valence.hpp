#pragma once

#include <map>
#include <string>
#include <vector>

#include "fmn/participant.hpp"

namespace fmn {

inline constexpr int kLabelNegative = -1;
inline constexpr int kLabelNeutral = 0;
inline constexpr int kLabelPositive = 1;

/// Standard median; mean of the two middle order statistics for even sizes.
/// Throws ArgumentError on empty input.
double median(const std::vector<double>& values);
double median_rating(const std::vector<int>& ratings);

/// Lower and upper quartiles via the linear-interpolation estimator
/// h = (n - 1) * p between adjacent order statistics.
struct Quartiles {
  double q1 = 0.0;
  double q3 = 0.0;
};
Quartiles quartiles(std::vector<double> values);

/// Linear-interpolation quantile at probability p in [0, 1].
double quantile(std::vector<double> values, double p);

/// Two-sample Kruskal-Wallis rank test with tie correction; p from the
/// chi-square survival function with one degree of freedom. When every value
/// is identical across both samples the statistic is undefined and (0, 1) is
/// returned.
struct KruskalWallisResult {
  double h = 0.0;
  double p = 1.0;
};
KruskalWallisResult kruskal_wallis_two(const std::vector<double>& sample_a,
                                       const std::vector<double>& sample_b);

/// Individual-level valence labels. Each concept's effective rating is the
/// median of its ratings; quartiles are taken over all the participant's
/// effective ratings. A concept is negative when its rating is strictly
/// below Q1 or equals the minimum, positive when strictly above Q3 or equal
/// to the maximum, neutral otherwise. If every effective rating is identical
/// all concepts are neutral.
std::map<std::string, int> individual_labels(const ParticipantRecord& record);

/// Group-level labels: each concept's pooled ratings are tested against the
/// pooled ratings of all other concepts. Concepts with fewer than three
/// ratings are neutral; a significant test (p < alpha) labels by the sign of
/// the mean difference; equal means stay neutral.
std::map<std::string, int> group_labels(
    const std::map<std::string, std::vector<int>>& group_ratings, double alpha);

}  // namespace fmn
