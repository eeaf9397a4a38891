#include "fmn/valence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fmn/errors.hpp"
#include "fmn/special_functions.hpp"

namespace fmn {

double median(const std::vector<double>& values) {
  if (values.empty()) throw ArgumentError("median of empty list");
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double median_rating(const std::vector<int>& ratings) {
  std::vector<double> v(ratings.begin(), ratings.end());
  return median(v);
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ArgumentError("quantile of empty list");
  if (p < 0.0 || p > 1.0) throw ArgumentError("quantile probability outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = static_cast<size_t>(std::ceil(h));
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("quartiles of empty list");
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = static_cast<size_t>(std::ceil(h));
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.75)};
}

KruskalWallisResult kruskal_wallis_two(const std::vector<double>& sample_a,
                                       const std::vector<double>& sample_b) {
  const size_t na = sample_a.size();
  const size_t nb = sample_b.size();
  if (na < 1 || nb < 1 || na + nb < 3) {
    throw ArgumentError("kruskal_wallis_two: need |a| >= 1, |b| >= 1, |a|+|b| >= 3");
  }
  const size_t n = na + nb;

  struct Obs {
    double value;
    int group;
  };
  std::vector<Obs> all;
  all.reserve(n);
  for (double v : sample_a) all.push_back({v, 0});
  for (double v : sample_b) all.push_back({v, 1});
  std::sort(all.begin(), all.end(), [](const Obs& x, const Obs& y) { return x.value < y.value; });

  // Average ranks for ties, accumulating the tie-correction term.
  std::vector<double> rank(n);
  double tie_term = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && all[j + 1].value == all[i].value) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (size_t k = i; k <= j; ++k) rank[k] = avg;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  double ra = 0.0;
  double rb = 0.0;
  for (size_t k = 0; k < n; ++k) {
    (all[k].group == 0 ? ra : rb) += rank[k];
  }

  const double dn = static_cast<double>(n);
  double h = 12.0 / (dn * (dn + 1.0)) *
                 (ra * ra / static_cast<double>(na) + rb * rb / static_cast<double>(nb)) -
             3.0 * (dn + 1.0);
  const double correction = 1.0 - tie_term / (dn * dn * dn - dn);
  if (correction <= 0.0) return {0.0, 1.0};  // every value identical
  h /= correction;
  if (h < 0.0) h = 0.0;  // guard rounding on near-constant data
  return {h, chi_squared_sf(h, 1.0)};
}

std::map<std::string, int> individual_labels(const ParticipantRecord& record) {
  if (record.valence_ratings.empty()) {
    throw ArgumentError("individual_labels: participant '" + record.participant_id +
                        "' has no rated concept");
  }
  std::map<std::string, double> effective;
  std::vector<double> all;
  for (const auto& [word, ratings] : record.valence_ratings) {
    const double m = median_rating(ratings);
    effective[word] = m;
    all.push_back(m);
  }
  const double lo = *std::min_element(all.begin(), all.end());
  const double hi = *std::max_element(all.begin(), all.end());

  std::map<std::string, int> labels;
  if (lo == hi) {  // degenerate distribution: everything neutral
    for (const auto& [word, _] : effective) labels[word] = kLabelNeutral;
    return labels;
  }
  const Quartiles q = quartiles(all);
  for (const auto& [word, rating] : effective) {
    if (rating < q.q1 || rating == lo) {
      labels[word] = kLabelNegative;
    } else if (rating > q.q3 || rating == hi) {
      labels[word] = kLabelPositive;
    } else {
      labels[word] = kLabelNeutral;
    }
  }
  return labels;
}

std::map<std::string, int> group_labels(
    const std::map<std::string, std::vector<int>>& group_ratings, double alpha) {
  if (alpha < 0.0 || alpha >= 1.0) throw ArgumentError("group_labels: alpha outside (0,1)");
  std::map<std::string, int> labels;
  for (const auto& [word, ratings] : group_ratings) {
    labels[word] = kLabelNeutral;
    if (ratings.size() < 3) continue;  // too few scores to test

    std::vector<double> own(ratings.begin(), ratings.end());
    std::vector<double> rest;
    for (const auto& [other, other_ratings] : group_ratings) {
      if (other == word) continue;
      rest.insert(rest.end(), other_ratings.begin(), other_ratings.end());
    }
    if (rest.empty()) continue;  // nothing to compare against

    const KruskalWallisResult kw = kruskal_wallis_two(own, rest);
    if (kw.p >= alpha) continue;

    const double mean_own = std::accumulate(own.begin(), own.end(), 0.0) / own.size();
    const double mean_rest = std::accumulate(rest.begin(), rest.end(), 0.0) / rest.size();
    if (mean_own > mean_rest) {
      labels[word] = kLabelPositive;
    } else if (mean_own < mean_rest) {
      labels[word] = kLabelNegative;
    }
    // equal means: stays neutral even though the test fired
  }
  return labels;
}

}  // namespace fmn
