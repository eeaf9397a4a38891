#include "fmn/psychometrics.hpp"

#include <cmath>

#include "fmn/errors.hpp"
#include "fmn/participant.hpp"
#include "fmn/valence.hpp"

namespace fmn {

MasScores score_mas(const std::vector<int>& answers, const MasItemMap& item_map) {
  item_map.check();
  if (answers.size() != kMasItemCount) {
    throw ValidationError("questionnaire needs 23 answers, got " +
                          std::to_string(answers.size()));
  }
  MasScores scores;
  for (size_t i = 0; i < answers.size(); ++i) {
    const int a = answers[i];
    if (a < kRatingMin || a > kRatingMax) {
      throw ValidationError("answer " + std::to_string(a) + " at item " +
                            std::to_string(i + 1) + " outside [1,5]");
    }
    switch (item_map.items[i].factor) {
      case MasFactor::evaluation: scores.evaluation += a; break;
      case MasFactor::everyday_social: scores.everyday_social += a; break;
      case MasFactor::passive_observation: scores.passive_observation += a; break;
    }
  }
  scores.total = scores.evaluation + scores.everyday_social + scores.passive_observation;
  return scores;
}

MasScores score_mas(const std::vector<int>& answers) {
  return score_mas(answers, default_mas_items());
}

DescriptiveStats describe(const std::vector<double>& values) {
  const size_t n = values.size();
  if (n < 2) throw ArgumentError("describe: need at least 2 values");

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);

  double m2 = 0.0;  // biased central moments
  double m3 = 0.0;
  double ss = 0.0;
  for (double v : values) {
    const double d = v - mean;
    ss += d * d;
    m3 += d * d * d;
  }
  m2 = ss / static_cast<double>(n);
  m3 /= static_cast<double>(n);

  DescriptiveStats stats;
  stats.n = n;
  stats.mean = mean;
  stats.sd = std::sqrt(ss / static_cast<double>(n - 1));
  const Quartiles q = quartiles(values);
  stats.q1 = q.q1;
  stats.q3 = q.q3;
  if (m2 > 0.0 && n > 2) {
    const double g1 = m3 / std::pow(m2, 1.5);
    const double dn = static_cast<double>(n);
    stats.skewness = g1 * std::sqrt(dn * (dn - 1.0)) / (dn - 2.0);
  } else {
    stats.skewness = 0.0;  // constant sample (or n == 2 exact symmetry)
  }
  return stats;
}

}  // namespace fmn
