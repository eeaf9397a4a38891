#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fmn {

/// Pearson correlation with a two-tailed p-value from the exact t transform
/// t = r * sqrt((n-2) / (1-r^2)), df = n-2. |r| = 1 gives p = 0.
struct PearsonResult {
  double r = 0.0;
  double p = 1.0;
};
PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Rectangular table of named per-participant features and outcomes.
struct FeatureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return columns.size(); }
  int column_index(const std::string& name) const;  // throws ArgumentError
  std::vector<double> column(const std::string& name) const;
  std::vector<double> column_at(std::size_t j) const;
};

/// One cell of a correlation matrix. `defined` is false where a column had
/// zero variance; `stars` counts significance levels passed
/// (p < .05 -> 1, p < .01 -> 2, p < .001 -> 3).
struct CorrelogramCell {
  double r = 0.0;
  double p = 1.0;
  bool defined = false;
  bool significant = false;
  int stars = 0;
};

struct Correlogram {
  std::vector<std::string> columns;
  std::vector<std::vector<CorrelogramCell>> cells;  // symmetric, unit diagonal
};

Correlogram correlogram(const FeatureTable& table, double alpha);

/// Shift/scale to mean 0 and sample standard deviation 1.
/// Throws ArgumentError on zero variance.
std::vector<double> standardize(const std::vector<double>& values);

struct RegressionRow {
  std::string name;  // "Intercept" or predictor name
  double beta = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
};

/// Full OLS fit report. `aic` is the Gaussian maximum-likelihood convention
/// n*ln(2*pi*RSS/n) + n + 2*(p+1); it is absent for a perfect fit (RSS = 0),
/// which is flagged instead.
struct RegressionReport {
  std::string outcome;
  std::vector<std::string> predictors;
  std::vector<RegressionRow> rows;  // intercept first, then predictors
  double r_squared = 0.0;
  std::optional<double> aic;
  std::size_t n = 0;
  bool perfect_fit = false;
};

/// Ordinary least squares with intercept. Requires n > predictors + 1 and a
/// full-rank design; throws ArgumentError otherwise (message says which).
RegressionReport ols_fit(const std::vector<double>& y,
                         const std::vector<std::vector<double>>& predictors,
                         const std::vector<std::string>& predictor_names,
                         const std::string& outcome_name = "y");

struct ModelSelection {
  std::size_t chosen_index = 0;
  std::vector<std::string> chosen_predictors;
  RegressionReport report;
  std::vector<std::optional<double>> aics;  // one per candidate, in input order
};

/// Fit every candidate predictor set against `outcome` (all columns are
/// standardized first) and keep the lowest AIC; ties break toward the
/// smaller set, then lexicographically.
ModelSelection select_model(const FeatureTable& table, const std::string& outcome,
                            const std::vector<std::vector<std::string>>& candidates);

}  // namespace fmn
