#include "fmn/stats.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fmn/errors.hpp"
#include "fmn/special_functions.hpp"

namespace fmn {

namespace {

constexpr double kPiStats = 3.14159265358979323846;

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: length mismatch");
  const size_t n = x.size();
  if (n < 3) throw ArgumentError("pearson: need n >= 3");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw ArgumentError("pearson: undefined correlation (zero variance)");
  }
  double r = sxy / std::sqrt(sxx * syy);
  r = std::clamp(r, -1.0, 1.0);
  if (std::fabs(r) == 1.0) return {r, 0.0};
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  return {r, student_t_two_tailed(t, df)};
}

int FeatureTable::column_index(const std::string& name) const {
  for (size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return static_cast<int>(j);
  }
  throw ArgumentError("unknown column: '" + name + "'");
}

std::vector<double> FeatureTable::column_at(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(j));
  return out;
}

std::vector<double> FeatureTable::column(const std::string& name) const {
  return column_at(static_cast<size_t>(column_index(name)));
}

Correlogram correlogram(const FeatureTable& table, double alpha) {
  if (table.n_cols() < 2) throw ArgumentError("correlogram: need at least 2 columns");
  Correlogram out;
  out.columns = table.columns;
  const size_t m = table.n_cols();
  out.cells.assign(m, std::vector<CorrelogramCell>(m));

  std::vector<std::vector<double>> cols(m);
  for (size_t j = 0; j < m; ++j) cols[j] = table.column_at(j);

  for (size_t i = 0; i < m; ++i) {
    out.cells[i][i] = {1.0, 0.0, true, true, 3};
  }
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      CorrelogramCell cell;
      try {
        const PearsonResult pr = pearson(cols[i], cols[j]);
        cell.r = pr.r;
        cell.p = pr.p;
        cell.defined = true;
        cell.significant = pr.p < alpha;
        cell.stars = (pr.p < 0.001) ? 3 : (pr.p < 0.01) ? 2 : (pr.p < 0.05) ? 1 : 0;
      } catch (const ArgumentError&) {
        cell.defined = false;  // zero-variance column: cell stays undefined
      }
      out.cells[i][j] = cell;
      out.cells[j][i] = cell;
    }
  }
  return out;
}

std::vector<double> standardize(const std::vector<double>& values) {
  if (values.size() < 2) throw ArgumentError("standardize: need at least 2 values");
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) {
    const double d = v - m;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  if (sd == 0.0) throw ArgumentError("standardize: zero variance");
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - m) / sd);
  return out;
}

RegressionReport ols_fit(const std::vector<double>& y,
                         const std::vector<std::vector<double>>& predictors,
                         const std::vector<std::string>& predictor_names,
                         const std::string& outcome_name) {
  const size_t n = y.size();
  const size_t p = predictors.size();
  if (predictor_names.size() != p) throw ArgumentError("ols_fit: name/column count mismatch");
  for (const auto& col : predictors) {
    if (col.size() != n) throw ArgumentError("ols_fit: ragged design matrix");
  }
  if (n <= p + 1) throw ArgumentError("ols_fit: need n > predictors + 1");

  Eigen::MatrixXd design(n, p + 1);
  Eigen::VectorXd yv(n);
  for (size_t i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    for (size_t j = 0; j < p; ++j) design(i, j + 1) = predictors[j][i];
    yv(i) = y[i];
  }

  const Eigen::MatrixXd xtx = design.transpose() * design;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw ArgumentError("ols_fit: singular design (rank-deficient predictors)");
  }
  const Eigen::MatrixXd xtx_inv = lu.inverse();
  const Eigen::VectorXd beta = xtx_inv * (design.transpose() * yv);

  const Eigen::VectorXd resid = yv - design * beta;
  const double rss = resid.squaredNorm();
  const double ybar = yv.mean();
  const double tss = (yv.array() - ybar).square().sum();
  if (tss == 0.0) throw ArgumentError("ols_fit: outcome has zero variance");

  RegressionReport report;
  report.outcome = outcome_name;
  report.predictors = predictor_names;
  report.n = n;
  report.r_squared = 1.0 - rss / tss;
  const double df = static_cast<double>(n - p - 1);
  report.perfect_fit = rss <= 1e-12 * tss;

  const double sigma2 = report.perfect_fit ? 0.0 : rss / df;
  for (size_t j = 0; j <= p; ++j) {
    RegressionRow row;
    row.name = (j == 0) ? "Intercept" : predictor_names[j - 1];
    row.beta = beta(j);
    row.se = std::sqrt(sigma2 * xtx_inv(j, j));
    if (report.perfect_fit) {
      row.t = 0.0;
      row.p = 0.0;
    } else {
      row.t = row.se > 0.0 ? row.beta / row.se : 0.0;
      row.p = student_t_two_tailed(row.t, df);
    }
    report.rows.push_back(row);
  }
  if (!report.perfect_fit) {
    const double dn = static_cast<double>(n);
    report.aic = dn * std::log(2.0 * kPiStats * rss / dn) + dn +
                 2.0 * (static_cast<double>(p) + 1.0);
  }
  return report;
}

ModelSelection select_model(const FeatureTable& table, const std::string& outcome,
                            const std::vector<std::vector<std::string>>& candidates) {
  if (candidates.empty()) throw ArgumentError("select_model: no candidate predictor sets");

  const std::vector<double> y = standardize(table.column(outcome));

  ModelSelection selection;
  selection.aics.assign(candidates.size(), std::nullopt);
  std::vector<std::optional<RegressionReport>> reports(candidates.size());
  std::string first_error;

  for (size_t c = 0; c < candidates.size(); ++c) {
    try {
      std::vector<std::vector<double>> cols;
      for (const auto& name : candidates[c]) {
        cols.push_back(standardize(table.column(name)));
      }
      RegressionReport rep = ols_fit(y, cols, candidates[c], outcome);
      if (!rep.aic) {
        throw ArgumentError("select_model: perfect fit has undefined AIC for candidate " +
                            std::to_string(c));
      }
      selection.aics[c] = rep.aic;
      reports[c] = std::move(rep);
    } catch (const ArgumentError& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }

  std::optional<size_t> best;
  for (size_t c = 0; c < candidates.size(); ++c) {
    if (!selection.aics[c]) continue;
    if (!best) {
      best = c;
      continue;
    }
    const double a = *selection.aics[c];
    const double b = *selection.aics[*best];
    bool better = a < b;
    if (a == b) {
      // Tie: smaller predictor set first, then lexicographic on names.
      if (candidates[c].size() != candidates[*best].size()) {
        better = candidates[c].size() < candidates[*best].size();
      } else {
        better = candidates[c] < candidates[*best];
      }
    }
    if (better) best = c;
  }
  if (!best) {
    throw ArgumentError("select_model: every candidate failed to fit (" + first_error + ")");
  }
  selection.chosen_index = *best;
  selection.chosen_predictors = candidates[*best];
  selection.report = std::move(*reports[*best]);
  return selection;
}

}  // namespace fmn
