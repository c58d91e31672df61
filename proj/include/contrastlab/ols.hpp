#pragma once

#include "contrastlab/contrasts.hpp"
#include "contrastlab/design.hpp"
#include "contrastlab/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace contrastlab {

struct FitOptions {
  // Return the least-norm solution with aliased columns flagged instead of
  // throwing RankDeficientError.
  bool allow_deficient = false;
  double confidence = 0.95;
};

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t = 0.0;
  double p = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool aliased = false;
};

struct FitResult {
  std::vector<Coefficient> coefficients;
  double sigma = 0.0;
  std::size_t df_resid = 0;
  double rss = 0.0;
  std::size_t n = 0;
  std::size_t rank = 0;
  double condition_number = 0.0;
  std::vector<TermColumns> column_map;
  std::vector<double> fitted;
  std::vector<double> residuals;
  std::vector<std::string> warnings;

  // Throws ValidationError for an unknown name.
  const Coefficient& coefficient(const std::string& name) const;
  std::vector<double> estimates() const;
};

inline constexpr double kConditionWarning = 1e8;

FitResult fit(const DenseMatrix& x, const std::vector<double>& y,
              const FitOptions& options = {});
FitResult fit(const Design& design, const std::vector<double>& y,
              const FitOptions& options = {});
FitResult fit_model(const Dataset& data, const ModelSpec& spec,
                    const ContrastSet& contrasts = {}, const FitOptions& options = {});

struct Cell {
  Labels levels;  // one per factor
  std::string label;
  double mean = 0.0;
  double sd = 0.0;  // NaN when n < 2
  std::size_t n = 0;
  double se = 0.0;  // NaN when n < 2
};

struct CellMeans {
  std::vector<std::string> factors;
  std::vector<Cell> cells;  // first factor varies slowest

  Labels labels() const;
  std::vector<double> means() const;
  std::vector<double> counts() const;
};

// Cell labels join the level labels with '_'. Throws when a cell is empty.
CellMeans cell_means(const Dataset& data, const std::vector<std::string>& factors);

// beta = H mu, with H's levels matched to the cell labels by name.
std::vector<double> coefficients_from_means(const HypothesisMatrix& h, const CellMeans& means);

struct AnovaRow {
  std::string term;
  double df = 0.0;
  double sum_sq = 0.0;
  double mean_sq = 0.0;
  double f = 0.0;
  double p = 0.0;
  double eta_sq_g = 0.0;
};

struct AnovaTable {
  std::vector<AnovaRow> rows;
  double resid_df = 0.0;
  double resid_ss = 0.0;
  double resid_ms = 0.0;
  // Centered when the model has an intercept, raw sum of squares otherwise.
  double total_ss = 0.0;
  std::vector<std::string> warnings;

  const AnovaRow& row(const std::string& term) const;
};

// Type-I sums of squares: terms enter one at a time in model order and each
// is tested against the full-model residual.
AnovaTable anova_sequential(const Design& design, const std::vector<double>& y);
AnovaTable anova_sequential(const Dataset& data, const ModelSpec& spec,
                            const ContrastSet& contrasts = {});

// Residual sum of squares after projecting y on the columns of x.
double residual_ss(const DenseMatrix& x, const std::vector<double>& y);

}  // namespace contrastlab
