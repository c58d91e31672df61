#pragma once

#include "contrastlab/contrasts.hpp"
#include "contrastlab/design.hpp"
#include "contrastlab/matrix.hpp"
#include "contrastlab/ols.hpp"

#include <string>
#include <utility>
#include <vector>

namespace contrastlab {

// (sum c_j mu_j)^2 / sum(c_j^2 / n_j). Throws ValidationError when c is not
// centered.
double ss_contrast(const std::vector<double>& c, const std::vector<double>& means,
                   const std::vector<double>& counts);
double ss_contrast(const std::vector<double>& c, const CellMeans& means);

struct AlertingEntry {
  std::string name;
  double ss_contrast = 0.0;
  double r2_alerting = 0.0;
};

struct AlertingReport {
  std::vector<AlertingEntry> entries;
  double ss_effect = 0.0;
  double ss_sum = 0.0;  // sum of the contrast SS
  bool spanning = false;  // ss_sum equals ss_effect within 1e-8 relative
  std::vector<std::string> warnings;
};

// Throws ValidationError when ss_effect <= 0.
AlertingReport r2_alerting(const std::vector<std::pair<std::string, double>>& ss_contrasts,
                           double ss_effect);

// One-way decomposition of `factor`'s effect into the columns of c. Warns
// when the cells are unbalanced or the columns are not orthogonal, since the
// per-contrast SS then no longer add up to the sequential SS.
AlertingReport alerting(const Dataset& data, const std::string& factor, const ContrastMatrix& c);

struct InteractionPartition {
  std::string factor_a;
  std::string factor_b;
  AnovaRow main_a;
  AnovaRow main_b;
  AnovaRow apriori;
  AnovaRow residual;     // interaction df - 1
  AnovaRow interaction;  // omnibus: apriori + residual
  double resid_df = 0.0;
  double resid_ss = 0.0;
  double resid_ms = 0.0;
  double r2_apriori = 0.0;
  double r2_residual = 0.0;
  std::vector<std::string> notes;
};

// Splits the a x b interaction into a 1-df a priori contrast (rows = levels
// of a, columns = levels of b, all row and column sums zero) and the
// remaining interaction df. Order of entry: main effects of a and b (sum
// coded), the a priori column, the residual interaction columns.
InteractionPartition partition_interaction(const Dataset& data, const std::string& a,
                                           const std::string& b, const DenseMatrix& apriori);

}  // namespace contrastlab
