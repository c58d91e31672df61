#include "contrastlab/effectsize.hpp"

#include "contrastlab/distributions.hpp"
#include "contrastlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace contrastlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Position in `labels` of each entry of `levels`: by name when the two lists
// hold the same labels, otherwise by position.
std::vector<std::size_t> match_levels(const Labels& labels, const Labels& levels,
                                      const std::string& what) {
  if (labels.size() != levels.size()) {
    throw DimensionError(what + " has " + std::to_string(labels.size()) + " entries for " +
                         std::to_string(levels.size()) + " levels");
  }
  Labels a = labels;
  Labels b = levels;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> out(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    out[l] = a == b ? static_cast<std::size_t>(
                          std::find(labels.begin(), labels.end(), levels[l]) - labels.begin())
                    : l;
  }
  return out;
}

AnovaRow test_row(std::string term, double df, double ss, double resid_df, double resid_ms,
                  double resid_ss) {
  AnovaRow r;
  r.term = std::move(term);
  r.df = df;
  r.sum_sq = ss;
  r.mean_sq = df > 0.0 ? ss / df : kNaN;
  r.f = resid_ms > 0.0 ? r.mean_sq / resid_ms : kNaN;
  r.p = std::isnan(r.f) ? kNaN : f_sf(r.f, df, resid_df);
  r.eta_sq_g = ss / (ss + resid_ss);
  return r;
}

}  // namespace

double ss_contrast(const std::vector<double>& c, const std::vector<double>& means,
                   const std::vector<double>& counts) {
  if (c.size() != means.size() || c.size() != counts.size()) {
    throw DimensionError("contrast has " + std::to_string(c.size()) + " weights for " +
                         std::to_string(means.size()) + " cells");
  }
  double sum = 0.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (!(counts[j] > 0.0)) throw ValidationError("cell sizes must be positive");
    sum += c[j];
    num += c[j] * means[j];
    den += c[j] * c[j] / counts[j];
  }
  if (std::abs(sum) > kCenterTolerance) {
    throw ValidationError("contrast weights sum to " + format_number(sum) +
                          "; the SS formula needs a centered contrast");
  }
  if (den == 0.0) throw ValidationError("contrast weights are all zero");
  return num * num / den;
}

double ss_contrast(const std::vector<double>& c, const CellMeans& means) {
  return ss_contrast(c, means.means(), means.counts());
}

AlertingReport r2_alerting(const std::vector<std::pair<std::string, double>>& ss_contrasts,
                           double ss_effect) {
  if (!(ss_effect > 0.0)) {
    throw ValidationError("the effect sum of squares is zero, so r2 alerting is undefined");
  }
  AlertingReport report;
  report.ss_effect = ss_effect;
  for (const auto& [name, ss] : ss_contrasts) {
    report.entries.push_back({name, ss, ss / ss_effect});
    report.ss_sum += ss;
  }
  report.spanning = std::abs(report.ss_sum - ss_effect) <= 1e-8 * std::max(1.0, ss_effect);
  return report;
}

AlertingReport alerting(const Dataset& data, const std::string& factor, const ContrastMatrix& c) {
  const CellMeans cells = cell_means(data, {factor});
  const Factor& f = *data.find_factor(factor);
  const auto row_of = match_levels(c.levels(), f.levels, "contrast for '" + factor + "'");

  double grand = 0.0;
  for (double y : data.response) grand += y;
  grand /= static_cast<double>(data.n());
  double ss_effect = 0.0;
  for (const auto& cell : cells.cells) {
    ss_effect += static_cast<double>(cell.n) * (cell.mean - grand) * (cell.mean - grand);
  }

  std::vector<std::pair<std::string, double>> ss;
  for (std::size_t j = 0; j < c.m(); ++j) {
    std::vector<double> weights;
    for (std::size_t l = 0; l < f.levels.size(); ++l) weights.push_back(c.matrix()(row_of[l], j));
    ss.emplace_back(c.column_names()[j], ss_contrast(weights, cells));
  }
  AlertingReport report = r2_alerting(ss, ss_effect);

  const auto counts = cells.counts();
  if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) {
    report.warnings.push_back(
        "unbalanced cells: contrast SS from the cell-means formula differ from sequential SS");
  }
  if (!diagnostics(c).orthogonal) {
    report.warnings.push_back(
        "contrast columns are not orthogonal: their SS need not add up to the effect SS");
  }
  return report;
}

InteractionPartition partition_interaction(const Dataset& data, const std::string& a,
                                           const std::string& b, const DenseMatrix& apriori) {
  data.validate();
  const Factor* fa = data.find_factor(a);
  const Factor* fb = data.find_factor(b);
  if (!fa) throw ValidationError("unknown factor '" + a + "'");
  if (!fb) throw ValidationError("unknown factor '" + b + "'");
  if (a == b) throw ValidationError("the two factors must differ");
  const std::size_t ka = fa->levels.size();
  const std::size_t kb = fb->levels.size();
  if (apriori.rows() != ka || apriori.cols() != kb) {
    throw DimensionError("a priori matrix is " + std::to_string(apriori.rows()) + "x" +
                         std::to_string(apriori.cols()) + " but the design is " +
                         std::to_string(ka) + "x" + std::to_string(kb));
  }

  double scale = 0.0;
  for (double v : apriori.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw ValidationError("a priori contrast is all zeros");
  const double tol = kCenterTolerance * std::max(1.0, scale);
  for (std::size_t i = 0; i < ka; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < kb; ++j) s += apriori(i, j);
    if (std::abs(s) > tol) {
      throw ValidationError("a priori row '" + apriori.row_label(i) +
                            "' does not sum to zero; the contrast would carry main effects");
    }
  }
  for (std::size_t j = 0; j < kb; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < ka; ++i) s += apriori(i, j);
    if (std::abs(s) > tol) {
      throw ValidationError("a priori column '" + apriori.col_label(j) +
                            "' does not sum to zero; the contrast would carry main effects");
    }
  }

  const auto row_of =
      apriori.row_labels()
          ? match_levels(*apriori.row_labels(), fa->levels, "a priori rows")
          : match_levels(fa->levels, fa->levels, "a priori rows");
  const auto col_of =
      apriori.col_labels()
          ? match_levels(*apriori.col_labels(), fb->levels, "a priori columns")
          : match_levels(fb->levels, fb->levels, "a priori columns");

  // Cell space, first factor slowest: apriori vector and the product basis of
  // the interaction.
  const std::size_t cells = ka * kb;
  const DenseMatrix sa = sum_contrast(fa->levels).matrix();
  const DenseMatrix sb = sum_contrast(fb->levels).matrix();
  Eigen::VectorXd v(static_cast<Eigen::Index>(cells));
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(cells),
                        static_cast<Eigen::Index>((ka - 1) * (kb - 1)));
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t j = 0; j < kb; ++j) {
      const auto cell = static_cast<Eigen::Index>(i * kb + j);
      v(cell) = apriori(row_of[i], col_of[j]);
      for (std::size_t q = 0; q + 1 < kb; ++q) {
        for (std::size_t p = 0; p + 1 < ka; ++p) {
          basis(cell, static_cast<Eigen::Index>(q * (ka - 1) + p)) = sa(i, p) * sb(j, q);
        }
      }
    }
  }

  // Orthogonal complement of v inside the interaction space.
  std::vector<Eigen::VectorXd> accepted{v.normalized()};
  std::vector<Eigen::VectorXd> residual_basis;
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::VectorXd w = basis.col(c);
    const double original = w.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : accepted) w -= u.dot(w) * u;
    }
    if (w.norm() > 1e-9 * original) {
      accepted.push_back(w.normalized());
      residual_basis.push_back(accepted.back());
    }
  }

  // Observation-level design.
  const std::size_t n = data.n();
  std::vector<std::vector<double>> columns;
  Labels names;
  Design design;
  design.intercept = true;
  columns.emplace_back(n, 1.0);
  names.push_back("(Intercept)");
  auto add_term = [&](const std::string& term, const std::vector<std::vector<double>>& cols,
                      const Labels& col_names) {
    TermColumns tc{term, {}};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      tc.columns.push_back(columns.size());
      columns.push_back(cols[c]);
      names.push_back(col_names[c]);
    }
    design.terms.push_back(std::move(tc));
  };
  auto cell_of = [&](std::size_t obs) { return fa->codes[obs] * kb + fb->codes[obs]; };

  for (const auto& [f, s] : {std::pair{fa, &sa}, std::pair{fb, &sb}}) {
    std::vector<std::vector<double>> cols;
    Labels col_names;
    for (std::size_t p = 0; p < s->cols(); ++p) {
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = (*s)(f->codes[i], p);
      cols.push_back(std::move(col));
      col_names.push_back(f->name + std::to_string(p + 1));
    }
    add_term(f->name, cols, col_names);
  }
  {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(static_cast<Eigen::Index>(cell_of(i)));
    add_term("apriori", {col}, {"apriori"});
  }
  {
    std::vector<std::vector<double>> cols;
    Labels col_names;
    for (std::size_t r = 0; r < residual_basis.size(); ++r) {
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) {
        col[i] = residual_basis[r](static_cast<Eigen::Index>(cell_of(i)));
      }
      cols.push_back(std::move(col));
      col_names.push_back("residual" + std::to_string(r + 1));
    }
    if (!cols.empty()) add_term("residual", cols, col_names);
  }
  design.matrix = DenseMatrix::from_columns(columns);
  design.matrix.set_col_labels(names);
  design.rank = rank(design.matrix);

  const AnovaTable table = anova_sequential(design, data.response);
  const AnovaRow& apriori_row = table.row("apriori");
  if (apriori_row.df < 1.0) {
    throw ValidationError("a priori contrast is collinear with the main effects");
  }

  InteractionPartition out;
  out.factor_a = a;
  out.factor_b = b;
  out.resid_df = table.resid_df;
  out.resid_ss = table.resid_ss;
  out.resid_ms = table.resid_ms;
  out.main_a = table.row(a);
  out.main_b = table.row(b);
  out.apriori = apriori_row;
  if (residual_basis.empty()) {
    out.residual = test_row("residual", 0.0, 0.0, table.resid_df, table.resid_ms, table.resid_ss);
  } else {
    out.residual = table.row("residual");
  }
  const double ss_int = out.apriori.sum_sq + out.residual.sum_sq;
  out.interaction = test_row(a + ":" + b, out.apriori.df + out.residual.df, ss_int,
                             table.resid_df, table.resid_ms, table.resid_ss);
  if (ss_int > 0.0) {
    out.r2_apriori = out.apriori.sum_sq / ss_int;
    out.r2_residual = out.residual.sum_sq / ss_int;
  } else {
    out.r2_apriori = out.r2_residual = kNaN;
    out.notes.push_back("interaction SS is zero; r2 alerting is undefined");
  }
  out.notes.push_back("order of entry: " + a + ", " + b +
                      ", a priori contrast, residual interaction");
  out.notes.insert(out.notes.end(), table.warnings.begin(), table.warnings.end());
  return out;
}

}  // namespace contrastlab
