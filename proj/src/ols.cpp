#include "contrastlab/ols.hpp"

#include "contrastlab/distributions.hpp"
#include "contrastlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace contrastlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::VectorXd as_vector(const std::vector<double>& y) {
  return Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

std::vector<double> as_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Columns that do not raise the rank when added left to right.
std::vector<std::size_t> aliased_columns(const DenseMatrix& x) {
  std::vector<std::size_t> aliased;
  std::vector<std::size_t> kept;
  std::size_t current = 0;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto trial = kept;
    trial.push_back(j);
    const std::size_t r = rank(x.select_columns(trial));
    if (r > current) {
      kept = std::move(trial);
      current = r;
    } else {
      aliased.push_back(j);
    }
  }
  return aliased;
}

}  // namespace

const Coefficient& FitResult::coefficient(const std::string& name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return c;
  }
  throw ValidationError("no coefficient named '" + name + "'");
}

std::vector<double> FitResult::estimates() const {
  std::vector<double> out;
  for (const auto& c : coefficients) out.push_back(c.estimate);
  return out;
}

FitResult fit(const DenseMatrix& x, const std::vector<double>& y, const FitOptions& options) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) {
    throw DimensionError("design has " + std::to_string(n) + " rows but the response has " +
                         std::to_string(y.size()) + " values");
  }
  if (p == 0) throw ValidationError("design matrix has no columns");
  if (n < p + 1) {
    throw ValidationError("too few observations: " + std::to_string(n) + " for " +
                          std::to_string(p) + " coefficients (need at least " +
                          std::to_string(p + 1) + ")");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw ValidationError("confidence level must lie in (0, 1)");
  }

  FitResult result;
  result.n = n;
  result.rank = rank(x);
  std::vector<bool> is_aliased(p, false);
  if (result.rank < p) {
    const auto aliased = aliased_columns(x);
    std::string names;
    for (auto j : aliased) {
      names += (names.empty() ? "" : ", ") + x.col_label(j);
      is_aliased[j] = true;
    }
    if (!options.allow_deficient) {
      throw RankDeficientError("design matrix is rank deficient; aliased columns: " + names);
    }
    result.warnings.push_back("rank deficient design (rank " + std::to_string(result.rank) +
                              " of " + std::to_string(p) + "); aliased columns: " + names);
  }

  const auto sv = singular_values(x);
  double smallest = 0.0;
  for (double s : sv) {
    if (s > kDefaultRankTolerance * sv.front()) smallest = s;
  }
  result.condition_number = smallest > 0.0 ? sv.front() / smallest : kNaN;
  if (result.condition_number > kConditionWarning) {
    result.warnings.push_back("design matrix is ill-conditioned (condition number " +
                              format_number(result.condition_number, false, 3) + ")");
  }

  const DenseMatrix g = ginv(x);
  const Eigen::VectorXd yv = as_vector(y);
  const Eigen::VectorXd beta = g.eigen() * yv;
  const Eigen::VectorXd fitted = x.eigen() * beta;
  const Eigen::VectorXd resid = yv - fitted;
  result.fitted = as_std(fitted);
  result.residuals = as_std(resid);
  result.rss = resid.squaredNorm();
  result.df_resid = n - result.rank;
  const double df = static_cast<double>(result.df_resid);

  // Perfect fits leave rounding noise in the residuals.
  const double noise = 1e-12 * std::max(1.0, yv.norm());
  if (resid.norm() <= noise) {
    result.rss = 0.0;
    result.warnings.push_back("residual variance is zero (perfect fit); t and p are undefined");
  }
  result.sigma = std::sqrt(result.rss / df);

  // (X'X)^-1 as G G' with G the pseudoinverse of X.
  const Eigen::MatrixXd xtx_inv = g.eigen() * g.eigen().transpose();
  const double crit = t_quantile(0.5 + options.confidence / 2.0, df);

  for (std::size_t j = 0; j < p; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    Coefficient c;
    c.name = x.col_label(j);
    c.estimate = beta(jj);
    c.aliased = is_aliased[j];
    if (c.aliased) {
      c.std_error = c.t = c.p = c.ci_low = c.ci_high = kNaN;
    } else {
      c.std_error = result.sigma * std::sqrt(std::max(0.0, xtx_inv(jj, jj)));
      if (c.std_error > 0.0) {
        c.t = c.estimate / c.std_error;
        c.p = t_two_sided_p(c.t, df);
      } else {
        c.t = c.p = kNaN;
      }
      c.ci_low = c.estimate - crit * c.std_error;
      c.ci_high = c.estimate + crit * c.std_error;
    }
    result.coefficients.push_back(c);
  }
  return result;
}

FitResult fit(const Design& design, const std::vector<double>& y, const FitOptions& options) {
  FitResult result = fit(design.matrix, y, options);
  result.column_map = design.terms;
  if (design.intercept) result.column_map.insert(result.column_map.begin(), {"(Intercept)", {0}});
  return result;
}

FitResult fit_model(const Dataset& data, const ModelSpec& spec, const ContrastSet& contrasts,
                    const FitOptions& options) {
  return fit(expand_design(data, spec, contrasts), data.response, options);
}

Labels CellMeans::labels() const {
  Labels out;
  for (const auto& c : cells) out.push_back(c.label);
  return out;
}

std::vector<double> CellMeans::means() const {
  std::vector<double> out;
  for (const auto& c : cells) out.push_back(c.mean);
  return out;
}

std::vector<double> CellMeans::counts() const {
  std::vector<double> out;
  for (const auto& c : cells) out.push_back(static_cast<double>(c.n));
  return out;
}

CellMeans cell_means(const Dataset& data, const std::vector<std::string>& factors) {
  data.validate();
  if (factors.empty()) throw ValidationError("cell means need at least one factor");
  std::vector<const Factor*> fs;
  for (const auto& name : factors) {
    const Factor* f = data.find_factor(name);
    if (!f) throw ValidationError("unknown factor '" + name + "'");
    fs.push_back(f);
  }

  std::size_t total = 1;
  for (const auto* f : fs) total *= f->levels.size();
  // Cell index with the first factor slowest.
  auto index_of = [&](std::size_t obs) {
    std::size_t idx = 0;
    for (const auto* f : fs) idx = idx * f->levels.size() + f->codes[obs];
    return idx;
  };
  std::vector<std::vector<double>> values(total);
  for (std::size_t i = 0; i < data.n(); ++i) values[index_of(i)].push_back(data.response[i]);

  CellMeans out;
  out.factors = factors;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Cell cell;
    std::size_t rest = idx;
    cell.levels.resize(fs.size());
    for (std::size_t k = fs.size(); k-- > 0;) {
      cell.levels[k] = fs[k]->levels[rest % fs[k]->levels.size()];
      rest /= fs[k]->levels.size();
    }
    for (const auto& l : cell.levels) cell.label += (cell.label.empty() ? "" : "_") + l;
    const auto& v = values[idx];
    if (v.empty()) throw ValidationError("cell '" + cell.label + "' has no observations");
    cell.n = v.size();
    double sum = 0.0;
    for (double d : v) sum += d;
    cell.mean = sum / static_cast<double>(cell.n);
    if (cell.n >= 2) {
      double ss = 0.0;
      for (double d : v) ss += (d - cell.mean) * (d - cell.mean);
      cell.sd = std::sqrt(ss / static_cast<double>(cell.n - 1));
      cell.se = cell.sd / std::sqrt(static_cast<double>(cell.n));
    } else {
      cell.sd = cell.se = kNaN;
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

std::vector<double> coefficients_from_means(const HypothesisMatrix& h, const CellMeans& means) {
  const Labels labels = means.labels();
  if (h.levels().size() != labels.size()) {
    throw DimensionError("hypothesis covers " + std::to_string(h.levels().size()) +
                         " cells but there are " + std::to_string(labels.size()) + " cell means");
  }
  std::vector<double> mu;
  for (const auto& level : h.levels()) {
    const auto it = std::find(labels.begin(), labels.end(), level);
    if (it == labels.end()) {
      throw ValidationError("hypothesis level '" + level + "' does not match any cell");
    }
    mu.push_back(means.cells[static_cast<std::size_t>(it - labels.begin())].mean);
  }
  return matvec(h.rows(), mu);
}

const AnovaRow& AnovaTable::row(const std::string& term) const {
  for (const auto& r : rows) {
    if (r.term == term) return r;
  }
  throw ValidationError("no ANOVA row for term '" + term + "'");
}

double residual_ss(const DenseMatrix& x, const std::vector<double>& y) {
  const Eigen::VectorXd yv = as_vector(y);
  if (x.cols() == 0) return yv.squaredNorm();
  const Eigen::VectorXd fitted = x.eigen() * (ginv(x).eigen() * yv);
  return (yv - fitted).squaredNorm();
}

AnovaTable anova_sequential(const Design& design, const std::vector<double>& y) {
  const DenseMatrix& x = design.matrix;
  if (y.size() != x.rows()) throw DimensionError("response length does not match the design");
  if (design.terms.empty()) throw ValidationError("ANOVA needs at least one term");

  AnovaTable table;
  std::vector<std::size_t> included;
  if (design.intercept) included.push_back(0);
  std::size_t current_rank = rank(x.select_columns(included));
  double current_rss = residual_ss(x.select_columns(included), y);

  const Eigen::VectorXd yv = as_vector(y);
  table.total_ss = design.intercept ? (yv.array() - yv.mean()).matrix().squaredNorm()
                                    : yv.squaredNorm();

  struct Step {
    std::string term;
    std::size_t df;
    double ss;
  };
  std::vector<Step> steps;
  for (const auto& term : design.terms) {
    included.insert(included.end(), term.columns.begin(), term.columns.end());
    const DenseMatrix sub = x.select_columns(included);
    const std::size_t r = rank(sub);
    const double rss = residual_ss(sub, y);
    steps.push_back({term.term, r - current_rank, std::max(0.0, current_rss - rss)});
    if (r == current_rank) {
      table.warnings.push_back("term '" + term.term + "' is aliased with earlier terms");
    }
    current_rank = r;
    current_rss = rss;
  }

  const std::size_t n = x.rows();
  if (current_rank >= n) {
    throw ValidationError("no residual degrees of freedom left for the ANOVA");
  }
  table.resid_df = static_cast<double>(n - current_rank);
  table.resid_ss = current_rss;
  table.resid_ms = current_rss / table.resid_df;

  for (const auto& s : steps) {
    AnovaRow row;
    row.term = s.term;
    row.df = static_cast<double>(s.df);
    row.sum_sq = s.df == 0 ? 0.0 : s.ss;
    if (s.df == 0) {
      row.mean_sq = row.f = row.p = row.eta_sq_g = kNaN;
    } else {
      row.mean_sq = row.sum_sq / row.df;
      row.f = table.resid_ms > 0.0 ? row.mean_sq / table.resid_ms : kNaN;
      row.p = std::isnan(row.f) ? kNaN : f_sf(row.f, row.df, table.resid_df);
      row.eta_sq_g = row.sum_sq / (row.sum_sq + table.resid_ss);
    }
    table.rows.push_back(row);
  }
  return table;
}

AnovaTable anova_sequential(const Dataset& data, const ModelSpec& spec,
                            const ContrastSet& contrasts) {
  return anova_sequential(expand_design(data, spec, contrasts), data.response);
}

}  // namespace contrastlab
