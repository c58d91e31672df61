#include "contrastlab/contrasts.hpp"

#include "contrastlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace contrastlab {

namespace {

void require_levels(const Labels& levels) {
  if (levels.size() < 2) {
    throw ValidationError("a factor needs at least 2 levels, got " +
                          std::to_string(levels.size()));
  }
}

Labels numbered(std::size_t m) {
  Labels out;
  for (std::size_t j = 1; j <= m; ++j) out.push_back(std::to_string(j));
  return out;
}

double row_sum(const DenseMatrix& m, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
  return s;
}

// Indices of columns of [1 | m] that do not raise the rank when appended in
// order, reported as indices into m.
std::vector<std::size_t> dependent_columns(const DenseMatrix& m) {
  std::vector<std::size_t> dependent;
  std::vector<std::size_t> kept;
  DenseMatrix with_one = m.prepend_column(std::vector<double>(m.rows(), 1.0), "(Intercept)");
  std::size_t current = 1;
  kept.push_back(0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto trial = kept;
    trial.push_back(j + 1);
    const std::size_t r = rank(with_one.select_columns(trial));
    if (r > current) {
      kept = std::move(trial);
      current = r;
    } else {
      dependent.push_back(j);
    }
  }
  return dependent;
}

std::string ordinal_name(std::size_t degree) {
  switch (degree) {
    case 1: return ".L";
    case 2: return ".Q";
    case 3: return ".C";
    default: return "^" + std::to_string(degree);
  }
}

}  // namespace

ContrastMatrix::ContrastMatrix(Labels levels, DenseMatrix matrix, Labels column_names,
                               bool allow_deficient)
    : levels_(std::move(levels)),
      matrix_(std::move(matrix)),
      column_names_(std::move(column_names)),
      allow_deficient_(allow_deficient) {
  require_levels(levels_);
  if (matrix_.rows() != levels_.size()) {
    throw DimensionError("contrast matrix has " + std::to_string(matrix_.rows()) +
                         " rows but the factor has " + std::to_string(levels_.size()) +
                         " levels");
  }
  if (matrix_.cols() == 0 || matrix_.cols() > levels_.size() - 1) {
    throw DimensionError("a contrast for " + std::to_string(levels_.size()) +
                         " levels needs 1 to " + std::to_string(levels_.size() - 1) +
                         " columns, got " + std::to_string(matrix_.cols()));
  }
  if (column_names_.empty()) {
    column_names_ = matrix_.col_labels() ? *matrix_.col_labels() : numbered(matrix_.cols());
  }
  matrix_.set_row_labels(levels_);
  matrix_.set_col_labels(column_names_);

  const auto dependent = dependent_columns(matrix_);
  if (!dependent.empty() && !allow_deficient_) {
    std::string names;
    for (auto j : dependent) names += (names.empty() ? "" : ", ") + column_names_[j];
    throw RankDeficientError(
        "contrast columns are collinear with the intercept and earlier columns: " + names);
  }
}

HypothesisMatrix::HypothesisMatrix(Labels levels, DenseMatrix rows, bool includes_intercept,
                                   Labels row_names)
    : HypothesisMatrix(unchecked(std::move(levels), std::move(rows), includes_intercept,
                                 std::move(row_names))) {
  if (includes_intercept_) {
    const double s = row_sum(rows_, 0);
    if (std::abs(s - 1.0) > kCenterTolerance) {
      throw ValidationError("intercept weights sum to " + format_number(s) +
                            ", expected 1");
    }
  }
}

HypothesisMatrix HypothesisMatrix::unchecked(Labels levels, DenseMatrix rows,
                                             bool includes_intercept, Labels row_names) {
  if (rows.cols() != levels.size()) {
    throw DimensionError("hypothesis rows have " + std::to_string(rows.cols()) +
                         " weights but there are " + std::to_string(levels.size()) +
                         " levels");
  }
  if (rows.rows() == 0) throw DimensionError("hypothesis matrix has no rows");
  if (row_names.empty()) {
    if (rows.row_labels()) {
      row_names = *rows.row_labels();
    } else {
      for (std::size_t i = 0; i < rows.rows(); ++i) {
        row_names.push_back(includes_intercept && i == 0
                                ? "(Intercept)"
                                : "H" + std::to_string(includes_intercept ? i : i + 1));
      }
    }
  }
  HypothesisMatrix h;
  rows.set_row_labels(row_names);
  rows.set_col_labels(levels);
  h.levels_ = std::move(levels);
  h.rows_ = std::move(rows);
  h.includes_intercept_ = includes_intercept;
  h.row_names_ = std::move(row_names);
  return h;
}

Labels default_levels(std::size_t k) { return numbered(k); }

ContrastMatrix treatment(const Labels& levels) {
  require_levels(levels);
  const std::size_t k = levels.size();
  DenseMatrix m(k, k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) m(j + 1, j) = 1.0;
  return ContrastMatrix(levels, m, Labels(levels.begin() + 1, levels.end()));
}

ContrastMatrix sum_contrast(const Labels& levels) {
  require_levels(levels);
  const std::size_t k = levels.size();
  DenseMatrix m(k, k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    m(j, j) = 1.0;
    m(k - 1, j) = -1.0;
  }
  return ContrastMatrix(levels, m, numbered(k - 1));
}

ContrastMatrix scaled_sum(const Labels& levels) {
  require_levels(levels);
  const std::size_t k = levels.size();
  DenseMatrix m(k, k - 1);
  if (k == 2) {
    m(0, 0) = -0.5;
    m(1, 0) = 0.5;
  } else {
    for (std::size_t j = 0; j + 1 < k; ++j) {
      m(j, j) = 0.5;
      m(k - 1, j) = -0.5;
    }
  }
  return ContrastMatrix(levels, m, numbered(k - 1));
}

ContrastMatrix repeated(const Labels& levels) {
  require_levels(levels);
  const std::size_t k = levels.size();
  const double kd = static_cast<double>(k);
  DenseMatrix m(k, k - 1);
  Labels names;
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      m(i, j - 1) = i < j ? -static_cast<double>(k - j) / kd : static_cast<double>(j) / kd;
    }
    names.push_back(std::to_string(j + 1) + "-" + std::to_string(j));
  }
  return ContrastMatrix(levels, m, names);
}

ContrastMatrix polynomial(const Labels& levels) {
  require_levels(levels);
  const std::size_t k = levels.size();
  const Eigen::Index n = static_cast<Eigen::Index>(k);

  // Monic orthogonal polynomials at the centered scores via the three-term
  // recurrence, which spans the same nested spaces as Gram-Schmidt on
  // 1, x, x^2, ... and keeps each leading coefficient positive.
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = static_cast<double>(i) - (static_cast<double>(n) - 1.0) / 2.0;
  }
  Eigen::MatrixXd q(n, n);
  q.col(0) = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd curr = Eigen::VectorXd::Ones(n);
  double prev_norm2 = 1.0;
  for (Eigen::Index d = 1; d < n; ++d) {
    const double norm2 = curr.squaredNorm();
    const double a = curr.dot(x.cwiseProduct(curr)) / norm2;
    const double b = d == 1 ? 0.0 : norm2 / prev_norm2;
    Eigen::VectorXd next = (x.array() - a).matrix().cwiseProduct(curr) - b * prev;
    // Two passes of reorthogonalization against the accepted columns.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < d; ++j) next -= q.col(j).dot(next) * q.col(j);
    }
    prev = curr;
    prev_norm2 = norm2;
    curr = next;
    q.col(d) = next / next.norm();
  }

  DenseMatrix m(k, k - 1);
  Labels names;
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      m(i, j - 1) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    names.push_back(ordinal_name(j));
  }
  return ContrastMatrix(levels, m, names);
}

ContrastMatrix helmert(const Labels& levels) {
  require_levels(levels);
  const std::size_t k = levels.size();
  DenseMatrix m(k, k - 1);
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) m(i, j - 1) = -1.0;
    m(j, j - 1) = static_cast<double>(j);
  }
  return ContrastMatrix(levels, m, numbered(k - 1));
}

ContrastMatrix treatment(std::size_t k) { return treatment(default_levels(k)); }
ContrastMatrix sum_contrast(std::size_t k) { return sum_contrast(default_levels(k)); }
ContrastMatrix scaled_sum(std::size_t k) { return scaled_sum(default_levels(k)); }
ContrastMatrix repeated(std::size_t k) { return repeated(default_levels(k)); }
ContrastMatrix polynomial(std::size_t k) { return polynomial(default_levels(k)); }
ContrastMatrix helmert(std::size_t k) { return helmert(default_levels(k)); }

const std::vector<std::string>& builder_names() {
  static const std::vector<std::string> names{"treatment", "sum",        "scaled_sum",
                                              "repeated",  "polynomial", "helmert"};
  return names;
}

ContrastMatrix build_contrast(const std::string& kind, const Labels& levels) {
  if (kind == "treatment") return treatment(levels);
  if (kind == "sum") return sum_contrast(levels);
  if (kind == "scaled_sum") return scaled_sum(levels);
  if (kind == "repeated") return repeated(levels);
  if (kind == "polynomial") return polynomial(levels);
  if (kind == "helmert") return helmert(levels);
  throw ValidationError("unknown contrast kind '" + kind + "'");
}

ContrastMatrix custom(const DenseMatrix& matrix, const Labels& levels, bool allow_deficient) {
  Labels names = matrix.col_labels() ? *matrix.col_labels() : numbered(matrix.cols());
  return ContrastMatrix(levels, matrix, names, allow_deficient);
}

ContrastMatrix from_predicted_means(const std::vector<double>& means, const Labels& levels) {
  if (means.size() < 2) throw ValidationError("need at least 2 predicted means");
  if (levels.size() != means.size()) {
    throw DimensionError("got " + std::to_string(means.size()) + " means for " +
                         std::to_string(levels.size()) + " levels");
  }
  double mean = 0.0;
  double scale = 0.0;
  for (double v : means) {
    mean += v;
    scale = std::max(scale, std::abs(v));
  }
  mean /= static_cast<double>(means.size());
  std::vector<double> centered;
  double smallest = std::numeric_limits<double>::infinity();
  const double zero = kCenterTolerance * std::max(1.0, scale);
  for (double v : means) {
    const double c = v - mean;
    centered.push_back(std::abs(c) <= zero ? 0.0 : c);
    if (std::abs(c) > zero) smallest = std::min(smallest, std::abs(c));
  }
  if (!std::isfinite(smallest)) {
    throw ValidationError("predicted means are all equal, so they define no contrast");
  }

  bool scaled = false;
  for (int q = 1; q <= 64 && !scaled; ++q) {
    const double step = smallest / q;
    bool ok = true;
    for (double c : centered) {
      const double r = c / step;
      if (std::abs(r - std::round(r)) > kCenterTolerance * std::max(1.0, std::abs(r))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (double& c : centered) c = std::round(c / step);
      scaled = true;
    }
  }

  ContrastMatrix out(levels, DenseMatrix::column_vector(centered), {"custom"});
  if (!scaled) {
    out.add_note("no common rational step found; centered means returned unscaled");
  }
  return out;
}

ContrastMatrix from_predicted_means(const std::vector<double>& means) {
  return from_predicted_means(means, default_levels(means.size()));
}

ContrastMatrix hypothesis_to_contrast(const HypothesisMatrix& h) {
  const DenseMatrix& rows = h.rows();
  if (rank(rows) < rows.rows()) {
    throw RankDeficientError("hypothesis rows are linearly dependent (rank " +
                             std::to_string(rank(rows)) + " of " +
                             std::to_string(rows.rows()) + ")");
  }
  if (!h.includes_intercept()) {
    for (std::size_t i = 0; i < rows.rows(); ++i) {
      if (std::abs(row_sum(rows, i)) > kCenterTolerance) {
        throw ValidationError("hypothesis '" + h.row_names()[i] +
                              "' is not centered; add an intercept row with weights 1/k");
      }
    }
  }

  DenseMatrix x = ginv(rows);
  Labels names = h.row_names();
  if (h.includes_intercept()) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (std::abs(x(i, 0) - 1.0) > kCenterTolerance) {
        throw ValidationError(
            "the intercept column of the inverse is not all 1s; check that the intercept "
            "weights sum to 1 and the other hypotheses are centered");
      }
    }
    x = x.drop_column(0);
    names.erase(names.begin());
  }
  return ContrastMatrix(h.levels(), x, names);
}

HypothesisMatrix contrast_to_hypothesis(const ContrastMatrix& c, bool with_intercept) {
  Labels names = c.column_names();
  DenseMatrix coded = c.matrix();
  if (with_intercept) {
    coded = coded.prepend_column(std::vector<double>(c.k(), 1.0), "(Intercept)");
    names.insert(names.begin(), "(Intercept)");
  }
  DenseMatrix g = ginv(coded);
  if (c.allow_deficient()) {
    return HypothesisMatrix::unchecked(c.levels(), g, with_intercept, names);
  }
  return HypothesisMatrix(c.levels(), g, with_intercept, names);
}

ContrastDiagnostics diagnostics(const ContrastMatrix& c) {
  const DenseMatrix& m = c.matrix();
  ContrastDiagnostics d;
  d.columns = m.cols();
  d.all_centered = true;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j);
    d.column_sums.push_back(s);
    d.centered.push_back(std::abs(s) < kCenterTolerance);
    d.all_centered = d.all_centered && d.centered.back();
  }

  d.dot_products = DenseMatrix(RowMajorMatrix(m.eigen().transpose() * m.eigen()));
  d.dot_products.set_row_labels(c.column_names());
  d.dot_products.set_col_labels(c.column_names());

  const Eigen::MatrixXd centered = m.eigen().rowwise() - m.eigen().colwise().mean();
  const Eigen::MatrixXd cross = centered.transpose() * centered;
  d.correlations = DenseMatrix(m.cols(), m.cols());
  for (std::size_t a = 0; a < m.cols(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b) {
      const auto ia = static_cast<Eigen::Index>(a);
      const auto ib = static_cast<Eigen::Index>(b);
      const double denom = std::sqrt(cross(ia, ia) * cross(ib, ib));
      d.correlations(a, b) =
          denom > 0.0 ? cross(ia, ib) / denom : std::numeric_limits<double>::quiet_NaN();
    }
  }
  d.correlations.set_row_labels(c.column_names());
  d.correlations.set_col_labels(c.column_names());

  d.rank_with_intercept =
      rank(m.prepend_column(std::vector<double>(m.rows(), 1.0), "(Intercept)"));

  d.orthogonal = d.all_centered;
  for (std::size_t a = 0; a < m.cols() && d.orthogonal; ++a) {
    for (std::size_t b = a + 1; b < m.cols(); ++b) {
      if (std::abs(d.dot_products(a, b)) > kCenterTolerance) {
        d.orthogonal = false;
        break;
      }
    }
  }
  return d;
}

}  // namespace contrastlab
