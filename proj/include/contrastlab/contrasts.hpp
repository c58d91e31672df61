#pragma once

#include "contrastlab/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace contrastlab {

inline constexpr double kCenterTolerance = 1e-9;

// k x m coding of a factor's levels, m <= k - 1. Unless allow_deficient is
// set, the columns together with an intercept must be linearly independent.
class ContrastMatrix {
 public:
  ContrastMatrix() = default;
  ContrastMatrix(Labels levels, DenseMatrix matrix, Labels column_names,
                 bool allow_deficient = false);

  const Labels& levels() const noexcept { return levels_; }
  // Labeled: rows are levels, columns are column_names.
  const DenseMatrix& matrix() const noexcept { return matrix_; }
  const Labels& column_names() const noexcept { return column_names_; }
  bool allow_deficient() const noexcept { return allow_deficient_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  std::size_t k() const noexcept { return levels_.size(); }
  std::size_t m() const noexcept { return column_names_.size(); }

 private:
  Labels levels_;
  DenseMatrix matrix_;
  Labels column_names_;
  bool allow_deficient_ = false;
  std::vector<std::string> notes_;
};

// One weight vector per row over the k condition means. When
// includes_intercept is set the first row is the intercept and its weights
// must sum to 1.
class HypothesisMatrix {
 public:
  HypothesisMatrix() = default;
  HypothesisMatrix(Labels levels, DenseMatrix rows, bool includes_intercept,
                   Labels row_names = {});

  // Skips the intercept-sum check; used for pseudoinverses of deficient codings.
  static HypothesisMatrix unchecked(Labels levels, DenseMatrix rows, bool includes_intercept,
                                    Labels row_names);

  const Labels& levels() const noexcept { return levels_; }
  const DenseMatrix& rows() const noexcept { return rows_; }
  bool includes_intercept() const noexcept { return includes_intercept_; }
  const Labels& row_names() const noexcept { return row_names_; }

 private:
  Labels levels_;
  DenseMatrix rows_;
  bool includes_intercept_ = false;
  Labels row_names_;
};

Labels default_levels(std::size_t k);

ContrastMatrix treatment(const Labels& levels);
ContrastMatrix sum_contrast(const Labels& levels);
// Sum coding halved. For two levels the sign is flipped so the first level
// is coded -1/2 and the slope is mu2 - mu1.
ContrastMatrix scaled_sum(const Labels& levels);
// Successive differences: coefficient j estimates mu_{j+1} - mu_j.
ContrastMatrix repeated(const Labels& levels);
// Orthonormal trends over equally spaced scores 1..k.
ContrastMatrix polynomial(const Labels& levels);
ContrastMatrix helmert(const Labels& levels);

ContrastMatrix treatment(std::size_t k);
ContrastMatrix sum_contrast(std::size_t k);
ContrastMatrix scaled_sum(std::size_t k);
ContrastMatrix repeated(std::size_t k);
ContrastMatrix polynomial(std::size_t k);
ContrastMatrix helmert(std::size_t k);

// Builder by name: treatment, sum, scaled_sum, repeated, polynomial, helmert.
ContrastMatrix build_contrast(const std::string& kind, const Labels& levels);
const std::vector<std::string>& builder_names();

// Wraps user columns. Column names come from the matrix column labels when
// present. Throws RankDeficientError naming dependent columns unless
// allow_deficient.
ContrastMatrix custom(const DenseMatrix& matrix, const Labels& levels,
                      bool allow_deficient = false);

// Centers the predicted means and rescales them to the smallest integers
// when they share a common rational step.
ContrastMatrix from_predicted_means(const std::vector<double>& means, const Labels& levels);
ContrastMatrix from_predicted_means(const std::vector<double>& means);

ContrastMatrix hypothesis_to_contrast(const HypothesisMatrix& h);
HypothesisMatrix contrast_to_hypothesis(const ContrastMatrix& c, bool with_intercept);

struct ContrastDiagnostics {
  std::vector<double> column_sums;
  std::vector<bool> centered;
  DenseMatrix dot_products;
  // NaN where a column is constant.
  DenseMatrix correlations;
  std::size_t rank_with_intercept = 0;
  std::size_t columns = 0;
  bool all_centered = false;
  bool orthogonal = false;  // centered and pairwise dot products zero
};

ContrastDiagnostics diagnostics(const ContrastMatrix& c);

}  // namespace contrastlab
