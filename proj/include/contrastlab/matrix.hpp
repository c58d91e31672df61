#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contrastlab {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Labels = std::vector<std::string>;

/**
 * Dense real matrix with optional row and column labels.
 *
 * Carrier for contrast, hypothesis and design matrices. Values are stored
 * row-major. Labels are advisory: arithmetic never looks at them, but the
 * operations below propagate them where the meaning is obvious (transpose
 * swaps them, matmul keeps the outer ones, ginv transfers them transposed).
 */
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  explicit DenseMatrix(RowMajorMatrix values);

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DenseMatrix from_columns(const std::vector<std::vector<double>>& columns);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix column_vector(const std::vector<double>& values);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }

  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const RowMajorMatrix& eigen() const noexcept { return values_; }

  std::vector<double> values() const;
  std::vector<double> row(std::size_t i) const;
  std::vector<double> column(std::size_t j) const;

  const std::optional<Labels>& row_labels() const noexcept { return row_labels_; }
  const std::optional<Labels>& col_labels() const noexcept { return col_labels_; }

  // Throws DimensionError when the label count does not match.
  void set_row_labels(std::optional<Labels> labels);
  void set_col_labels(std::optional<Labels> labels);
  DenseMatrix with_labels(std::optional<Labels> row_labels,
                          std::optional<Labels> col_labels) const;

  // All row or column labels, with index fallbacks.
  Labels row_label_list() const;
  Labels col_label_list() const;

  // Label i, or its 1-based index when unlabeled.
  std::string row_label(std::size_t i) const;
  std::string col_label(std::size_t j) const;

  DenseMatrix select_columns(const std::vector<std::size_t>& columns) const;
  DenseMatrix drop_column(std::size_t j) const;
  DenseMatrix prepend_column(const std::vector<double>& column,
                             const std::string& label) const;

 private:
  RowMajorMatrix values_;
  std::optional<Labels> row_labels_;
  std::optional<Labels> col_labels_;
};

DenseMatrix transpose(const DenseMatrix& m);

// Throws DimensionError when a.cols() != b.rows().
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x);

inline constexpr double kDefaultRankTolerance = 1e-10;

// Number of singular values exceeding tol * sigma_max. tol must be > 0.
std::size_t rank(const DenseMatrix& m, double tol = kDefaultRankTolerance);

std::vector<double> singular_values(const DenseMatrix& m);

// Moore-Penrose pseudoinverse via SVD. Singular values at or below
// max(rows, cols) * eps * sigma_max are treated as zero.
DenseMatrix ginv(const DenseMatrix& m);

// Frobenius-norm distance relative to max(1, ||b||_F).
double relative_difference(const DenseMatrix& a, const DenseMatrix& b);

bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol);

// ---------------------------------------------------------------------------
// Exact-fraction display and the labeled text format
// ---------------------------------------------------------------------------

struct Fraction {
  long long numerator = 0;
  long long denominator = 1;
};

// Nearest fraction with denominator <= max_denominator lying within tol of
// value, or nullopt.
std::optional<Fraction> as_fraction(double value, int max_denominator = 64,
                                    double tol = 1e-9);

// "3/4", "-1/3", "2", or a decimal with `precision` significant digits when
// no near-rational form exists.
std::string format_number(double value, bool fractions = true, int precision = 4);

// Parses "0.25", "-3/4", "1e-3". Throws ValidationError.
double parse_number(std::string_view text);

struct DisplayOptions {
  bool fractions = true;
  int precision = 4;
};

// Space-aligned table with labels, for humans.
std::string to_display(const DenseMatrix& m, const DisplayOptions& options = {});

// Tab-separated labeled text format: a header row of column labels (with an
// empty leading corner cell) then one labeled row per line. Near-rational
// entries are written as fractions, everything else at full precision, so
// the output re-reads bit-exactly.
std::string to_text(const DenseMatrix& m);
void write_text(std::ostream& out, const DenseMatrix& m);

// Reads the labeled text format. Fields may be separated by tabs or runs of
// spaces; the header's corner cell is optional; blank lines and lines
// starting with '#' are skipped; entries may be fractions.
DenseMatrix parse_text(std::string_view text);
DenseMatrix read_text_file(const std::string& path);

}  // namespace contrastlab
