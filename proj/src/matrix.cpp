#include "contrastlab/matrix.hpp"

#include "contrastlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace contrastlab {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

void check_labels(const std::optional<Labels>& labels, std::size_t expected,
                  const char* which) {
  if (labels && labels->size() != expected) {
    throw DimensionError(std::string(which) + " label count " +
                         std::to_string(labels->size()) + " does not match dimension " +
                         std::to_string(expected));
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  if (line.find('\t') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(trim(std::string_view(line).substr(start, tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
  } else {
    std::istringstream in(line);
    std::string token;
    while (in >> token) fields.push_back(token);
  }
  return fields;
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : values_(RowMajorMatrix::Zero(as_index(rows), as_index(cols))) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : values_(as_index(rows), as_index(cols)) {
  if (row_major.size() != rows * cols) {
    throw DimensionError("expected " + std::to_string(rows * cols) + " values for a " +
                         std::to_string(rows) + "x" + std::to_string(cols) +
                         " matrix, got " + std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), values_.data());
}

DenseMatrix::DenseMatrix(RowMajorMatrix values) : values_(std::move(values)) {}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t p = n == 0 ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(n * p);
  for (const auto& r : rows) {
    if (r.size() != p) throw DimensionError("ragged rows in matrix literal");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return DenseMatrix(n, p, std::move(flat));
}

DenseMatrix DenseMatrix::from_columns(const std::vector<std::vector<double>>& columns) {
  const std::size_t p = columns.size();
  const std::size_t n = p == 0 ? 0 : columns.front().size();
  DenseMatrix m(n, p);
  for (std::size_t j = 0; j < p; ++j) {
    if (columns[j].size() != n) throw DimensionError("ragged columns in matrix literal");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  return DenseMatrix(RowMajorMatrix::Identity(as_index(n), as_index(n)));
}

DenseMatrix DenseMatrix::column_vector(const std::vector<double>& values) {
  return DenseMatrix(values.size(), 1, values);
}

std::vector<double> DenseMatrix::values() const {
  return std::vector<double>(values_.data(), values_.data() + values_.size());
}

std::vector<double> DenseMatrix::row(std::size_t i) const {
  std::vector<double> out(cols());
  for (std::size_t j = 0; j < cols(); ++j) out[j] = (*this)(i, j);
  return out;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
  std::vector<double> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = (*this)(i, j);
  return out;
}

void DenseMatrix::set_row_labels(std::optional<Labels> labels) {
  check_labels(labels, rows(), "row");
  row_labels_ = std::move(labels);
}

void DenseMatrix::set_col_labels(std::optional<Labels> labels) {
  check_labels(labels, cols(), "column");
  col_labels_ = std::move(labels);
}

DenseMatrix DenseMatrix::with_labels(std::optional<Labels> row_labels,
                                     std::optional<Labels> col_labels) const {
  DenseMatrix copy = *this;
  copy.set_row_labels(std::move(row_labels));
  copy.set_col_labels(std::move(col_labels));
  return copy;
}

Labels DenseMatrix::row_label_list() const {
  Labels out;
  for (std::size_t i = 0; i < rows(); ++i) out.push_back(row_label(i));
  return out;
}

Labels DenseMatrix::col_label_list() const {
  Labels out;
  for (std::size_t j = 0; j < cols(); ++j) out.push_back(col_label(j));
  return out;
}

std::string DenseMatrix::row_label(std::size_t i) const {
  return row_labels_ ? (*row_labels_)[i] : std::to_string(i + 1);
}

std::string DenseMatrix::col_label(std::size_t j) const {
  return col_labels_ ? (*col_labels_)[j] : std::to_string(j + 1);
}

DenseMatrix DenseMatrix::select_columns(const std::vector<std::size_t>& columns) const {
  DenseMatrix out(rows(), columns.size());
  Labels names;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= cols()) throw DimensionError("column index out of range");
    out.values_.col(as_index(c)) = values_.col(as_index(columns[c]));
    if (col_labels_) names.push_back((*col_labels_)[columns[c]]);
  }
  out.row_labels_ = row_labels_;
  if (col_labels_) out.col_labels_ = std::move(names);
  return out;
}

DenseMatrix DenseMatrix::drop_column(std::size_t j) const {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < cols(); ++c) {
    if (c != j) keep.push_back(c);
  }
  return select_columns(keep);
}

DenseMatrix DenseMatrix::prepend_column(const std::vector<double>& column,
                                        const std::string& label) const {
  if (column.size() != rows()) throw DimensionError("prepended column has wrong length");
  RowMajorMatrix joined(values_.rows(), values_.cols() + 1);
  for (std::size_t i = 0; i < rows(); ++i) joined(as_index(i), 0) = column[i];
  joined.rightCols(values_.cols()) = values_;
  DenseMatrix out(std::move(joined));
  out.row_labels_ = row_labels_;
  Labels names{label};
  for (std::size_t c = 0; c < cols(); ++c) names.push_back(col_label(c));
  out.col_labels_ = std::move(names);
  return out;
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix out(RowMajorMatrix(m.eigen().transpose()));
  out.set_row_labels(m.col_labels());
  out.set_col_labels(m.row_labels());
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
  DenseMatrix out(RowMajorMatrix(a.eigen() * b.eigen()));
  out.set_row_labels(a.row_labels());
  out.set_col_labels(b.col_labels());
  return out;
}

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
  return matmul(a, DenseMatrix::column_vector(x)).column(0);
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m.eigen()));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::size_t rank(const DenseMatrix& m, double tol) {
  if (!(tol > 0.0)) throw ValidationError("rank tolerance must be positive");
  const auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cutoff = tol * s.front();
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [cutoff](double v) { return v > cutoff; }));
}

DenseMatrix ginv(const DenseMatrix& m) {
  DenseMatrix out(m.cols(), m.rows());
  if (m.rows() > 0 && m.cols() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m.eigen()),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) *
                          std::numeric_limits<double>::epsilon() *
                          (s.size() > 0 ? s(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) inv(i) = 1.0 / s(i);
    }
    Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    out = DenseMatrix(RowMajorMatrix(pinv));
  }
  out.set_row_labels(m.col_labels());
  out.set_col_labels(m.row_labels());
  return out;
}

double relative_difference(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const double scale = std::max(1.0, b.eigen().norm());
  return (a.eigen() - b.eigen()).norm() / scale;
}

bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return ((a.eigen() - b.eigen()).cwiseAbs().array() <= tol).all();
}

std::optional<Fraction> as_fraction(double value, int max_denominator, double tol) {
  if (!std::isfinite(value)) return std::nullopt;
  for (int d = 1; d <= max_denominator; ++d) {
    const double p = std::round(value * d);
    if (std::abs(p) > 9e15) return std::nullopt;
    if (std::abs(value - p / d) <= tol) {
      return Fraction{static_cast<long long>(p), d};
    }
  }
  return std::nullopt;
}

std::string format_number(double value, bool fractions, int precision) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  if (fractions) {
    if (const auto f = as_fraction(value)) {
      if (f->denominator == 1) return std::to_string(f->numerator);
      return std::to_string(f->numerator) + "/" + std::to_string(f->denominator);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

double parse_number(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ValidationError("empty numeric field");
  const auto slash = s.find('/');
  auto parse_plain = [&s](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ValidationError("not a number: '" + s + "'");
    }
    if (used != part.size()) throw ValidationError("not a number: '" + s + "'");
    return v;
  };
  if (slash == std::string::npos) return parse_plain(s);
  const double num = parse_plain(s.substr(0, slash));
  const double den = parse_plain(s.substr(slash + 1));
  if (den == 0.0) throw ValidationError("zero denominator in '" + s + "'");
  return num / den;
}

std::string to_display(const DenseMatrix& m, const DisplayOptions& options) {
  std::vector<std::vector<std::string>> cells(m.rows() + 1,
                                              std::vector<std::string>(m.cols() + 1));
  for (std::size_t j = 0; j < m.cols(); ++j) cells[0][j + 1] = m.col_label(j);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cells[i + 1][0] = m.row_label(i);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells[i + 1][j + 1] = format_number(m(i, j), options.fractions, options.precision);
    }
  }
  std::vector<std::size_t> width(m.cols() + 1, 0);
  for (const auto& r : cells) {
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  std::ostringstream out;
  for (const auto& r : cells) {
    out << r[0] << std::string(width[0] - r[0].size(), ' ');
    for (std::size_t j = 1; j < r.size(); ++j) {
      out << "  " << std::string(width[j] - r[j].size(), ' ') << r[j];
    }
    out << '\n';
  }
  return out.str();
}

std::string to_text(const DenseMatrix& m) {
  std::ostringstream out;
  write_text(out, m);
  return out.str();
}

void write_text(std::ostream& out, const DenseMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) out << '\t' << m.col_label(j);
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << m.row_label(i);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      // Fractions only for values within a few ulps, so rounding noise from
      // a pseudoinverse is written back as the exact rational.
      const double ulps = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
      const auto f = as_fraction(v, 64, ulps);
      if (f) {
        out << '\t' << format_number(v, true);
      } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << '\t' << buf;
      }
    }
    out << '\n';
  }
}

DenseMatrix parse_text(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.push_back(split_fields(line));
  }
  if (lines.size() < 2) throw ValidationError("matrix text needs a header and at least one row");

  Labels header = lines.front();
  const bool empty_corner = !header.empty() && header.front().empty();
  if (empty_corner) header.erase(header.begin());
  const std::size_t ncols = lines[1].size() - 1;
  if (!empty_corner && header.size() == ncols + 1) header.erase(header.begin());
  if (header.size() != ncols) {
    throw ValidationError("header has " + std::to_string(header.size()) +
                          " labels but rows have " + std::to_string(ncols) + " values");
  }

  Labels row_labels;
  std::vector<double> values;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto& fields = lines[r];
    if (fields.size() != ncols + 1) {
      throw ValidationError("row " + std::to_string(r) + " has " +
                            std::to_string(fields.size() - 1) + " values, expected " +
                            std::to_string(ncols));
    }
    row_labels.push_back(fields.front());
    for (std::size_t j = 1; j < fields.size(); ++j) values.push_back(parse_number(fields[j]));
  }
  DenseMatrix m(row_labels.size(), ncols, std::move(values));
  m.set_row_labels(std::move(row_labels));
  m.set_col_labels(std::move(header));
  return m;
}

DenseMatrix read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

}  // namespace contrastlab
