#include "contrastlab/simulate.hpp"

#include "contrastlab/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace contrastlab {

namespace {

constexpr int kMaxRedraws = 10;

std::size_t product(const std::vector<std::size_t>& levels) {
  std::size_t p = 1;
  for (auto l : levels) p *= l;
  return p;
}

// Level combination of cell `index`, first factor slowest.
std::vector<std::size_t> unflatten(std::size_t index, const std::vector<std::size_t>& levels) {
  std::vector<std::size_t> out(levels.size());
  for (std::size_t f = levels.size(); f-- > 0;) {
    out[f] = index % levels[f];
    index /= levels[f];
  }
  return out;
}

void check_correlation(const DenseMatrix& r, std::size_t w) {
  if (r.rows() != w || r.cols() != w) {
    throw DimensionError("correlation matrix must be " + std::to_string(w) + "x" +
                         std::to_string(w));
  }
  for (std::size_t i = 0; i < w; ++i) {
    if (std::abs(r(i, i) - 1.0) > 1e-12) {
      throw ValidationError("correlation matrix needs a unit diagonal");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(r(i, j) - r(j, i)) > 1e-12) {
        throw ValidationError("correlation matrix is not symmetric");
      }
    }
  }
}

void validate(const DesignSpec& spec) {
  for (auto l : spec.between_levels) {
    if (l < 2) throw ValidationError("every between-subject factor needs at least 2 levels");
  }
  for (auto l : spec.within_levels) {
    if (l < 2) throw ValidationError("every within-subject factor needs at least 2 levels");
  }
  if (spec.between_levels.size() + spec.within_levels.size() > 26) {
    throw ValidationError("at most 26 factors are supported");
  }
  if (spec.n_per_cell < 2) {
    throw ValidationError("n per cell must be at least 2 so the sample SD is defined");
  }
  const std::size_t b = between_cells(spec);
  const std::size_t w = within_cells(spec);
  if (spec.means.rows() != b || spec.means.cols() != w) {
    throw DimensionError("means must be " + std::to_string(b) + "x" + std::to_string(w) +
                         ", got " + std::to_string(spec.means.rows()) + "x" +
                         std::to_string(spec.means.cols()));
  }
  const bool scalar_sd = spec.sd.rows() == 1 && spec.sd.cols() == 1;
  if (!scalar_sd && (spec.sd.rows() != b || spec.sd.cols() != w)) {
    throw DimensionError("SD must be a single value or a " + std::to_string(b) + "x" +
                         std::to_string(w) + " matrix");
  }
  for (double s : spec.sd.values()) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("SD entries must be positive");
  }
  for (double m : spec.means.values()) {
    if (!std::isfinite(m)) throw ValidationError("means must be finite");
  }
  if (!spec.correlation.empty()) {
    if (w < 2) throw ValidationError("a correlation needs at least 2 within-subject cells");
    if (spec.correlation.size() != 1 && spec.correlation.size() != b) {
      throw DimensionError("give one correlation matrix, or one per between cell (" +
                           std::to_string(b) + ")");
    }
    if (spec.n_per_cell <= w) {
      throw ValidationError("exact correlations need more subjects per cell (" +
                            std::to_string(spec.n_per_cell) + ") than within cells (" +
                            std::to_string(w) + ")");
    }
    for (const auto& r : spec.correlation) check_correlation(r, w);
  }
}

// n x w block of scores with column means 0 and SDs 1.
Eigen::MatrixXd standardized_scores(std::mt19937_64& rng, Eigen::Index n, Eigen::Index w) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    Eigen::MatrixXd z(n, w);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < w; ++j) z(i, j) = normal(rng);
    }
    z.rowwise() -= z.colwise().mean();
    bool ok = true;
    for (Eigen::Index j = 0; j < w; ++j) {
      const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(n - 1));
      if (!(sd > 1e-12)) {
        ok = false;
        break;
      }
      z.col(j) /= sd;
    }
    if (ok) return z;
  }
  throw NumericalError("could not draw non-degenerate scores");
}

// n x w scores with zero means and sample covariance exactly I.
Eigen::MatrixXd whitened_scores(std::mt19937_64& rng, Eigen::Index n, Eigen::Index w) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    Eigen::MatrixXd z(n, w);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < w; ++j) z(i, j) = normal(rng);
    }
    z.rowwise() -= z.colwise().mean();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(w).triangularView<Eigen::Upper>();
    const double largest = r.diagonal().cwiseAbs().maxCoeff();
    if (!(r.diagonal().cwiseAbs().minCoeff() > 1e-10 * largest)) continue;
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, w);
    // Re-center to remove rounding drift, then rescale.
    q.rowwise() -= q.colwise().mean();
    return q * std::sqrt(static_cast<double>(n - 1));
  }
  throw NumericalError("could not draw non-degenerate within-subject scores");
}

}  // namespace

std::size_t between_cells(const DesignSpec& spec) { return product(spec.between_levels); }
std::size_t within_cells(const DesignSpec& spec) { return product(spec.within_levels); }

DenseMatrix constant_correlation(std::size_t w, double r) {
  DenseMatrix m(w, w);
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = 0; j < w; ++j) m(i, j) = i == j ? 1.0 : r;
  }
  return m;
}

Dataset mixed_design(const DesignSpec& spec) {
  validate(spec);
  const std::size_t b = between_cells(spec);
  const std::size_t w = within_cells(spec);
  const std::size_t n = spec.n_per_cell;
  const bool scalar_sd = spec.sd.rows() == 1 && spec.sd.cols() == 1;

  std::vector<Eigen::MatrixXd> cholesky;
  for (const auto& r : spec.correlation) {
    Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(r.eigen())};
    if (llt.info() != Eigen::Success) {
      throw NumericalError("correlation matrix is not positive definite");
    }
    cholesky.push_back(llt.matrixL());
  }

  std::mt19937_64 rng(spec.seed);
  Dataset data;
  data.response_name = "DV";
  std::vector<Factor> between(spec.between_levels.size());
  std::vector<Factor> within(spec.within_levels.size());
  auto init = [](Factor& f, const std::string& prefix, std::size_t index, std::size_t levels) {
    const char letter = static_cast<char>('A' + index);
    f.name = prefix + letter;
    for (std::size_t l = 1; l <= levels; ++l) f.levels.push_back(letter + std::to_string(l));
  };
  for (std::size_t f = 0; f < between.size(); ++f) init(between[f], "B_", f, spec.between_levels[f]);
  for (std::size_t f = 0; f < within.size(); ++f) init(within[f], "W_", f, spec.within_levels[f]);
  Factor id;
  id.name = "id";

  const auto ni = static_cast<Eigen::Index>(n);
  const auto wi = static_cast<Eigen::Index>(w);
  for (std::size_t g = 0; g < b; ++g) {
    Eigen::MatrixXd scores;
    if (!cholesky.empty()) {
      const auto& l = cholesky.size() == 1 ? cholesky.front() : cholesky[g];
      scores = whitened_scores(rng, ni, wi) * l.transpose();
    } else {
      scores = standardized_scores(rng, ni, wi);
    }
    const auto b_codes = unflatten(g, spec.between_levels);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t subject = g * n + s;
      id.levels.push_back(std::to_string(subject + 1));
      for (std::size_t c = 0; c < w; ++c) {
        const double sd = scalar_sd ? spec.sd(0, 0) : spec.sd(g, c);
        double y = spec.means(g, c) +
                   sd * scores(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(c));
        if (spec.round_dv) y = std::round(y);
        data.response.push_back(y);
        id.codes.push_back(subject);
        for (std::size_t f = 0; f < between.size(); ++f) between[f].codes.push_back(b_codes[f]);
        const auto w_codes = unflatten(c, spec.within_levels);
        for (std::size_t f = 0; f < within.size(); ++f) within[f].codes.push_back(w_codes[f]);
      }
    }
  }

  for (auto& f : between) data.factors.push_back(std::move(f));
  for (auto& f : within) data.factors.push_back(std::move(f));
  data.factors.push_back(std::move(id));
  return data;
}

}  // namespace contrastlab
