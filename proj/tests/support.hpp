#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical routines.

#include "contrastlab/design.hpp"
#include "contrastlab/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace testsupport {

using contrastlab::DenseMatrix;

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> z;
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = z(rng);
  }
  return m;
}

// r x c with rank at most `rank`, as a product of random factors.
inline DenseMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c,
                                   std::size_t rank) {
  const DenseMatrix a = random_matrix(rng, r, rank);
  const DenseMatrix b = random_matrix(rng, rank, c);
  return DenseMatrix(contrastlab::RowMajorMatrix(a.eigen() * b.eigen()));
}

inline double frobenius(const contrastlab::RowMajorMatrix& m) { return m.norm(); }

// Classical Gram-Schmidt in long double on the Vandermonde columns
// 1, x, x^2, ... at x = 1..k; returns the k-1 non-constant columns with unit
// norm, no sign changes.
inline std::vector<std::vector<long double>> gram_schmidt_polynomials(std::size_t k) {
  std::vector<std::vector<long double>> basis;
  for (std::size_t d = 0; d < k; ++d) {
    std::vector<long double> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = std::pow(static_cast<long double>(i + 1), d);
    for (const auto& q : basis) {
      long double dot = 0;
      for (std::size_t i = 0; i < k; ++i) dot += v[i] * q[i];
      for (std::size_t i = 0; i < k; ++i) v[i] -= dot * q[i];
    }
    long double norm = 0;
    for (auto x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    basis.push_back(v);
  }
  basis.erase(basis.begin());
  return basis;
}

// Student t density written out from its definition.
inline long double t_density(long double t, long double df) {
  const long double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                        std::sqrt(df * 3.14159265358979323846264338327950288L);
  return c * std::pow(1 + t * t / df, -(df + 1) / 2);
}

// CDF by composite Gauss-Legendre quadrature from 0 to t plus symmetry.
inline double t_cdf_quadrature(double t, double df) {
  static const long double nodes[] = {-0.9602898564975362316835609L, -0.7966664774136267395915539L,
                                      -0.5255324099163289858177390L, -0.1834346424956498049394761L,
                                      0.1834346424956498049394761L,  0.5255324099163289858177390L,
                                      0.7966664774136267395915539L,  0.9602898564975362316835609L};
  static const long double weights[] = {0.1012285362903762591525314L, 0.2223810344533744705443560L,
                                        0.3137066458778872873379622L, 0.3626837833783619829651504L,
                                        0.3626837833783619829651504L, 0.3137066458778872873379622L,
                                        0.2223810344533744705443560L, 0.1012285362903762591525314L};
  const long double a = 0;
  const long double b = std::fabs(static_cast<long double>(t));
  const int panels = 2000;
  const long double h = (b - a) / panels;
  long double sum = 0;
  for (int p = 0; p < panels; ++p) {
    const long double mid = a + (p + 0.5L) * h;
    for (int i = 0; i < 8; ++i) sum += weights[i] * t_density(mid + nodes[i] * h / 2, df);
  }
  const long double half = sum * h / 2;
  return static_cast<double>(t >= 0 ? 0.5L + half : 0.5L - half);
}

// Per-cell sample mean and SD (n - 1) straight from the observations.
struct Moments {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
};

inline Moments moments(const std::vector<double>& v) {
  Moments m;
  m.n = v.size();
  long double s = 0;
  for (double x : v) s += x;
  const long double mean = s / static_cast<long double>(v.size());
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  m.mean = static_cast<double>(mean);
  m.sd = static_cast<double>(std::sqrt(ss / static_cast<long double>(v.size() - 1)));
  return m;
}

// Responses grouped by the joint level of `factors`, first factor slowest.
inline std::vector<std::vector<double>> group_by(const contrastlab::Dataset& d,
                                                 const std::vector<std::string>& factors) {
  std::size_t cells = 1;
  std::vector<const contrastlab::Factor*> fs;
  for (const auto& name : factors) {
    fs.push_back(d.find_factor(name));
    cells *= fs.back()->levels.size();
  }
  std::vector<std::vector<double>> out(cells);
  for (std::size_t i = 0; i < d.n(); ++i) {
    std::size_t idx = 0;
    for (const auto* f : fs) idx = idx * f->levels.size() + f->codes[i];
    out[idx].push_back(d.response[i]);
  }
  return out;
}

}  // namespace testsupport
