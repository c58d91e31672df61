#include "contrastlab/errors.hpp"
#include "contrastlab/simulate.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace contrastlab;

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto mx = testsupport::moments(x);
  const auto my = testsupport::moments(y);
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx.mean) * (y[i] - my.mean);
  return static_cast<double>(s / (x.size() - 1) / (mx.sd * my.sd));
}

// Responses for one between cell, one column per within cell.
std::vector<std::vector<double>> within_columns(const Dataset& d, std::size_t between_cell,
                                                std::size_t n, std::size_t w) {
  std::vector<std::vector<double>> cols(w);
  const std::size_t start = between_cell * n * w;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t j = 0; j < w; ++j) cols[j].push_back(d.response[start + s * w + j]);
  }
  return cols;
}

}  // namespace

TEST_CASE("two-group example has exact moments") {
  DesignSpec spec;
  spec.between_levels = {2};
  spec.n_per_cell = 5;
  spec.means = DenseMatrix(2, 1, {0.8, 0.4});
  spec.sd = DenseMatrix(1, 1, {0.2});
  const Dataset d = mixed_design(spec);
  CHECK(d.n() == 10);
  CHECK(d.factors[0].name == "B_A");
  CHECK(d.factors[0].levels == Labels{"A1", "A2"});
  CHECK(d.find_factor("id")->levels.size() == 10);
  const auto groups = testsupport::group_by(d, {"B_A"});
  CHECK(std::fabs(testsupport::moments(groups[0]).mean - 0.8) < 1e-9);
  CHECK(std::fabs(testsupport::moments(groups[1]).mean - 0.4) < 1e-9);
  CHECK(std::fabs(testsupport::moments(groups[0]).sd - 0.2) < 1e-9);
  double gm = 0;
  for (double v : d.response) gm += v;
  CHECK(std::fabs(gm / 10 - 0.6) < 1e-9);
}

TEST_CASE("first factor varies slowest") {
  DesignSpec spec;
  spec.between_levels = {2, 2};
  spec.n_per_cell = 5;
  spec.means = DenseMatrix(4, 1, {10, 20, 10, 40});
  spec.sd = DenseMatrix(1, 1, {10});
  const Dataset d = mixed_design(spec);
  CHECK(d.factors[0].codes[0] == 0);
  CHECK(d.factors[1].codes[0] == 0);
  CHECK(d.factors[1].codes[5] == 1);
  CHECK(d.factors[0].codes[10] == 1);
  const auto groups = testsupport::group_by(d, {"B_A", "B_B"});
  const std::vector<double> target{10, 20, 10, 40};
  for (std::size_t c = 0; c < 4; ++c) {
    CHECK(std::fabs(testsupport::moments(groups[c]).mean - target[c]) < 1e-9);
    CHECK(std::fabs(testsupport::moments(groups[c]).sd - 10) < 1e-9);
  }
}

TEST_CASE("within design with an exact correlation") {
  DesignSpec spec;
  spec.within_levels = {2};
  spec.n_per_cell = 8;
  spec.means = DenseMatrix(1, 2, {100, 110});
  spec.sd = DenseMatrix(1, 2, {15, 20});
  spec.correlation = {constant_correlation(2, 0.3)};
  spec.seed = 42;
  const Dataset d = mixed_design(spec);
  CHECK(d.find_factor("W_A"));
  const auto cols = within_columns(d, 0, 8, 2);
  CHECK(std::fabs(pearson(cols[0], cols[1]) - 0.3) < 1e-9);
  CHECK(std::fabs(testsupport::moments(cols[1]).sd - 20) < 1e-9);
  CHECK(std::fabs(testsupport::moments(cols[0]).mean - 100) < 1e-9);
  // Subject ids repeat across within cells.
  CHECK(d.find_factor("id")->codes[0] == d.find_factor("id")->codes[1]);
}

TEST_CASE("invalid specifications") {
  DesignSpec spec;
  spec.between_levels = {2};
  spec.n_per_cell = 1;
  spec.means = DenseMatrix(2, 1, {1, 2});
  spec.sd = DenseMatrix(1, 1, {1});
  CHECK_THROWS_AS(mixed_design(spec), ValidationError);
  spec.n_per_cell = 4;
  spec.means = DenseMatrix(3, 1, {1, 2, 3});
  CHECK_THROWS_AS(mixed_design(spec), DimensionError);
  spec.means = DenseMatrix(2, 1, {1, 2});
  spec.sd = DenseMatrix(1, 1, {0});
  CHECK_THROWS_AS(mixed_design(spec), ValidationError);

  DesignSpec w;
  w.within_levels = {3};
  w.n_per_cell = 6;
  w.means = DenseMatrix(1, 3, {1, 2, 3});
  w.sd = DenseMatrix(1, 1, {1});
  w.correlation = {constant_correlation(3, -0.9)};
  CHECK_THROWS_AS(mixed_design(w), NumericalError);
  w.correlation = {DenseMatrix::from_rows({{1, 0.2, 0}, {0.3, 1, 0}, {0, 0, 1}})};
  CHECK_THROWS_AS(mixed_design(w), ValidationError);
  w.correlation = {constant_correlation(3, 0.2)};
  w.n_per_cell = 3;
  CHECK_THROWS_AS(mixed_design(w), ValidationError);
}

TEST_CASE("seed determinism") {
  DesignSpec spec;
  spec.between_levels = {3};
  spec.n_per_cell = 4;
  spec.means = DenseMatrix(3, 1, {500, 450, 400});
  spec.sd = DenseMatrix(1, 1, {20});
  spec.seed = 7;
  const Dataset a = mixed_design(spec);
  const Dataset b = mixed_design(spec);
  CHECK(a.response == b.response);
  spec.seed = 8;
  const Dataset c = mixed_design(spec);
  CHECK(a.response != c.response);
  spec.round_dv = true;
  for (double v : mixed_design(spec).response) CHECK(v == std::round(v));
}

TEST_CASE("moment exactness across random specifications") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 150; ++trial) {
    DesignSpec spec;
    const std::size_t b = 1 + static_cast<std::size_t>(trial % 3);
    const std::size_t w = 1 + static_cast<std::size_t>((trial / 3) % 3);
    if (b > 1) spec.between_levels = {b};
    if (w > 1) spec.within_levels = {w};
    spec.n_per_cell = w + 2 + static_cast<std::size_t>(trial % 4);
    std::normal_distribution<double> z(0, 100);
    std::uniform_real_distribution<double> u(0.5, 30);
    std::vector<double> m(b * w);
    std::vector<double> s(b * w);
    for (auto& v : m) v = z(rng);
    for (auto& v : s) v = u(rng);
    spec.means = DenseMatrix(b, w, m);
    spec.sd = DenseMatrix(b, w, s);
    double r = 0;
    if (w > 1) {
      r = std::uniform_real_distribution<double>(-0.4, 0.8)(rng);
      spec.correlation = {constant_correlation(w, r)};
    }
    spec.seed = static_cast<std::uint64_t>(trial) * 31 + 1;
    const Dataset d = mixed_design(spec);
    CAPTURE(trial);
    for (std::size_t i = 0; i < b; ++i) {
      const auto cols = within_columns(d, i, spec.n_per_cell, w);
      for (std::size_t j = 0; j < w; ++j) {
        const auto mo = testsupport::moments(cols[j]);
        CHECK(std::fabs(mo.mean - spec.means(i, j)) < 1e-9 * std::max(1.0, std::fabs(spec.means(i, j))));
        CHECK(std::fabs(mo.sd - spec.sd(i, j)) < 1e-9 * std::max(1.0, spec.sd(i, j)));
        for (std::size_t l = j + 1; l < w; ++l) CHECK(std::fabs(pearson(cols[j], cols[l]) - r) < 1e-9);
      }
    }
  }
}
