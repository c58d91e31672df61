// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Failing sub-checks are listed under their criterion.

#include "contrastlab/contrasts.hpp"
#include "contrastlab/distributions.hpp"
#include "contrastlab/effectsize.hpp"
#include "contrastlab/errors.hpp"
#include "contrastlab/ols.hpp"
#include "contrastlab/repro.hpp"
#include "contrastlab/simulate.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace contrastlab;

namespace {

constexpr double kExact = 1e-6;

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void check(const std::string& label, double observed, double expected, double tol) {
    ++checks_;
    if (std::isfinite(observed) && std::fabs(observed - expected) <= tol) return;
    std::ostringstream s;
    s.precision(10);
    s << label << ": observed " << observed << ", expected " << expected << " +/- " << tol;
    failures_.push_back(s.str());
  }

  void require(const std::string& label, bool ok) {
    ++checks_;
    if (!ok) failures_.push_back(label);
  }

  void info(std::string line) { info_.push_back(std::move(line)); }

  // Runs `body`, turning an escaped exception into a failure.
  void run(const std::function<void(Criterion&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      failures_.push_back(std::string("exception: ") + e.what());
    }
  }

  bool pass() const { return failures_.empty() && checks_ > 0; }

  void report(std::ostream& out) const {
    out << (pass() ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title_ << " ("
        << checks_ - failures_.size() << "/" << checks_ << " checks)\n";
    for (const auto& f : failures_) out << "    failed: " << f << '\n';
    for (const auto& i : info_) out << "    info: " << i << '\n';
  }

 private:
  int id_;
  std::string title_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> info_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_matrix(Criterion& c, const std::string& name, const ContrastMatrix& m,
                  const std::vector<std::vector<double>>& rows, double tol) {
  c.require(name + " shape", m.k() == rows.size() && m.m() == rows.front().size());
  if (m.k() != rows.size() || m.m() != rows.front().size()) return;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      c.check(name + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]",
              m.matrix()(i, j), rows[i][j], tol);
    }
  }
}

void check_orthonormal(Criterion& c, const std::string& name, const ContrastMatrix& m,
                       double tol) {
  const auto& x = m.matrix().eigen();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    c.check(name + " column sum", x.col(j).sum(), 0, tol);
    c.check(name + " column norm", x.col(j).norm(), 1, tol);
    for (Eigen::Index l = j + 1; l < x.cols(); ++l) {
      c.check(name + " dot product", x.col(j).dot(x.col(l)), 0, tol);
    }
  }
}

ContrastSet with(const std::string& f, ContrastMatrix c) { return {{f, std::move(c)}}; }

void coefficients(Criterion& c, const std::string& table, const FitResult& f,
                  const std::vector<double>& estimates, double tol = kExact) {
  c.require(table + " coefficient count", f.coefficients.size() == estimates.size());
  for (std::size_t i = 0; i < estimates.size() && i < f.coefficients.size(); ++i) {
    c.check(table + " " + f.coefficients[i].name, f.coefficients[i].estimate, estimates[i], tol);
  }
}

void t_values(Criterion& c, const std::string& table, const FitResult& f,
              const std::vector<double>& t, double tol) {
  for (std::size_t i = 0; i < t.size() && i < f.coefficients.size(); ++i) {
    c.check(table + " t " + f.coefficients[i].name, f.coefficients[i].t, t[i], tol);
  }
}

const Labels kFour{"F1", "F2", "F3", "F4"};

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  check_matrix(c, "treatment(3)", treatment(3), {{0, 0}, {1, 0}, {0, 1}}, 0);
  check_matrix(c, "sum(3)", sum_contrast(3), {{1, 0}, {0, 1}, {-1, -1}}, 0);
  check_matrix(c, "repeated(3)", repeated(3),
               {{-2.0 / 3, -1.0 / 3}, {1.0 / 3, -1.0 / 3}, {1.0 / 3, 2.0 / 3}}, 1e-12);
  check_matrix(c, "repeated(3) printed", repeated(3),
               {{-0.667, -0.333}, {0.333, -0.333}, {0.333, 0.667}}, 1e-3);
  check_matrix(c, "repeated(4)", repeated(4),
               {{-0.75, -0.5, -0.25}, {0.25, -0.5, -0.25}, {0.25, 0.5, -0.25}, {0.25, 0.5, 0.75}},
               1e-12);
  check_matrix(c, "polynomial(3) printed", polynomial(3),
               {{-0.707, 0.408}, {0, -0.816}, {0.707, 0.408}}, 1e-3);
  check_orthonormal(c, "polynomial(3)", polynomial(3), 1e-10);
  check_matrix(c, "polynomial(4) printed", polynomial(4),
               {{-0.671, 0.5, -0.224}, {-0.224, -0.5, 0.671}, {0.224, -0.5, -0.671},
                {0.671, 0.5, 0.224}},
               1e-3);
  check_orthonormal(c, "polynomial(4)", polynomial(4), 1e-10);
  check_matrix(c, "helmert(3)", helmert(3), {{-1, -1}, {1, -1}, {0, 2}}, 0);
  const double elapsed = seconds_since(t0);
  c.require("runtime under 1 s", elapsed < 1.0);
  c.info("runtime " + std::to_string(elapsed) + " s");
}

void criterion2(Criterion& c) {
  const Labels lv{"low", "medium", "high"};
  const HypothesisMatrix sum_h(lv,
                               DenseMatrix::from_rows({{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                                       {2.0 / 3, -1.0 / 3, -1.0 / 3},
                                                       {-1.0 / 3, 2.0 / 3, -1.0 / 3}}),
                               true);
  check_matrix(c, "ginv(sum hypotheses)", hypothesis_to_contrast(sum_h),
               {{1, 0}, {0, 1}, {-1, -1}}, 1e-12);

  const HypothesisMatrix rep_h(kFour,
                               DenseMatrix::from_rows({{-1, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, -1, 1}}),
                               false);
  check_matrix(c, "ginv(repeated hypotheses)", hypothesis_to_contrast(rep_h),
               {{-0.75, -0.5, -0.25}, {0.25, -0.5, -0.25}, {0.25, 0.5, -0.25}, {0.25, 0.5, 0.75}},
               1e-12);

  const DenseMatrix tr = contrast_to_hypothesis(treatment(3), true).rows();
  const std::vector<std::vector<double>> expected{{1, 0, 0}, {-1, 1, 0}, {-1, 0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      c.check("ginv([1|treatment(3)])", tr(i, j), expected[i][j], 1e-12);
    }
  }

  for (const auto& kind : builder_names()) {
    for (std::size_t k = 2; k <= 8; ++k) {
      const ContrastMatrix x = build_contrast(kind, default_levels(k));
      const DenseMatrix with_one = x.matrix().prepend_column(std::vector<double>(k, 1.0), "1");
      c.check(kind + "(" + std::to_string(k) + ") ginv(ginv(X))",
              relative_difference(ginv(ginv(with_one)), with_one), 0, 1e-9);
      c.check(kind + "(" + std::to_string(k) + ") contrast round trip",
              relative_difference(hypothesis_to_contrast(contrast_to_hypothesis(x, true)).matrix(),
                                  x.matrix()),
              0, 1e-9);
    }
  }
}

void criterion3(Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = 1;
  const ModelSpec one_way = parse_model("DV ~ 1 + F");

  // Table 2: treatment coding.
  FitResult f = fit_model(two_group_data(seed), one_way);
  coefficients(c, "table2", f, {0.8, -0.4});
  t_values(c, "table2", f, {8.94, -3.16}, 0.005);
  c.check("table2 p FF2", f.coefficients[1].p, 0.013, 0.0005);
  c.check("table2 CI low (Intercept)", f.coefficients[0].ci_low, 0.6, 0.05);
  c.check("table2 CI high (Intercept)", f.coefficients[0].ci_high, 1.0, 0.05);
  c.check("table2 CI low FF2", f.coefficients[1].ci_low, -0.7, 0.05);
  c.check("table2 CI high FF2", f.coefficients[1].ci_high, -0.1, 0.05);

  // Table 4: baseline moved to the second level.
  Dataset d = two_group_data(seed);
  d.factors[0].reorder({"F2", "F1"});
  coefficients(c, "table4", fit_model(d, one_way), {0.4, 0.4});

  // Table 5: scaled sum.
  coefficients(c, "table5",
               fit_model(two_group_data(seed), one_way, with("F", scaled_sum(Labels{"F1", "F2"}))),
               {0.6, -0.4});

  // Table 2a: cell means.
  coefficients(c, "table2a", fit_model(two_group_data(seed), parse_model("DV ~ -1 + F")),
               {0.8, 0.4});

  // Table 8, unrounded responses, against the printed rounded-data t values.
  const HypothesisMatrix sum_h(Labels{"low", "medium", "high"},
                               DenseMatrix::from_rows({{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                                       {2.0 / 3, -1.0 / 3, -1.0 / 3},
                                                       {-1.0 / 3, 2.0 / 3, -1.0 / 3}}),
                               true, {"cH00", "cH01", "cH02"});
  const ContrastSet sum_set = with("F", hypothesis_to_contrast(sum_h));
  f = fit_model(word_frequency_data(seed), one_way, sum_set);
  coefficients(c, "table8", f, {450, 50, 0});
  t_values(c, "table8 (printed rounded-data t)", f, {77.62, 6.11, 0.01}, 0.2);
  const FitResult printed = fit_model(printed_word_frequency_data(), one_way, sum_set);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "table8 on the printed rounded responses: t = %.2f, %.2f, %.2f; "
                "unrounded: t = %.2f, %.2f, %.2f",
                printed.coefficients[0].t, printed.coefficients[1].t, printed.coefficients[2].t,
                f.coefficients[0].t, f.coefficients[1].t, f.coefficients[2].t);
  c.info(buf);

  // Repeated, polynomial and custom codings of the four-level data.
  const Dataset four = four_level_data(seed);
  f = fit_model(four, one_way, with("F", repeated(kFour)));
  coefficients(c, "repeated", f, {20, 10, -10, 30});
  t_values(c, "repeated", f, {8.94, 1.58, -1.58, 4.74}, 0.01);

  f = fit_model(four, one_way, with("F", polynomial(kFour)));
  coefficients(c, "polynomial", f, {20, 17.89, 10, 13.42}, 0.005);
  coefficients(c, "polynomial (printed)", f, {20, 18, 10, 13}, 0.5);

  f = fit_model(four, one_way, with("F", from_predicted_means({10, 10, 20, 30}, kFour)));
  coefficients(c, "custom", f, {20, 3}, 0.5);
  c.check("custom slope exact", f.coefficients[1].estimate, 120.0 / 44, kExact);

  // Tables 18, 19, 20.
  const Dataset ab = two_by_two_data(seed);
  const ContrastSet sums{{"A", sum_contrast(Labels{"A1", "A2"})},
                         {"B", sum_contrast(Labels{"B1", "B2"})}};
  coefficients(c, "table18", fit_model(ab, parse_model("DV ~ 1 + A*B"), sums), {20, -5, -10, 5});

  Dataset covs = ab;
  const Design x = expand_design(ab, parse_model("DV ~ 1 + A*B"), sums);
  covs.covariates = {{"cA", x.matrix.column(1)}, {"cB", x.matrix.column(2)},
                     {"cAxB", x.matrix.column(3)}};
  covs.factors.clear();
  coefficients(c, "table19", fit_model(covs, parse_model("DV ~ 1 + cA + cB + cAxB")),
               {20, -5, -10, 5});

  const DenseMatrix pooled =
      DenseMatrix::from_columns({{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}});
  coefficients(c, "table20",
               fit_model(four, one_way, with("F", ContrastMatrix(kFour, pooled, {"A", "B", "AxB"}))),
               {20, -5, -10, 5});

  // Tables 21 and 22: nesting.
  const HypothesisMatrix nes(kFour,
                             DenseMatrix::from_rows({{0.25, 0.25, 0.25, 0.25},
                                                     {0.5, -0.5, 0.5, -0.5},
                                                     {-1, 0, 1, 0},
                                                     {0, -1, 0, 1}}),
                             true, {"Int", "B", "B1xA", "B2xA"});
  coefficients(c, "table21", fit_model(four, one_way, with("F", hypothesis_to_contrast(nes))),
               {20, -20, 0, 20});
  const ContrastSet scaled{
      {"A", custom(DenseMatrix(2, 1, {-0.5, 0.5}), Labels{"A1", "A2"})},
      {"B", custom(DenseMatrix(2, 1, {0.5, -0.5}), Labels{"B1", "B2"})}};
  coefficients(c, "table22", fit_model(ab, parse_model("DV ~ 1 + B/A"), scaled),
               {20, -20, 0, 20});

  const HypothesisMatrix nes2(kFour,
                              DenseMatrix::from_rows({{0.25, 0.25, 0.25, 0.25},
                                                      {0.5, 0.5, -0.5, -0.5},
                                                      {1, -1, 0, 0},
                                                      {0, 0, 1, -1}}),
                              true, {"Int", "A", "A1_B", "A2_B"});
  coefficients(c, "B within A", fit_model(four, one_way, with("F", hypothesis_to_contrast(nes2))),
               {20, -10, -10, -30});

  const double elapsed = seconds_since(t0);
  c.require("runtime under 5 s", elapsed < 5.0);
  c.info("runtime " + std::to_string(elapsed) + " s");
}

void criterion4(Criterion& c) {
  const Dataset ab = two_by_two_data();
  const ContrastSet sums{{"A", sum_contrast(Labels{"A1", "A2"})},
                         {"B", sum_contrast(Labels{"B1", "B2"})}};
  const ModelSpec m = parse_model("DV ~ 1 + A*B");
  const AnovaTable t = anova_sequential(ab, m, sums);
  const FitResult f = fit_model(ab, m, sums);
  const std::vector<double> expected{5, 20, 5};
  for (std::size_t j = 0; j < 3; ++j) {
    c.check("F " + t.rows[j].term, t.rows[j].f, expected[j], kExact);
    const double tt = f.coefficients[j + 1].t;
    c.check("t^2 " + f.coefficients[j + 1].name, tt * tt, expected[j], kExact);
  }
  const FitResult crossed = fit_model(ab, m);
  const FitResult b_a = fit_model(ab, parse_model("DV ~ 1 + B/A"));
  const FitResult a_b = fit_model(ab, parse_model("DV ~ 1 + A/B"));
  c.check("AA2 (crossed)", crossed.coefficient("AA2").estimate, 0, kExact);
  c.check("BB1:AA2 (nested)", b_a.coefficient("BB1:AA2").estimate, 0, kExact);
  c.check("BB2 (crossed)", crossed.coefficient("BB2").estimate, 10, kExact);
  c.check("AA1:BB2 (nested)", a_b.coefficient("AA1:BB2").estimate, 10, kExact);
}

void criterion5(Criterion& c) {
  const AlertingReport r = alerting(four_level_data(), "F", polynomial(kFour));
  const std::vector<double> ss{1600, 500, 900};
  const std::vector<double> r2{0.53, 0.17, 0.30};
  c.require("three polynomial contrasts", r.entries.size() == 3);
  for (std::size_t j = 0; j < 3 && j < r.entries.size(); ++j) {
    c.check("SS " + r.entries[j].name, r.entries[j].ss_contrast, ss[j], kExact);
    c.check("r2 " + r.entries[j].name, r.entries[j].r2_alerting, r2[j], 0.005);
  }

  DenseMatrix apriori = DenseMatrix::from_rows({{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}});
  apriori.set_row_labels(Labels{"Prime1", "Prime2", "Prime3"});
  apriori.set_col_labels(Labels{"Target1", "Target2", "Target3"});
  const InteractionPartition p = partition_interaction(priming_data(), "Prime", "Target", apriori);
  c.check("SS a priori", p.apriori.sum_sq, 11111.11, 0.5);
  c.check("SS residual interaction", p.residual.sum_sq, 2777.78, 0.5);
  c.check("SS interaction", p.interaction.sum_sq, 13888.89, 0.5);
  c.check("SS parts add up", p.apriori.sum_sq + p.residual.sum_sq, p.interaction.sum_sq, 1e-8);
  c.check("F a priori", p.apriori.f, 4.44, 0.01);
  c.check("r2 a priori", p.r2_apriori, 0.80, 0.005);
  c.check("r2 residual", p.r2_residual, 0.20, 0.005);
}

void criterion6(Criterion& c) {
  Dataset d = four_level_data();
  const HypothesisMatrix nes(kFour,
                             DenseMatrix::from_rows({{0.25, 0.25, 0.25, 0.25},
                                                     {0.5, -0.5, 0.5, -0.5},
                                                     {-1, 0, 1, 0},
                                                     {0, -1, 0, 1}}),
                             true, {"Int", "B", "B1xA", "B2xA"});
  const ContrastMatrix x = hypothesis_to_contrast(nes);
  for (std::size_t j = 0; j < x.m(); ++j) {
    std::vector<double> v;
    for (auto code : d.factors[0].codes) v.push_back(x.matrix()(code, j));
    d.covariates.push_back({x.column_names()[j], v});
  }
  const FitResult full = fit_model(d, parse_model("DV ~ 1 + B + B1xA + B2xA"));
  const FitResult reduced = fit_model(d, parse_model("DV ~ 1 + B1xA + B2xA"));
  c.check("sigma with B", full.sigma, 10, kExact);
  c.check("sigma without B", reduced.sigma, 14.55, 0.01);
  c.check("B2xA unchanged", reduced.coefficient("B2xA").estimate,
          full.coefficient("B2xA").estimate, kExact);
}

// Each suite runs at least 100 seeded cases.
void criterion7(Criterion& c) {
  std::mt19937_64 rng(20240601);
  std::size_t cases = 0;

  // Penrose conditions.
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int i = 0; i < 150; ++i, ++cases) {
    const std::size_t r = dim(rng);
    const std::size_t k = dim(rng);
    const std::size_t rk = std::uniform_int_distribution<std::size_t>(1, std::min(r, k))(rng);
    const DenseMatrix m = i % 2 ? testsupport::random_matrix(rng, r, k)
                                : testsupport::random_low_rank(rng, r, k, rk);
    const RowMajorMatrix& a = m.eigen();
    const RowMajorMatrix g = ginv(m).eigen();
    const auto rel = [](const RowMajorMatrix& x, const RowMajorMatrix& y) {
      return (x - y).norm() / std::max(1.0, y.norm());
    };
    const RowMajorMatrix ag = a * g;
    const RowMajorMatrix ga = g * a;
    const double err = std::max({rel(a * g * a, a), rel(g * a * g, g), rel(ag.transpose(), ag),
                                 rel(ga.transpose(), ga)});
    c.check("Penrose case " + std::to_string(i), err, 0, 1e-10);
  }

  // Hypothesis <-> contrast round trips on random full-rank hypotheses.
  for (int i = 0; i < 120; ++i, ++cases) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 7);
    const std::size_t m = 1 + static_cast<std::size_t>(i) % (k - 1);
    DenseMatrix rows = testsupport::random_matrix(rng, m + 1, k);
    for (std::size_t j = 0; j < k; ++j) rows(0, j) = 1.0 / static_cast<double>(k);
    for (std::size_t i2 = 1; i2 <= m; ++i2) {
      double mean = 0.0;
      for (std::size_t j = 0; j < k; ++j) mean += rows(i2, j) / static_cast<double>(k);
      for (std::size_t j = 0; j < k; ++j) rows(i2, j) -= mean;
    }
    const HypothesisMatrix h(default_levels(k), rows, true);
    const ContrastMatrix x = hypothesis_to_contrast(h);
    const HypothesisMatrix back = contrast_to_hypothesis(x, true);
    if (m + 1 == k) {
      c.check("round trip " + std::to_string(i), relative_difference(back.rows(), rows), 0, 1e-9);
    } else {
      // Fewer hypotheses than levels: the pseudoinverse pair is a projection.
      c.check("round trip " + std::to_string(i),
              relative_difference(hypothesis_to_contrast(back).matrix(), x.matrix()), 0, 1e-9);
    }
  }

  // Polynomial orthonormality, k = 2..12, with an independent oracle.
  for (std::size_t k = 2; k <= 12; ++k) {
    const ContrastMatrix p = polynomial(k);
    check_orthonormal(c, "polynomial(" + std::to_string(k) + ")", p, 1e-10);
    const auto oracle = testsupport::gram_schmidt_polynomials(k);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      for (std::size_t i = 0; i < k; ++i, ++cases) {
        c.check("polynomial oracle", p.matrix()(i, j), static_cast<double>(oracle[j][i]), 1e-10);
      }
    }
  }

  auto random_one_way = [&](int i, std::size_t k) {
    DesignSpec spec;
    spec.between_levels = {k};
    spec.n_per_cell = 2 + static_cast<std::size_t>(i % 6);
    std::normal_distribution<double> z(0, 40);
    std::vector<double> m(k);
    for (auto& v : m) v = z(rng);
    spec.means = DenseMatrix(k, 1, m);
    spec.sd = DenseMatrix(1, 1, {1 + static_cast<double>(i % 11)});
    spec.seed = static_cast<std::uint64_t>(i) * 7919 + 3;
    return mixed_design(spec);
  };

  // Spanning orthogonal sets: sum of contrast SS equals the effect SS.
  for (int i = 0; i < 120; ++i, ++cases) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 7);
    const Dataset d = random_one_way(i, k);
    const ContrastMatrix x = i % 2 ? polynomial(d.factors[0].levels) : helmert(d.factors[0].levels);
    const AlertingReport r = alerting(d, "B_A", x);
    const AnovaTable t = anova_sequential(d, parse_model("DV ~ B_A"), with("B_A", x));
    c.check("SS sum case " + std::to_string(i), r.ss_sum - t.row("B_A").sum_sq, 0,
            1e-8 * std::max(1.0, r.ss_sum));
  }

  // Fit against the cell-means oracle.
  const auto& kinds = builder_names();
  for (int i = 0; i < 120; ++i, ++cases) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 6);
    const Dataset d = random_one_way(i, k);
    const ContrastMatrix x = build_contrast(kinds[static_cast<std::size_t>(i) % kinds.size()],
                                            d.factors[0].levels);
    const FitResult f = fit_model(d, parse_model("DV ~ B_A"), with("B_A", x));
    const auto groups = testsupport::group_by(d, {"B_A"});
    std::vector<double> mu;
    for (const auto& g : groups) mu.push_back(testsupport::moments(g).mean);
    // beta = ginv([1|X]) mu, computed with the normal equations on the k cells.
    const DenseMatrix x1 = x.matrix().prepend_column(std::vector<double>(k, 1.0), "1");
    const RowMajorMatrix xtx = x1.eigen().transpose() * x1.eigen();
    const Eigen::VectorXd beta =
        xtx.inverse() * x1.eigen().transpose() * Eigen::Map<const Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      c.check("means oracle case " + std::to_string(i),
              f.coefficients[static_cast<std::size_t>(j)].estimate, beta(j),
              1e-9 * std::max(1.0, std::fabs(beta(j))));
    }
  }

  // Reparameterization invariance.
  for (int i = 0; i < 120; ++i, ++cases) {
    const std::size_t k = 3 + static_cast<std::size_t>(i % 5);
    const Dataset d = random_one_way(i, k);
    const Labels& lv = d.factors[0].levels;
    DenseMatrix mix = testsupport::random_matrix(rng, k - 1, k - 1);
    while (std::fabs(mix.eigen().determinant()) < 0.1) mix = testsupport::random_matrix(rng, k - 1, k - 1);
    const ContrastMatrix base = treatment(lv);
    const ContrastMatrix alt(lv, DenseMatrix(RowMajorMatrix(base.matrix().eigen() * mix.eigen())),
                             default_levels(k - 1));
    const FitResult a = fit_model(d, parse_model("DV ~ B_A"), with("B_A", base));
    const FitResult b = fit_model(d, parse_model("DV ~ B_A"), with("B_A", alt));
    double worst = std::fabs(a.rss - b.rss) / std::max(1.0, a.rss);
    for (std::size_t j = 0; j < a.fitted.size(); ++j) {
      worst = std::max(worst, std::fabs(a.fitted[j] - b.fitted[j]) / std::max(1.0, std::fabs(a.fitted[j])));
    }
    c.check("reparameterization case " + std::to_string(i), worst, 0, 1e-8);
  }

  // F = t^2 for single-df terms.
  for (int i = 0; i < 120; ++i, ++cases) {
    const Dataset d = random_one_way(i, 2);
    const ContrastMatrix x = i % 2 ? scaled_sum(d.factors[0].levels) : treatment(d.factors[0].levels);
    const AnovaTable t = anova_sequential(d, parse_model("DV ~ B_A"), with("B_A", x));
    const FitResult f = fit_model(d, parse_model("DV ~ B_A"), with("B_A", x));
    const double tt = f.coefficients[1].t;
    c.check("F = t^2 case " + std::to_string(i), tt * tt, t.rows[0].f,
            1e-9 * std::max(1.0, t.rows[0].f));
  }

  // t distribution against quadrature.
  std::uniform_real_distribution<double> tu(-6, 6);
  std::uniform_int_distribution<int> du(1, 60);
  for (int i = 0; i < 120; ++i, ++cases) {
    const double t = tu(rng);
    const double df = du(rng);
    c.check("t cdf case " + std::to_string(i), t_cdf(t, df), testsupport::t_cdf_quadrature(t, df),
            1e-9);
  }

  // Simulator moments, including within-subject correlations.
  for (int i = 0; i < 120; ++i, ++cases) {
    DesignSpec spec;
    const std::size_t w = 1 + static_cast<std::size_t>(i % 3);
    spec.between_levels = {2};
    if (w > 1) spec.within_levels = {w};
    spec.n_per_cell = w + 2 + static_cast<std::size_t>(i % 5);
    std::normal_distribution<double> z(100, 50);
    std::vector<double> m(2 * w);
    for (auto& v : m) v = z(rng);
    spec.means = DenseMatrix(2, w, m);
    spec.sd = DenseMatrix(1, 1, {2 + static_cast<double>(i % 13)});
    const double r = 0.1 * static_cast<double>(i % 7) - 0.2;
    if (w > 1) spec.correlation = {constant_correlation(w, r)};
    spec.seed = static_cast<std::uint64_t>(i) + 77;
    const Dataset d = mixed_design(spec);
    const std::size_t n = spec.n_per_cell;
    for (std::size_t b = 0; b < 2; ++b) {
      std::vector<std::vector<double>> cols(w);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t j = 0; j < w; ++j) cols[j].push_back(d.response[(b * n + s) * w + j]);
      }
      for (std::size_t j = 0; j < w; ++j) {
        const auto mo = testsupport::moments(cols[j]);
        c.check("simulated mean", mo.mean, spec.means(b, j), 1e-9 * std::max(1.0, std::fabs(spec.means(b, j))));
        c.check("simulated SD", mo.sd, spec.sd(0, 0), 1e-9 * std::max(1.0, spec.sd(0, 0)));
      }
      for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t l = j + 1; l < w; ++l) {
          const auto mj = testsupport::moments(cols[j]);
          const auto ml = testsupport::moments(cols[l]);
          double cov = 0.0;
          for (std::size_t s = 0; s < n; ++s) cov += (cols[j][s] - mj.mean) * (cols[l][s] - ml.mean);
          cov /= static_cast<double>(n - 1);
          c.check("simulated correlation", cov / (mj.sd * ml.sd), r, 1e-9);
        }
      }
    }
  }
  c.info(std::to_string(cases) + " property cases");
}

void criterion8(Criterion& c) {
  const FitResult f = fit_model(unbalanced_toy_data(), parse_model("DV ~ 1 + F"),
                                with("F", scaled_sum(Labels{"F1", "F2"})));
  c.check("intercept", f.coefficient("(Intercept)").estimate, 3.25, kExact);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Criterion&)>> criteria{
      {"contrast generators match the printed matrices", criterion1},
      {"generalized-inverse round trips", criterion2},
      {"coefficient tables from simulated data", criterion3},
      {"ANOVA and regression agree", criterion4},
      {"effect sizes and interaction partition", criterion5},
      {"residual SD with and without the nested parent effect", criterion6},
      {"seeded property suites", criterion7},
      {"unbalanced weighted grand mean", criterion8},
  };
  int failed = 0;
  int id = 1;
  for (const auto& [title, body] : criteria) {
    Criterion c(id++, title);
    c.run(body);
    c.report(std::cout);
    if (!c.pass()) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << " of " << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
