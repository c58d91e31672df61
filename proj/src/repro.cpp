#include "contrastlab/repro.hpp"

#include "contrastlab/contrasts.hpp"
#include "contrastlab/effectsize.hpp"
#include "contrastlab/errors.hpp"
#include "contrastlab/ols.hpp"
#include "contrastlab/simulate.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace contrastlab {

namespace {

Dataset one_way(std::size_t k, std::size_t n, std::vector<double> means, double sd,
                const Labels& levels, std::uint64_t seed, bool round_dv = false) {
  DesignSpec spec;
  spec.between_levels = {k};
  spec.n_per_cell = n;
  spec.means = DenseMatrix(k, 1, std::move(means));
  spec.sd = DenseMatrix(1, 1, {sd});
  spec.seed = seed;
  spec.round_dv = round_dv;
  Dataset data = mixed_design(spec);
  Factor& f = data.factors.front();
  f.name = "F";
  f.levels = levels;
  return data;
}

Dataset two_way(std::size_t ka, std::size_t kb, std::size_t n, std::vector<double> means,
                double sd, const std::string& a, const std::string& b, std::uint64_t seed) {
  DesignSpec spec;
  spec.between_levels = {ka, kb};
  spec.n_per_cell = n;
  spec.means = DenseMatrix(ka * kb, 1, std::move(means));
  spec.sd = DenseMatrix(1, 1, {sd});
  spec.seed = seed;
  Dataset data = mixed_design(spec);
  data.factors[0].name = a;
  data.factors[1].name = b;
  for (std::size_t i = 0; i < ka; ++i) data.factors[0].levels[i] = a + std::to_string(i + 1);
  for (std::size_t j = 0; j < kb; ++j) data.factors[1].levels[j] = b + std::to_string(j + 1);
  return data;
}

// Half a unit in the last printed digit.
constexpr double kTwoDecimals = 0.005;
constexpr double kThreeDecimals = 0.0005;
constexpr double kExact = 1e-6;

class Builder {
 public:
  Builder(std::string id, std::string title) {
    table_.id = std::move(id);
    table_.title = std::move(title);
  }

  void check(std::string label, double observed, double expected, double tol,
             std::string note = {}) {
    table_.checks.push_back({std::move(label), observed, expected, tol, std::move(note)});
  }

  // Estimates exactly, t at two decimals.
  void coefficients(const FitResult& fit, const std::vector<std::string>& names,
                    const std::vector<double>& estimates, const std::vector<double>& t) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& c = fit.coefficient(names[i]);
      check(names[i] + " estimate", c.estimate, estimates[i], kExact);
      if (i < t.size()) check(names[i] + " t", c.t, t[i], kTwoDecimals);
    }
  }

  void note(std::string text) { table_.notes.push_back(std::move(text)); }
  ReproTable done() { return std::move(table_); }

 private:
  ReproTable table_;
};

ContrastSet with(const std::string& factor, ContrastMatrix c) {
  ContrastSet set;
  set.insert_or_assign(factor, std::move(c));
  return set;
}

HypothesisMatrix hypothesis(const Labels& levels, std::vector<std::vector<double>> rows,
                            bool intercept, Labels names) {
  return HypothesisMatrix(levels, DenseMatrix::from_rows(rows), intercept, std::move(names));
}

const Labels kWordLevels{"low", "medium", "high"};
const Labels kFour{"F1", "F2", "F3", "F4"};

ReproTable table1(std::uint64_t seed) {
  Builder b("table1", "two-group cell means and grand mean");
  const Dataset d = two_group_data(seed);
  const CellMeans cm = cell_means(d, {"F"});
  b.check("F1 mean", cm.cells[0].mean, 0.8, kExact);
  b.check("F2 mean", cm.cells[1].mean, 0.4, kExact);
  b.check("F1 SD", cm.cells[0].sd, 0.2, kExact);
  b.check("F2 SD", cm.cells[1].sd, 0.2, kExact);
  double gm = 0.0;
  for (double v : d.response) gm += v;
  b.check("grand mean", gm / static_cast<double>(d.n()), 0.6, kExact);
  return b.done();
}

ReproTable table2(std::uint64_t seed) {
  Builder b("table2", "treatment contrast, two groups");
  const Dataset d = two_group_data(seed);
  const FitResult f = fit_model(d, parse_model("DV ~ 1 + F"));
  b.coefficients(f, {"(Intercept)", "FF2"}, {0.8, -0.4}, {8.94, -3.16});
  const auto& slope = f.coefficient("FF2");
  b.check("FF2 p", slope.p, 0.013, kThreeDecimals);
  b.check("(Intercept) CI low", f.coefficient("(Intercept)").ci_low, 0.6, 0.05);
  b.check("(Intercept) CI high", f.coefficient("(Intercept)").ci_high, 1.0, 0.05);
  b.check("FF2 CI low", slope.ci_low, -0.7, 0.05);
  b.check("FF2 CI high", slope.ci_high, -0.1, 0.05);
  b.check("residual df", static_cast<double>(f.df_resid), 8, 0);
  return b.done();
}

ReproTable table2a(std::uint64_t seed) {
  Builder b("table2a", "cell-means coding without intercept");
  const FitResult f = fit_model(two_group_data(seed), parse_model("DV ~ -1 + F"));
  b.coefficients(f, {"FF1", "FF2"}, {0.8, 0.4}, {8.94, 4.47});
  return b.done();
}

ReproTable table4(std::uint64_t seed) {
  Builder b("table4", "treatment contrast with the baseline moved to F2");
  Dataset d = two_group_data(seed);
  Factor& f = *d.find_factor("F");
  f.reorder({"F2", "F1"});
  f.name = "Fb";
  const FitResult r = fit_model(d, parse_model("DV ~ 1 + Fb"));
  b.coefficients(r, {"(Intercept)", "FbF1"}, {0.4, 0.4}, {4.47, 3.16});
  b.check("(Intercept) p", r.coefficient("(Intercept)").p, 0.002, kThreeDecimals);
  return b.done();
}

ReproTable table5(std::uint64_t seed) {
  Builder b("table5", "scaled sum contrast, two groups");
  const Dataset d = two_group_data(seed);
  const FitResult f =
      fit_model(d, parse_model("DV ~ 1 + F"), with("F", scaled_sum(Labels{"F1", "F2"})));
  b.coefficients(f, {"(Intercept)", "F1"}, {0.6, -0.4}, {9.49, -3.16});
  b.check("(Intercept) CI low", f.coefficient("(Intercept)").ci_low, 0.5, 0.05);
  b.check("(Intercept) CI high", f.coefficient("(Intercept)").ci_high, 0.7, 0.05);
  return b.done();
}

ReproTable table7(std::uint64_t seed) {
  Builder b("table7", "one-way ANOVA, word frequency");
  const AnovaTable t = anova_sequential(word_frequency_data(seed), parse_model("DV ~ 1 + F"));
  const AnovaRow& row = t.row("F");
  b.check("F", row.f, 25.0, kExact, "printed 24.93 from rounded responses");
  b.check("df effect", row.df, 2, 0);
  b.check("df residual", t.resid_df, 9, 0);
  b.check("MSE", t.resid_ms, 400.0, kExact, "printed 403.19 from rounded responses");
  b.check("eta squared", row.eta_sq_g, 20000.0 / 23600.0, kExact, "printed .847");
  b.check("p below .001", row.p < 0.001 ? 1.0 : 0.0, 1.0, 0);
  b.note("expected values are exact for unrounded responses; the printed example "
         "rounded each response to whole milliseconds first");
  return b.done();
}

HypothesisMatrix word_hypothesis() {
  return hypothesis(kWordLevels,
                    {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {2.0 / 3, -1.0 / 3, -1.0 / 3},
                     {-1.0 / 3, 2.0 / 3, -1.0 / 3}},
                    true, {"cH00", "cH01", "cH02"});
}

ReproTable table8(std::uint64_t seed) {
  Builder b("table8", "sum contrast from a hypothesis matrix, word frequency");
  const Dataset d = word_frequency_data(seed);
  const FitResult f = fit_model(d, parse_model("DV ~ 1 + F"),
                                with("F", hypothesis_to_contrast(word_hypothesis())));
  // SE is 20/sqrt(12) for the intercept and 20 sqrt(2/12) for the others.
  b.coefficients(f, {"(Intercept)", "FcH01", "FcH02"}, {450, 50, 0},
                 {450 / (20 / std::sqrt(12.0)), 50 / (20 * std::sqrt(2.0 / 12)), 0});
  b.note("printed t values 77.62, 6.11, 0.01 come from responses rounded to whole "
         "milliseconds; see table8_printed");
  return b.done();
}

ReproTable table8_printed() {
  Builder b("table8_printed", "hypothesis-matrix fit on the printed rounded responses");
  const FitResult f = fit_model(printed_word_frequency_data(), parse_model("DV ~ 1 + F"),
                                with("F", hypothesis_to_contrast(word_hypothesis())));
  b.check("(Intercept) estimate", f.coefficient("(Intercept)").estimate, 450, 0.5);
  b.check("FcH01 estimate", f.coefficient("FcH01").estimate, 50, 0.5);
  b.check("FcH02 estimate", f.coefficient("FcH02").estimate, 0, 0.5);
  b.check("(Intercept) t", f.coefficient("(Intercept)").t, 77.62, kTwoDecimals);
  b.check("FcH01 t", f.coefficient("FcH01").t, 6.11, kTwoDecimals);
  b.check("FcH02 t", f.coefficient("FcH02").t, 0.01, kTwoDecimals);
  b.check("FcH02 p", f.coefficient("FcH02").p, 0.992, kThreeDecimals);
  b.check("FcH01 CI low", f.coefficient("FcH01").ci_low, 32, 0.5);
  b.check("FcH01 CI high", f.coefficient("FcH01").ci_high, 69, 0.5);
  return b.done();
}

ReproTable repeated_table(std::uint64_t seed) {
  Builder b("repeated", "repeated (sliding difference) contrast, four levels");
  const FitResult f = fit_model(four_level_data(seed), parse_model("DV ~ 1 + F"),
                                with("F", repeated(kFour)));
  b.coefficients(f, {"(Intercept)", "F2-1", "F3-2", "F4-3"}, {20, 10, -10, 30},
                 {8.94, 1.58, -1.58, 4.74});
  b.check("F2-1 p", f.coefficient("F2-1").p, 0.133, kThreeDecimals);
  return b.done();
}

ReproTable polynomial_table(std::uint64_t seed) {
  Builder b("polynomial", "orthogonal polynomial contrast, four levels");
  const FitResult f = fit_model(four_level_data(seed), parse_model("DV ~ 1 + F"),
                                with("F", polynomial(kFour)));
  b.coefficients(f, {"(Intercept)", "F.L", "F.Q", "F.C"},
                 {20, 80 / std::sqrt(20.0), 10, 60 / std::sqrt(20.0)}, {8.94, 4.00, 2.24, 3.00});
  b.check("F.L printed", f.coefficient("F.L").estimate, 18, 0.5);
  b.check("F.C printed", f.coefficient("F.C").estimate, 13, 0.5);
  return b.done();
}

ReproTable custom_table(std::uint64_t seed) {
  Builder b("custom", "contrast from predicted means");
  const Dataset d = four_level_data(seed);
  const ContrastMatrix c = from_predicted_means({10, 10, 20, 30}, kFour);
  const FitResult f = fit_model(d, parse_model("DV ~ 1 + F"), with("F", c));
  b.check("weights", c.matrix()(0, 0), -3, kExact, "(-3, -3, 1, 5)");
  b.coefficients(f, {"(Intercept)", "Fcustom"}, {20, 120.0 / 44}, {6.97, 3.15});
  b.check("Fcustom printed", f.coefficient("Fcustom").estimate, 3, 0.5);
  b.check("residual df", static_cast<double>(f.df_resid), 18, 0);
  return b.done();
}

ReproTable table16(std::uint64_t seed) {
  Builder b("table16", "2 x 2 ANOVA, sum coding");
  const Dataset d = two_by_two_data(seed);
  const ContrastSet cs{{"A", sum_contrast(Labels{"A1", "A2"})},
                       {"B", sum_contrast(Labels{"B1", "B2"})}};
  const ModelSpec m = parse_model("DV ~ 1 + A*B");
  const AnovaTable t = anova_sequential(d, m, cs);
  const FitResult f = fit_model(d, m, cs);
  const std::vector<std::pair<std::string, std::string>> rows{
      {"A", "A1"}, {"B", "B1"}, {"A:B", "A1:B1"}};
  const std::vector<double> fs{5, 20, 5};
  const std::vector<double> ss{500, 2000, 500};
  const std::vector<double> eta{0.238, 0.556, 0.238};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const AnovaRow& r = t.row(rows[i].first);
    b.check(r.term + " F", r.f, fs[i], kExact);
    b.check(r.term + " SS", r.sum_sq, ss[i], kExact);
    b.check(r.term + " eta squared", r.eta_sq_g, eta[i], kThreeDecimals);
    const double tt = f.coefficient(rows[i].second).t;
    b.check(r.term + " F = t^2", tt * tt, r.f, 1e-9);
  }
  b.check("MSE", t.resid_ms, 100, kExact);
  return b.done();
}

ReproTable table17(std::uint64_t seed) {
  Builder b("table17", "2 x 2 regression, treatment coding");
  const FitResult f = fit_model(two_by_two_data(seed), parse_model("DV ~ 1 + A*B"));
  b.coefficients(f, {"(Intercept)", "AA2", "BB2", "AA2:BB2"}, {10, 0, 10, 20},
                 {2.24, 0.00, 1.58, 2.24});
  return b.done();
}

ReproTable table18(std::uint64_t seed) {
  Builder b("table18", "2 x 2 regression, sum coding");
  const ContrastSet cs{{"A", sum_contrast(Labels{"A1", "A2"})},
                       {"B", sum_contrast(Labels{"B1", "B2"})}};
  const FitResult f = fit_model(two_by_two_data(seed), parse_model("DV ~ 1 + A*B"), cs);
  b.coefficients(f, {"(Intercept)", "A1", "B1", "A1:B1"}, {20, -5, -10, 5},
                 {8.94, -2.24, -4.47, 2.24});
  return b.done();
}

ReproTable table19(std::uint64_t seed) {
  Builder b("table19", "2 x 2 as multiple regression on coded covariates");
  Dataset d = two_by_two_data(seed);
  const ContrastSet cs{{"A", sum_contrast(Labels{"A1", "A2"})},
                       {"B", sum_contrast(Labels{"B1", "B2"})}};
  const Design design = expand_design(d, parse_model("DV ~ 1 + A*B"), cs);
  const std::vector<std::string> names{"A", "B", "AxB"};
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto col = design.matrix.column(j + 1);
    d.covariates.push_back({"c" + names[j], std::vector<double>(col.begin(), col.end())});
  }
  d.factors.clear();
  const FitResult f = fit_model(d, parse_model("DV ~ 1 + cA + cB + cAxB"));
  b.coefficients(f, {"(Intercept)", "cA", "cB", "cAxB"}, {20, -5, -10, 5},
                 {8.94, -2.24, -4.47, 2.24});
  return b.done();
}

ReproTable table20(std::uint64_t seed) {
  Builder b("table20", "2 x 2 as a four-level factor with a custom contrast");
  const DenseMatrix m = DenseMatrix::from_columns(
      {{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}});
  ContrastMatrix c(kFour, m, {"A", "B", "AxB"});
  const FitResult f = fit_model(four_level_data(seed), parse_model("DV ~ 1 + F"), with("F", c));
  b.coefficients(f, {"(Intercept)", "FA", "FB", "FAxB"}, {20, -5, -10, 5},
                 {8.94, -2.24, -4.47, 2.24});
  return b.done();
}

HypothesisMatrix b_then_a_within() {
  return hypothesis(kFour,
                    {{0.25, 0.25, 0.25, 0.25}, {0.5, -0.5, 0.5, -0.5}, {-1, 0, 1, 0},
                     {0, -1, 0, 1}},
                    true, {"Int", "B", "B1xA", "B2xA"});
}

ReproTable table21(std::uint64_t seed) {
  Builder b("table21", "A nested within B, four-level factor");
  const FitResult f =
      fit_model(four_level_data(seed), parse_model("DV ~ 1 + F"),
                with("F", hypothesis_to_contrast(b_then_a_within())));
  b.coefficients(f, {"(Intercept)", "FB", "FB1xA", "FB2xA"}, {20, -20, 0, 20},
                 {8.94, -4.47, 0.00, 3.16});
  b.check("FB2xA p", f.coefficient("FB2xA").p, 0.006, kThreeDecimals);
  return b.done();
}

ReproTable table22(std::uint64_t seed) {
  Builder b("table22", "A nested within B in the 2 x 2 data");
  const ContrastSet cs{
      {"A", custom(DenseMatrix(2, 1, {-0.5, 0.5}), Labels{"A1", "A2"})},
      {"B", custom(DenseMatrix(2, 1, {0.5, -0.5}), Labels{"B1", "B2"})}};
  const FitResult f = fit_model(two_by_two_data(seed), parse_model("DV ~ 1 + B/A"), cs);
  b.coefficients(f, {"(Intercept)", "B1", "BB1:A1", "BB2:A1"}, {20, -20, 0, 20},
                 {8.94, -4.47, 0.00, 3.16});
  return b.done();
}

ReproTable nested_sigma(std::uint64_t seed) {
  Builder b("nested_sigma", "nested slopes with and without the main effect of B");
  Dataset d = four_level_data(seed);
  const ContrastMatrix c = hypothesis_to_contrast(b_then_a_within());
  const Factor& f = *d.find_factor("F");
  for (std::size_t j = 0; j < c.m(); ++j) {
    std::vector<double> values;
    for (std::size_t i = 0; i < d.n(); ++i) values.push_back(c.matrix()(f.codes[i], j));
    d.covariates.push_back({c.column_names()[j], values});
  }
  const FitResult full = fit_model(d, parse_model("DV ~ 1 + B + B1xA + B2xA"));
  const FitResult reduced = fit_model(d, parse_model("DV ~ 1 + B1xA + B2xA"));
  b.check("full sigma", full.sigma, 10, kExact);
  b.check("reduced sigma", reduced.sigma, std::sqrt(3600.0 / 17), kExact, "printed 14.55");
  b.check("reduced df", static_cast<double>(reduced.df_resid), 17, 0);
  b.coefficients(reduced, {"(Intercept)", "B1xA", "B2xA"}, {20, 0, 20}, {6.15, 0.00, 2.17});
  b.check("B2xA p", reduced.coefficient("B2xA").p, 0.044, kThreeDecimals);
  return b.done();
}

ReproTable nested_ba(std::uint64_t seed) {
  Builder b("nested_ba", "B nested within A, four-level factor");
  const HypothesisMatrix h = hypothesis(
      kFour, {{0.25, 0.25, 0.25, 0.25}, {0.5, 0.5, -0.5, -0.5}, {1, -1, 0, 0}, {0, 0, 1, -1}},
      true, {"Int", "A", "A1_B", "A2_B"});
  const FitResult f = fit_model(four_level_data(seed), parse_model("DV ~ 1 + F"),
                                with("F", hypothesis_to_contrast(h)));
  b.coefficients(f, {"(Intercept)", "FA", "FA1_B", "FA2_B"}, {20, -10, -10, -30},
                 {8.94, -2.24, -1.58, -4.74});
  return b.done();
}

ReproTable location(std::uint64_t seed) {
  Builder b("location", "simple effects inside nested models equal treatment main effects");
  const Dataset d = two_by_two_data(seed);
  const FitResult crossed = fit_model(d, parse_model("DV ~ 1 + A*B"));
  const FitResult b_a = fit_model(d, parse_model("DV ~ 1 + B/A"));
  const FitResult a_b = fit_model(d, parse_model("DV ~ 1 + A/B"));
  b.check("AA2 (crossed)", crossed.coefficient("AA2").estimate, 0, kExact);
  b.check("BB1:AA2 (B/A)", b_a.coefficient("BB1:AA2").estimate,
          crossed.coefficient("AA2").estimate, kExact);
  b.check("BB2 (crossed)", crossed.coefficient("BB2").estimate, 10, kExact);
  b.check("AA1:BB2 (A/B)", a_b.coefficient("AA1:BB2").estimate,
          crossed.coefficient("BB2").estimate, kExact);
  return b.done();
}

ReproTable alerting_table(std::uint64_t seed) {
  Builder b("alerting", "alerting r-squared for the polynomial contrasts");
  const AlertingReport r = alerting(four_level_data(seed), "F", polynomial(kFour));
  const std::vector<double> ss{1600, 500, 900};
  const std::vector<double> r2{0.53, 0.17, 0.30};
  for (std::size_t i = 0; i < r.entries.size() && i < ss.size(); ++i) {
    b.check(r.entries[i].name + " SS", r.entries[i].ss_contrast, ss[i], kExact);
    b.check(r.entries[i].name + " r2", r.entries[i].r2_alerting, r2[i], kTwoDecimals);
  }
  b.check("contrasts", static_cast<double>(r.entries.size()), 3, 0);
  b.check("SS effect", r.ss_effect, 3000, kExact);
  b.check("spanning", r.spanning ? 1.0 : 0.0, 1.0, 0);
  const AnovaTable t = anova_sequential(four_level_data(seed), parse_model("DV ~ 1 + F"));
  b.check("residual SS", t.resid_ss, 1600, kExact);
  b.check("residual df", t.resid_df, 16, 0);
  return b.done();
}

ReproTable interaction_table(std::uint64_t seed) {
  Builder b("interaction", "a priori interaction contrast in the 3 x 3 priming data");
  DenseMatrix apriori = DenseMatrix::from_rows({{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}});
  apriori.set_row_labels(Labels{"Prime1", "Prime2", "Prime3"});
  apriori.set_col_labels(Labels{"Target1", "Target2", "Target3"});
  const InteractionPartition p = partition_interaction(priming_data(seed), "Prime", "Target",
                                                       apriori);
  auto row = [&](const AnovaRow& r, const std::string& name, double df, double f, double ss,
                 double pv) {
    b.check(name + " df", r.df, df, 0);
    b.check(name + " F", r.f, f, kTwoDecimals);
    b.check(name + " SS", r.sum_sq, ss, 0.5);
    b.check(name + " p", r.p, pv, kThreeDecimals);
  };
  row(p.main_a, "Prime", 2, 0.14, 694, 0.871);
  row(p.main_b, "Target", 2, 0.14, 694, 0.871);
  row(p.interaction, "Prime:Target", 4, 1.39, 13889, 0.257);
  row(p.apriori, "a priori", 1, 4.44, 11111, 0.042);
  row(p.residual, "residual interaction", 3, 0.37, 2778, 0.775);
  b.check("residual df", p.resid_df, 36, 0);
  b.check("r2 a priori", p.r2_apriori, 0.80, kTwoDecimals);
  b.check("r2 residual", p.r2_residual, 0.20, kTwoDecimals);
  return b.done();
}

ReproTable weighted_gm(std::uint64_t) {
  Builder b("weighted_gm", "scaled sum intercept in unbalanced data");
  const Dataset d = unbalanced_toy_data();
  const FitResult f =
      fit_model(d, parse_model("DV ~ 1 + F"), with("F", scaled_sum(Labels{"F1", "F2"})));
  b.check("(Intercept)", f.coefficient("(Intercept)").estimate, 3.25, kExact,
          "mean of cell means, not the grand mean 3");
  return b.done();
}

using Maker = std::function<ReproTable(std::uint64_t)>;

const std::vector<std::pair<std::string, Maker>>& registry() {
  static const std::vector<std::pair<std::string, Maker>> tables{
      {"table1", table1},
      {"table2", table2},
      {"table2a", table2a},
      {"table4", table4},
      {"table5", table5},
      {"table7", table7},
      {"table8", table8},
      {"table8_printed", [](std::uint64_t) { return table8_printed(); }},
      {"repeated", repeated_table},
      {"polynomial", polynomial_table},
      {"custom", custom_table},
      {"table16", table16},
      {"table17", table17},
      {"table18", table18},
      {"table19", table19},
      {"table20", table20},
      {"table21", table21},
      {"table22", table22},
      {"nested_sigma", nested_sigma},
      {"nested_ba", nested_ba},
      {"location", location},
      {"alerting", alerting_table},
      {"interaction", interaction_table},
      {"weighted_gm", weighted_gm},
  };
  return tables;
}

}  // namespace

Dataset two_group_data(std::uint64_t seed) {
  return one_way(2, 5, {0.8, 0.4}, 0.2, {"F1", "F2"}, seed);
}

Dataset word_frequency_data(std::uint64_t seed, bool round_dv) {
  return one_way(3, 4, {500, 450, 400}, 20, kWordLevels, seed, round_dv);
}

Dataset four_level_data(std::uint64_t seed) {
  return one_way(4, 5, {10, 20, 10, 40}, 10, kFour, seed);
}

Dataset two_by_two_data(std::uint64_t seed) {
  return two_way(2, 2, 5, {10, 20, 10, 40}, 10, "A", "B", seed);
}

Dataset priming_data(std::uint64_t seed) {
  return two_way(3, 3, 5, {150, 175, 200, 175, 150, 175, 200, 175, 150}, 50, "Prime", "Target",
                 seed);
}

Dataset unbalanced_toy_data() {
  Dataset d;
  d.factors.push_back(Factor::from_values("F", {"F1", "F1", "F2"}));
  d.response = {2, 3, 4};
  return d;
}

Dataset printed_word_frequency_data() {
  Dataset d;
  std::vector<std::string> f;
  for (const auto& level : kWordLevels) f.insert(f.end(), 4, level);
  d.factors.push_back(Factor::from_values("F", f));
  d.response = {497, 474, 523, 506, 422, 467, 461, 450, 414, 412, 402, 371};
  return d;
}

bool ReproCheck::pass() const {
  return std::isfinite(observed) && std::fabs(observed - expected) <= tolerance;
}

bool ReproTable::pass() const {
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return !checks.empty();
}

const std::vector<std::string>& repro_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, _] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

ReproTable reproduce(const std::string& id, std::uint64_t seed) {
  for (const auto& [name, make] : registry()) {
    if (name == id) return make(seed);
  }
  throw ValidationError("unknown table '" + id + "'");
}

}  // namespace contrastlab
