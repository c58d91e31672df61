#include "contrastlab/commands.hpp"

#include "contrastlab/contrasts.hpp"
#include "contrastlab/design.hpp"
#include "contrastlab/effectsize.hpp"
#include "contrastlab/errors.hpp"
#include "contrastlab/ols.hpp"
#include "contrastlab/repro.hpp"
#include "contrastlab/simulate.hpp"
#include "contrastlab/specfile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace contrastlab {

namespace {

using nlohmann::json;

struct Globals {
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> levels;
  std::vector<std::string> as_factor;

  bool json() const { return format == "json"; }
};

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

// Rounding residue relative to `scale` prints as 0.
std::string sig(double v, double scale = 1.0, int digits = 4) {
  if (std::isnan(v)) return "NA";
  if (std::fabs(v) <= 1e-10 * std::max(1.0, scale)) v = 0.0;
  return format_number(v, false, digits);
}

// Left-aligned first column, right-aligned numbers.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t j = 0; j < r.size(); ++j) {
      const std::string pad(width[j] - r[j].size(), ' ');
      if (j == 0) {
        line += r[j] + pad;
      } else {
        line += "  " + pad + r[j];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  json labels_r = json::array();
  json labels_c = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) labels_r.push_back(m.row_label(i));
  for (std::size_t j = 0; j < m.cols(); ++j) labels_c.push_back(m.col_label(j));
  return {{"rows", labels_r}, {"columns", labels_c}, {"matrix", rows}};
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

std::map<std::string, Labels> parse_level_overrides(const std::vector<std::string>& items) {
  std::map<std::string, Labels> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--levels", "expected F=a,b,c, got '" + item + "'");
    }
    Labels levels;
    std::stringstream in(item.substr(eq + 1));
    std::string level;
    while (std::getline(in, level, ',')) {
      if (!level.empty()) levels.push_back(level);
    }
    if (levels.empty()) throw CLI::ValidationError("--levels", "no levels in '" + item + "'");
    out[item.substr(0, eq)] = levels;
  }
  return out;
}

Dataset load_data(const std::string& path, const std::string& response, const Globals& g) {
  CsvOptions options;
  options.response = response;
  options.level_order = parse_level_overrides(g.levels);
  options.force_factor.insert(g.as_factor.begin(), g.as_factor.end());
  return read_csv(path, options);
}

ContrastSet load_contrasts(const std::string& arg, const Dataset& data) {
  if (arg.empty()) return {};
  const bool is_file = std::filesystem::is_regular_file(arg);
  return resolve_contrasts(is_file ? read_contrast_spec(arg) : parse_contrast_shorthand(arg),
                           data);
}

void print_diagnostics(std::ostream& out, const ContrastDiagnostics& d) {
  out << "column sums:";
  for (double s : d.column_sums) out << ' ' << format_number(s);
  out << "\ncentered: " << (d.all_centered ? "yes" : "no") << '\n';
  out << "orthogonal: " << (d.orthogonal ? "yes" : "no") << '\n';
  out << "rank with intercept: " << d.rank_with_intercept << " of " << d.columns + 1 << '\n';
  if (d.columns > 1) {
    out << "correlations:\n" << to_display(d.correlations, {false, 3});
  }
}

json diagnostics_json(const ContrastDiagnostics& d) {
  return {{"column_sums", d.column_sums},
          {"centered", d.all_centered},
          {"orthogonal", d.orthogonal},
          {"rank_with_intercept", d.rank_with_intercept},
          {"columns", d.columns},
          {"dot_products", matrix_json(d.dot_products)},
          {"correlations", matrix_json(d.correlations)}};
}

// ---------------------------------------------------------------------------

int cmd_gen(const std::string& kind, std::size_t k, const Globals& g, std::ostream& out) {
  const ContrastMatrix c = build_contrast(kind, default_levels(k));
  const ContrastDiagnostics d = diagnostics(c);
  if (g.json()) {
    json j = matrix_json(c.matrix());
    j["kind"] = kind;
    j["diagnostics"] = diagnostics_json(d);
    out << j.dump(2) << '\n';
  } else {
    out << to_display(c.matrix());
    print_diagnostics(out, d);
  }
  return kExitOk;
}

struct InvertArgs {
  std::string path;
  std::string direction = "h2c";
  bool intercept = false;
  bool transposed = false;
  bool rows = false;
  bool allow_deficient = false;
  std::string output;
};

int cmd_invert(const InvertArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  DenseMatrix input = read_text_file(a.path);
  if (a.transposed) input = transpose(input);
  DenseMatrix result;
  std::vector<std::string> warnings;

  if (a.direction == "h2c") {
    const Labels levels = input.col_label_list();
    const Labels names = input.row_label_list();
    const HypothesisMatrix h(levels, input, a.intercept, names);
    const ContrastMatrix c = hypothesis_to_contrast(h);
    result = c.matrix();
    warnings = c.notes();
  } else {
    // Contrast files list levels as rows.
    const ContrastMatrix c(input.row_label_list(), input, input.col_label_list(),
                           a.allow_deficient);
    const HypothesisMatrix h = contrast_to_hypothesis(c, a.intercept);
    if (!a.intercept && !diagnostics(c).all_centered) {
      warnings.push_back(
          "contrast columns are not centered and no intercept was added; the resulting "
          "hypotheses compare raw condition means with zero rather than differences between "
          "conditions");
    }
    // Hypotheses are stored as rows but shown with levels down the side.
    result = a.rows ? h.rows() : transpose(h.rows());
  }

  if (!a.output.empty()) {
    std::ofstream file(a.output);
    if (!file) throw ValidationError("cannot write '" + a.output + "'");
    write_text(file, result);
  }
  print_warnings(err, warnings);
  if (g.json()) {
    json j = matrix_json(result);
    j["direction"] = a.direction;
    j["warnings"] = warnings;
    out << j.dump(2) << '\n';
  } else {
    out << to_display(result);
  }
  return kExitOk;
}

int cmd_check(const std::string& path, bool allow_deficient, const Globals& g,
              std::ostream& out, std::ostream& err) {
  const DenseMatrix m = read_text_file(path);
  const ContrastMatrix c(m.row_label_list(), m, m.col_label_list(), allow_deficient);
  const ContrastDiagnostics d = diagnostics(c);
  const HypothesisMatrix h = contrast_to_hypothesis(c, true);
  if (d.rank_with_intercept < d.columns + 1) {
    err << "warning: contrast columns are linearly dependent with the intercept\n";
  }
  if (g.json()) {
    json j = diagnostics_json(d);
    j["hypotheses"] = matrix_json(h.rows());
    out << j.dump(2) << '\n';
  } else {
    out << to_display(c.matrix());
    print_diagnostics(out, d);
    out << "hypotheses (levels down the side):\n" << to_display(transpose(h.rows()));
  }
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& output, bool round_dv,
                 const Globals& g, std::ostream& out) {
  DesignSpec spec = read_design_spec(path);
  if (g.seed) spec.seed = *g.seed;
  if (round_dv) spec.round_dv = true;
  const Dataset data = mixed_design(spec);
  const std::string csv = to_csv(data);
  if (output.empty()) {
    out << csv;
    return kExitOk;
  }
  std::ofstream file(output);
  if (!file) throw ValidationError("cannot write '" + output + "'");
  file << csv;
  if (g.json()) {
    out << json{{"path", output}, {"rows", data.n()}, {"seed", spec.seed}}.dump(2) << '\n';
  } else {
    out << "wrote " << data.n() << " rows to " << output << '\n';
  }
  return kExitOk;
}

struct ModelArgs {
  std::string data;
  std::string model;
  std::string contrasts;
  bool allow_deficient = false;
  double confidence = 0.95;
};

int cmd_fit(const ModelArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = parse_model(a.model);
  const Dataset data = load_data(a.data, spec.response.empty() ? "DV" : spec.response, g);
  const ContrastSet contrasts = load_contrasts(a.contrasts, data);
  const Design design = expand_design(data, spec, contrasts);
  const FitResult f = fit(design, data.response, {a.allow_deficient, a.confidence});
  print_warnings(err, design.warnings);
  print_warnings(err, f.warnings);

  if (g.json()) {
    json coefs = json::array();
    for (const auto& c : f.coefficients) {
      coefs.push_back({{"name", c.name},
                       {"estimate", c.estimate},
                       {"se", c.std_error},
                       {"t", c.t},
                       {"p", c.p},
                       {"ci", {c.ci_low, c.ci_high}},
                       {"aliased", c.aliased}});
    }
    out << json{{"model", a.model},
                {"n", f.n},
                {"rank", f.rank},
                {"df_resid", f.df_resid},
                {"sigma", f.sigma},
                {"rss", f.rss},
                {"confidence", a.confidence},
                {"coefficients", coefs},
                {"warnings", f.warnings}}
                   .dump(2)
        << '\n';
    return kExitOk;
  }

  const int level = static_cast<int>(std::lround(a.confidence * 100));
  double scale = 0.0;
  for (const auto& c : f.coefficients) {
    if (std::isfinite(c.estimate)) scale = std::max(scale, std::fabs(c.estimate));
  }
  std::vector<std::vector<std::string>> rows{
      {"Predictor", "Estimate", std::to_string(level) + "% CI",
       "t(" + std::to_string(f.df_resid) + ")", "p"}};
  for (const auto& c : f.coefficients) {
    rows.push_back({c.name, sig(c.estimate, scale),
                    c.aliased ? "aliased"
                              : "[" + sig(c.ci_low, scale) + ", " + sig(c.ci_high, scale) + "]",
                    fixed(c.t, 2), format_p(c.p)});
  }
  print_table(out, rows);
  out << "Residual standard error: " << sig(f.sigma) << " on " << f.df_resid << " df\n";
  return kExitOk;
}

int cmd_anova(const ModelArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const ModelSpec spec = parse_model(a.model);
  const Dataset data = load_data(a.data, spec.response.empty() ? "DV" : spec.response, g);
  const ContrastSet contrasts = load_contrasts(a.contrasts, data);
  const Design design = expand_design(data, spec, contrasts);
  const AnovaTable t = anova_sequential(design, data.response);
  print_warnings(err, design.warnings);
  print_warnings(err, t.warnings);

  if (g.json()) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      rows.push_back({{"term", r.term},
                      {"df", r.df},
                      {"ss", r.sum_sq},
                      {"ms", r.mean_sq},
                      {"f", r.f},
                      {"p", r.p},
                      {"eta_sq_g", r.eta_sq_g}});
    }
    out << json{{"model", a.model},
                {"rows", rows},
                {"resid_df", t.resid_df},
                {"resid_ss", t.resid_ss},
                {"mse", t.resid_ms},
                {"warnings", t.warnings}}
                   .dump(2)
        << '\n';
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows{
      {"Effect", "df", "SS", "MS", "F", "p", "eta2_G"}};
  for (const auto& r : t.rows) {
    rows.push_back({r.term, fixed(r.df, 0), fixed(r.sum_sq, 2), fixed(r.mean_sq, 2),
                    fixed(r.f, 2), format_p(r.p), fixed(r.eta_sq_g, 3)});
  }
  rows.push_back({"Residuals", fixed(t.resid_df, 0), fixed(t.resid_ss, 2), fixed(t.resid_ms, 2),
                  "", "", ""});
  print_table(out, rows);
  return kExitOk;
}

struct EffectArgs {
  std::string data;
  std::string response = "DV";
  std::string factor;
  std::string contrasts;
  std::string a;
  std::string b;
  std::string matrix;
};

int cmd_alerting(const EffectArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const Dataset data = load_data(a.data, a.response, g);
  const ContrastSet contrasts = load_contrasts(a.contrasts, data);
  const auto it = contrasts.find(a.factor);
  if (it == contrasts.end()) {
    throw ValidationError("no contrast given for factor '" + a.factor + "'; use --contrasts");
  }
  const AlertingReport r = alerting(data, a.factor, it->second);
  print_warnings(err, r.warnings);
  if (g.json()) {
    json entries = json::array();
    for (const auto& e : r.entries) {
      entries.push_back({{"name", e.name}, {"ss", e.ss_contrast}, {"r2_alerting", e.r2_alerting}});
    }
    out << json{{"factor", a.factor},
                {"contrasts", entries},
                {"ss_effect", r.ss_effect},
                {"ss_sum", r.ss_sum},
                {"spanning", r.spanning},
                {"warnings", r.warnings}}
                   .dump(2)
        << '\n';
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows{{"Contrast", "SS", "r2_alerting"}};
  for (const auto& e : r.entries) {
    rows.push_back({e.name, fixed(e.ss_contrast, 2), fixed(e.r2_alerting, 2)});
  }
  rows.push_back({a.factor + " (effect)", fixed(r.ss_effect, 2), ""});
  print_table(out, rows);
  out << "contrasts span the effect: " << (r.spanning ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_partition(const EffectArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const Dataset data = load_data(a.data, a.response, g);
  const DenseMatrix m = read_text_file(a.matrix);
  const InteractionPartition p = partition_interaction(data, a.a, a.b, m);
  const std::vector<std::pair<std::string, const AnovaRow*>> order{
      {a.a, &p.main_a},
      {a.b, &p.main_b},
      {a.a + ":" + a.b, &p.interaction},
      {"  a priori contrast", &p.apriori},
      {"  residual interaction", &p.residual}};
  for (const auto& n : p.notes) err << "note: " << n << '\n';
  if (g.json()) {
    json rows = json::array();
    for (const auto& [name, r] : order) {
      rows.push_back({{"term", name.substr(name.find_first_not_of(' '))},
                      {"df", r->df},
                      {"ss", r->sum_sq},
                      {"ms", r->mean_sq},
                      {"f", r->f},
                      {"p", r->p}});
    }
    out << json{{"rows", rows},
                {"resid_df", p.resid_df},
                {"resid_ss", p.resid_ss},
                {"mse", p.resid_ms},
                {"r2_apriori", p.r2_apriori},
                {"r2_residual", p.r2_residual}}
                   .dump(2)
        << '\n';
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows{{"Effect", "df", "SS", "F", "p"}};
  for (const auto& [name, r] : order) {
    rows.push_back({name, fixed(r->df, 0), fixed(r->sum_sq, 2), fixed(r->f, 2), format_p(r->p)});
  }
  rows.push_back({"Residuals", fixed(p.resid_df, 0), fixed(p.resid_ss, 2), "", ""});
  print_table(out, rows);
  out << "share of the interaction: a priori " << fixed(p.r2_apriori, 2) << ", residual "
      << fixed(p.r2_residual, 2) << '\n';
  return kExitOk;
}

int cmd_repro(const std::string& id, const Globals& g, std::ostream& out) {
  std::vector<std::string> ids;
  if (id == "all") {
    ids = repro_ids();
  } else {
    ids.push_back(id);
  }
  const std::uint64_t seed = g.seed.value_or(1);
  std::vector<ReproTable> tables;
  for (const auto& i : ids) tables.push_back(reproduce(i, seed));

  std::size_t passed = 0;
  for (const auto& t : tables) passed += t.pass() ? 1 : 0;
  const bool ok = passed == tables.size();

  if (g.json()) {
    json arr = json::array();
    for (const auto& t : tables) {
      json checks = json::array();
      for (const auto& c : t.checks) {
        checks.push_back({{"label", c.label},
                          {"observed", c.observed},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass()},
                          {"note", c.note}});
      }
      arr.push_back({{"id", t.id}, {"title", t.title}, {"pass", t.pass()},
                     {"checks", checks}, {"notes", t.notes}});
    }
    out << json{{"tables", arr}, {"passed", passed}, {"total", tables.size()}, {"seed", seed}}
               .dump(2)
        << '\n';
  } else {
    for (const auto& t : tables) {
      out << (t.pass() ? "PASS " : "FAIL ") << t.id << ": " << t.title << '\n';
      std::vector<std::vector<std::string>> rows;
      for (const auto& c : t.checks) {
        rows.push_back({std::string("  ") + (c.pass() ? "ok  " : "FAIL") + " " + c.label,
                        format_number(c.observed, false, 8),
                        "expected " + format_number(c.expected, false, 8),
                        "tol " + format_number(c.tolerance, false, 2),
                        c.note.empty() ? "" : "(" + c.note + ")"});
      }
      print_table(out, rows);
      for (const auto& n : t.notes) out << "  note: " << n << '\n';
    }
    out << passed << " of " << tables.size() << " tables reproduced\n";
  }
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

std::string format_p(double p) {
  if (std::isnan(p)) return "NA";
  if (p < 0.001) return "< .001";
  if (p > 0.999) return "> .999";
  std::string s = fixed(p, 3);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contrast coding, linear model fitting and exact-moment simulation for "
               "factorial designs",
               "contrastlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", "contrastlab 1.0.0");

  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed for simulation and repro");
  app.add_option("--levels", g.levels, "Level order override, F=a,b,c (repeatable)")
      ->take_all();
  app.add_option("--as-factor", g.as_factor, "Treat a numeric CSV column as a factor");

  std::string gen_kind;
  std::size_t gen_k = 0;
  auto* gen = app.add_subcommand("gen", "Print a built-in contrast matrix with diagnostics");
  gen->add_option("kind", gen_kind, "Contrast kind")
      ->required()
      ->check(CLI::IsMember(builder_names()));
  gen->add_option("k", gen_k, "Number of levels")->required()->check(CLI::Range(2, 1000));

  InvertArgs inv;
  auto* invert = app.add_subcommand("invert", "Convert between hypothesis and contrast matrices");
  invert->add_option("matrix", inv.path, "Labeled matrix file")
      ->required()
      ->check(CLI::ExistingFile);
  invert->add_option("--direction", inv.direction, "h2c: hypothesis to contrast, c2h: reverse")
      ->check(CLI::IsMember({"h2c", "c2h"}))
      ->capture_default_str();
  invert->add_flag("--intercept", inv.intercept,
                   "h2c: first row is the intercept; c2h: add an intercept column");
  invert->add_flag("--transposed", inv.transposed, "Input is stored transposed");
  invert->add_flag("--rows", inv.rows, "c2h: print hypotheses as rows");
  invert->add_flag("--allow-deficient", inv.allow_deficient, "c2h: accept a deficient coding");
  invert->add_option("-o,--output", inv.output, "Also write the result in the text format");

  std::string check_path;
  bool check_deficient = false;
  auto* check = app.add_subcommand("check", "Diagnostics for a contrast matrix file");
  check->add_option("matrix", check_path, "Contrast matrix, levels as rows")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_flag("--allow-deficient", check_deficient, "Report instead of rejecting dependence");

  std::string sim_path;
  std::string sim_out;
  bool sim_round = false;
  auto* sim = app.add_subcommand("simulate", "Simulate a factorial dataset with exact moments");
  sim->add_option("spec", sim_path, "Simulation spec file")->required()->check(CLI::ExistingFile);
  sim->add_option("-o,--output", sim_out, "CSV output path (default stdout)");
  sim->add_flag("--round", sim_round, "Round responses to whole numbers");

  ModelArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a linear model and print coefficients");
  ModelArgs anova_args;
  auto* anova_cmd = app.add_subcommand("anova", "Sequential ANOVA table");
  for (auto [cmd, m] : {std::pair{fit_cmd, &fit_args}, std::pair{anova_cmd, &anova_args}}) {
    cmd->add_option("data", m->data, "CSV data file")->required()->check(CLI::ExistingFile);
    cmd->add_option("-m,--model", m->model, "Model formula, e.g. 'DV ~ 1 + A*B'")->required();
    cmd->add_option("-c,--contrasts", m->contrasts, "Contrast spec file or F=kind,G=kind");
  }
  fit_cmd->add_flag("--allow-deficient", fit_args.allow_deficient,
                    "Fit rank-deficient designs with aliased columns flagged");
  fit_cmd->add_option("--confidence", fit_args.confidence, "Confidence level")
      ->check(CLI::Range(0.5, 0.9999))
      ->capture_default_str();

  EffectArgs al;
  auto* alert = app.add_subcommand("alerting", "Per-contrast SS and alerting r-squared");
  alert->add_option("data", al.data, "CSV data file")->required()->check(CLI::ExistingFile);
  alert->add_option("--factor", al.factor, "Factor to decompose")->required();
  alert->add_option("-c,--contrasts", al.contrasts, "Contrast spec file or F=kind")->required();
  alert->add_option("--response", al.response, "Response column")->capture_default_str();

  EffectArgs pa;
  auto* part = app.add_subcommand("partition", "Split an interaction by an a priori contrast");
  part->add_option("data", pa.data, "CSV data file")->required()->check(CLI::ExistingFile);
  part->add_option("--a", pa.a, "Row factor")->required();
  part->add_option("--b", pa.b, "Column factor")->required();
  part->add_option("--matrix", pa.matrix, "A priori interaction matrix")
      ->required()
      ->check(CLI::ExistingFile);
  part->add_option("--response", pa.response, "Response column")->capture_default_str();

  std::string repro_id = "all";
  auto* repro = app.add_subcommand("repro", "Regenerate a worked example and compare");
  std::vector<std::string> choices = repro_ids();
  choices.push_back("all");
  repro->add_option("table", repro_id, "Table id or 'all'")
      ->check(CLI::IsMember(choices))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_kind, gen_k, g, out);
    if (*invert) return cmd_invert(inv, g, out, err);
    if (*check) return cmd_check(check_path, check_deficient, g, out, err);
    if (*sim) return cmd_simulate(sim_path, sim_out, sim_round, g, out);
    if (*fit_cmd) return cmd_fit(fit_args, g, out, err);
    if (*anova_cmd) return cmd_anova(anova_args, g, out, err);
    if (*alert) return cmd_alerting(al, g, out, err);
    if (*part) return cmd_partition(pa, g, out, err);
    if (*repro) return cmd_repro(repro_id, g, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace contrastlab
