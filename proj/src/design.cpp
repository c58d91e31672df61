#include "contrastlab/design.hpp"

#include "contrastlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace contrastlab {

// ---------------------------------------------------------------------------
// Data types

Factor Factor::from_values(std::string name, const std::vector<std::string>& values) {
  Factor f;
  f.name = std::move(name);
  std::map<std::string, std::size_t> index;
  for (const auto& v : values) {
    auto [it, inserted] = index.emplace(v, f.levels.size());
    if (inserted) f.levels.push_back(v);
    f.codes.push_back(it->second);
  }
  return f;
}

void Factor::reorder(const Labels& order) {
  Labels sorted_old = levels;
  Labels sorted_new = order;
  std::sort(sorted_old.begin(), sorted_old.end());
  std::sort(sorted_new.begin(), sorted_new.end());
  if (sorted_old != sorted_new) {
    std::string have;
    for (const auto& l : levels) have += (have.empty() ? "" : ",") + l;
    throw ValidationError("level order for '" + name + "' must list exactly the levels " +
                          have);
  }
  std::vector<std::size_t> remap(levels.size());
  for (std::size_t old = 0; old < levels.size(); ++old) {
    remap[old] = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), levels[old]) - order.begin());
  }
  for (auto& c : codes) c = remap[c];
  levels = order;
}

const Factor* Dataset::find_factor(const std::string& name) const {
  for (const auto& f : factors) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

Factor* Dataset::find_factor(const std::string& name) {
  for (auto& f : factors) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Covariate* Dataset::find_covariate(const std::string& name) const {
  for (const auto& c : covariates) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void Dataset::validate() const {
  const std::size_t count = n();
  for (double v : response) {
    if (!std::isfinite(v)) throw ValidationError("response contains a non-finite value");
  }
  for (const auto& f : factors) {
    if (f.codes.size() != count) {
      throw ValidationError("factor '" + f.name + "' has " + std::to_string(f.codes.size()) +
                            " values, expected " + std::to_string(count));
    }
    for (auto c : f.codes) {
      if (c >= f.levels.size()) {
        throw ValidationError("factor '" + f.name + "' has an out-of-range level code");
      }
    }
  }
  for (const auto& c : covariates) {
    if (c.values.size() != count) {
      throw ValidationError("covariate '" + c.name + "' has " +
                            std::to_string(c.values.size()) + " values, expected " +
                            std::to_string(count));
    }
    for (double v : c.values) {
      if (!std::isfinite(v)) {
        throw ValidationError("covariate '" + c.name + "' contains a non-finite value");
      }
    }
  }
}

std::string Term::name() const {
  std::string out;
  for (const auto& v : vars) out += (out.empty() ? "" : ":") + v;
  return out;
}

bool Term::operator==(const Term& other) const {
  if (kind != other.kind) return false;
  if (kind == TermKind::Nested) return vars == other.vars;
  std::set<std::string> a(vars.begin(), vars.end());
  std::set<std::string> b(other.vars.begin(), other.vars.end());
  return a == b;
}

// ---------------------------------------------------------------------------
// Model formula parser

namespace {

using TermList = std::vector<Term>;

void append_unique(TermList& out, const Term& t) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

TermList concat(TermList a, const TermList& b) {
  for (const auto& t : b) append_unique(a, t);
  return a;
}

class FormulaParser {
 public:
  FormulaParser(const std::string& text, std::size_t start) : s_(text), pos_(start) {}

  void parse_rhs(ModelSpec& spec) {
    bool first = true;
    bool any = false;
    while (true) {
      skip_ws();
      char sign = '+';
      if (peek() == '+' || peek() == '-') {
        sign = s_[pos_++];
        skip_ws();
      } else if (!first) {
        if (at_end()) break;
        fail("expected '+' or '-'");
      }
      if (at_end()) fail("expected a term");
      first = false;
      any = true;

      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::size_t at = pos_;
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += s_[pos_++];
        if (digits == "1") {
          spec.intercept = sign == '+';
        } else if (digits == "0" && sign == '+') {
          spec.intercept = false;
        } else {
          throw ParseError("only 1, 0 and -1 are allowed as intercept terms", at);
        }
        continue;
      }
      if (sign == '-') fail("only the intercept can be removed with '-'");
      for (const auto& t : parse_product()) append_unique(spec.terms, t);
    }
    if (!any) fail("empty model");
    spec.error_term = error_term_;
  }

 private:
  const std::string& s_;
  std::size_t pos_;
  std::string error_term_;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) throw ParseError(what + ", found end of formula", pos_);
    throw ParseError(what + ", found '" + std::string(1, s_[pos_]) + "'", pos_);
  }

  TermList parse_product() {
    TermList left = parse_colon();
    while (true) {
      skip_ws();
      const char op = peek();
      if (op != '*' && op != '/') return left;
      ++pos_;
      const std::size_t at = pos_;
      TermList right = parse_colon();
      left = op == '*' ? cross(left, right) : nest(left, right, at);
    }
  }

  TermList parse_colon() {
    TermList left = parse_atom();
    while (true) {
      skip_ws();
      if (peek() != ':') return left;
      const std::size_t at = pos_++;
      left = interact(left, parse_atom(), at);
    }
  }

  TermList parse_atom() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      TermList inner = parse_product();
      while (true) {
        skip_ws();
        if (peek() == ')') {
          ++pos_;
          return inner;
        }
        if (peek() != '+') fail("expected '+' or ')'");
        ++pos_;
        inner = concat(inner, parse_product());
      }
    }
    const char c = peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.')) {
      fail("expected a variable name");
    }
    std::string name;
    while (!at_end()) {
      const char ch = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') {
        name += ch;
        ++pos_;
      } else {
        break;
      }
    }
    skip_ws();
    if (name == "Error" && peek() == '(') {
      const std::size_t open = pos_++;
      const std::size_t close = s_.find(')', pos_);
      if (close == std::string::npos) throw ParseError("unclosed Error(", open);
      error_term_ = s_.substr(pos_, close - pos_);
      pos_ = close + 1;
      return {};
    }
    return {Term{{name}, TermKind::Main}};
  }

  static TermList interact(const TermList& left, const TermList& right, std::size_t at) {
    TermList out;
    for (const auto& l : left) {
      for (const auto& r : right) {
        if (l.kind == TermKind::Nested || r.kind == TermKind::Nested) {
          throw ParseError("nested terms cannot be crossed", at);
        }
        Term t;
        t.vars = l.vars;
        for (const auto& v : r.vars) {
          if (std::find(t.vars.begin(), t.vars.end(), v) == t.vars.end()) t.vars.push_back(v);
        }
        t.kind = t.vars.size() > 1 ? TermKind::Interaction : TermKind::Main;
        append_unique(out, t);
      }
    }
    return out;
  }

  static TermList cross(const TermList& left, const TermList& right) {
    return concat(concat(left, right), interact(left, right, 0));
  }

  static TermList nest(const TermList& parents, const TermList& children, std::size_t at) {
    std::vector<std::string> parent_vars;
    for (const auto& t : parents) {
      for (const auto& v : t.vars) {
        if (std::find(parent_vars.begin(), parent_vars.end(), v) == parent_vars.end()) {
          parent_vars.push_back(v);
        }
      }
    }
    TermList out = parents;
    for (const auto& child : children) {
      if (child.kind != TermKind::Main) {
        throw ParseError("the right side of '/' must be single variables", at);
      }
      Term t;
      t.vars = parent_vars;
      t.vars.push_back(child.vars.front());
      t.kind = TermKind::Nested;
      append_unique(out, t);
    }
    return out;
  }
};

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  const char c = s.front();
  if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.';
  });
}

}  // namespace

ModelSpec parse_model(const std::string& text) {
  const auto tilde = text.find('~');
  if (tilde == std::string::npos) throw ParseError("expected '~' in model formula", 0);
  ModelSpec spec;
  std::string lhs = text.substr(0, tilde);
  lhs.erase(0, lhs.find_first_not_of(" \t"));
  lhs.erase(lhs.find_last_not_of(" \t") + 1);
  if (!lhs.empty() && !is_identifier(lhs)) {
    throw ParseError("response must be a single variable name", 0);
  }
  spec.response = lhs;
  FormulaParser(text, tilde + 1).parse_rhs(spec);
  return spec;
}

// ---------------------------------------------------------------------------
// Design expansion

namespace {

struct ColumnBlock {
  std::vector<std::vector<double>> columns;  // each of length n
  Labels names;
};

ColumnBlock coded_factor(const Factor& f, const ContrastSet& contrasts) {
  const auto it = contrasts.find(f.name);
  const ContrastMatrix c = it != contrasts.end() ? it->second : treatment(f.levels);
  if (c.k() != f.levels.size()) {
    throw DimensionError("contrast for '" + f.name + "' has " + std::to_string(c.k()) +
                         " levels but the data have " + std::to_string(f.levels.size()));
  }
  // Row of the contrast matrix for each data level.
  std::vector<std::size_t> row_of(f.levels.size());
  Labels a = c.levels();
  Labels b = f.levels;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t l = 0; l < f.levels.size(); ++l) {
    row_of[l] = a == b ? static_cast<std::size_t>(std::find(c.levels().begin(),
                                                            c.levels().end(), f.levels[l]) -
                                                  c.levels().begin())
                       : l;
  }
  ColumnBlock block;
  for (std::size_t j = 0; j < c.m(); ++j) {
    std::vector<double> col(f.codes.size());
    for (std::size_t i = 0; i < f.codes.size(); ++i) col[i] = c.matrix()(row_of[f.codes[i]], j);
    block.columns.push_back(std::move(col));
    block.names.push_back(f.name + c.column_names()[j]);
  }
  return block;
}

ColumnBlock indicator_factor(const Factor& f) {
  ColumnBlock block;
  for (std::size_t l = 0; l < f.levels.size(); ++l) {
    std::vector<double> col(f.codes.size());
    for (std::size_t i = 0; i < f.codes.size(); ++i) col[i] = f.codes[i] == l ? 1.0 : 0.0;
    block.columns.push_back(std::move(col));
    block.names.push_back(f.name + f.levels[l]);
  }
  return block;
}

ColumnBlock variable_block(const Dataset& data, const std::string& var,
                           const ContrastSet& contrasts) {
  if (const Factor* f = data.find_factor(var)) return coded_factor(*f, contrasts);
  if (const Covariate* c = data.find_covariate(var)) return {{c->values}, {c->name}};
  throw ValidationError("unknown variable '" + var + "' in model");
}

const Factor& require_factor(const Dataset& data, const std::string& var) {
  const Factor* f = data.find_factor(var);
  if (!f) throw ValidationError("'" + var + "' must be a factor to act as a nesting parent");
  return *f;
}

// Elementwise products over all column combinations, first block varying fastest.
ColumnBlock product(const std::vector<ColumnBlock>& blocks, std::size_t n) {
  ColumnBlock out;
  std::vector<std::size_t> idx(blocks.size(), 0);
  while (true) {
    std::vector<double> col(n, 1.0);
    std::string name;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& src = blocks[b].columns[idx[b]];
      for (std::size_t i = 0; i < n; ++i) col[i] *= src[i];
      name += (b == 0 ? "" : ":") + blocks[b].names[idx[b]];
    }
    out.columns.push_back(std::move(col));
    out.names.push_back(std::move(name));
    std::size_t b = 0;
    while (b < blocks.size() && ++idx[b] == blocks[b].columns.size()) idx[b++] = 0;
    if (b == blocks.size()) break;
  }
  return out;
}

}  // namespace

Design expand_design(const Dataset& data, const ModelSpec& spec, const ContrastSet& contrasts) {
  data.validate();
  const std::size_t n = data.n();
  if (n == 0) throw ValidationError("dataset has no observations");

  std::vector<std::vector<double>> columns;
  Labels names;
  Design design;
  design.intercept = spec.intercept;
  if (spec.intercept) {
    columns.emplace_back(n, 1.0);
    names.push_back("(Intercept)");
  }

  bool factor_seen = false;
  for (const auto& term : spec.terms) {
    ColumnBlock block;
    switch (term.kind) {
      case TermKind::Main: {
        const auto& var = term.vars.front();
        const Factor* f = data.find_factor(var);
        if (f && !spec.intercept && !factor_seen) {
          block = indicator_factor(*f);
        } else {
          block = variable_block(data, var, contrasts);
        }
        factor_seen = factor_seen || f != nullptr;
        break;
      }
      case TermKind::Interaction: {
        std::vector<ColumnBlock> parts;
        for (const auto& v : term.vars) parts.push_back(variable_block(data, v, contrasts));
        block = product(parts, n);
        break;
      }
      case TermKind::Nested: {
        std::vector<ColumnBlock> parts;
        for (std::size_t p = 0; p + 1 < term.vars.size(); ++p) {
          parts.push_back(indicator_factor(require_factor(data, term.vars[p])));
        }
        ColumnBlock cells = product(parts, n);
        ColumnBlock child = variable_block(data, term.vars.back(), contrasts);
        block = product({cells, child}, n);
        break;
      }
    }
    TermColumns tc{term.name(), {}};
    for (std::size_t j = 0; j < block.columns.size(); ++j) {
      tc.columns.push_back(columns.size());
      columns.push_back(std::move(block.columns[j]));
      names.push_back(block.names[j]);
    }
    design.terms.push_back(std::move(tc));
  }

  if (columns.empty()) throw ValidationError("model has no columns");
  design.matrix = DenseMatrix::from_columns(columns);
  design.matrix.set_col_labels(names);
  design.rank = rank(design.matrix);
  if (design.rank < design.matrix.cols()) {
    design.warnings.push_back("design matrix is rank deficient (rank " +
                              std::to_string(design.rank) + " of " +
                              std::to_string(design.matrix.cols()) + " columns)");
  }
  return design;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ValidationError("unterminated quote on line " + std::to_string(line_no));
  fields.push_back(field);
  for (auto& f : fields) {
    f.erase(0, f.find_first_not_of(" \t"));
    f.erase(f.find_last_not_of(" \t") + 1);
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

std::string shortest(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvOptions& options) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line, line_no));
  }
  if (rows.empty()) throw ValidationError("CSV has no header");
  const auto header = rows.front();
  const std::size_t width = header.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw ValidationError("CSV row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " fields, expected " +
                            std::to_string(width));
    }
  }

  for (const auto& [name, order] : options.level_order) {
    (void)order;
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw ValidationError("level order given for unknown column '" + name + "'");
    }
  }

  Dataset data;
  data.response_name = options.response;
  bool have_response = false;
  for (std::size_t c = 0; c < width; ++c) {
    const std::string& name = header[c];
    std::vector<std::string> raw;
    std::vector<double> numeric;
    bool all_numeric = true;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const std::string& v = rows[r][c];
      if (v.empty() || v == "NA") {
        throw ValidationError("missing value in column '" + name + "' at row " +
                              std::to_string(r));
      }
      raw.push_back(v);
      double d = 0.0;
      if (all_numeric && parse_double(v, d)) {
        numeric.push_back(d);
      } else {
        all_numeric = false;
      }
    }

    if (name == options.response) {
      if (!all_numeric) throw ValidationError("response column '" + name + "' is not numeric");
      data.response = std::move(numeric);
      have_response = true;
      continue;
    }
    const bool as_factor = !all_numeric || options.force_factor.count(name) > 0 ||
                           options.level_order.count(name) > 0;
    if (as_factor) {
      Factor f = Factor::from_values(name, raw);
      if (const auto it = options.level_order.find(name); it != options.level_order.end()) {
        f.reorder(it->second);
      }
      data.factors.push_back(std::move(f));
    } else {
      data.covariates.push_back({name, std::move(numeric)});
    }
  }
  if (!have_response) {
    throw ValidationError("response column '" + options.response + "' not found");
  }
  data.validate();
  return data;
}

Dataset read_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open data file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), options);
}

std::string to_csv(const Dataset& data) {
  std::ostringstream out;
  std::vector<std::string> header;
  for (const auto& f : data.factors) header.push_back(f.name);
  for (const auto& c : data.covariates) header.push_back(c.name);
  header.push_back(data.response_name);
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    bool first = true;
    auto sep = [&] {
      if (!first) out << ',';
      first = false;
    };
    for (const auto& f : data.factors) {
      sep();
      out << f.label(i);
    }
    for (const auto& c : data.covariates) {
      sep();
      out << shortest(c.values[i]);
    }
    sep();
    out << shortest(data.response[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace contrastlab
