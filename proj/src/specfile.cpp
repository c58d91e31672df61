#include "contrastlab/specfile.hpp"

#include "contrastlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace contrastlab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string slurp(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ValidationError(std::string("cannot open ") + what + " '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_entries(const std::string& row) {
  std::vector<std::string> out;
  std::string token;
  for (char c : row) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

std::vector<std::size_t> parse_levels(const std::string& value, const std::string& key) {
  std::string v = value;
  v.erase(std::remove_if(v.begin(), v.end(), [](char c) { return c == '[' || c == ']'; }),
          v.end());
  const std::string t = trim(v);
  std::vector<std::size_t> out;
  if (t.empty() || t == "none" || t == "NULL") return out;
  for (const auto& e : split_entries(t)) {
    const double d = parse_number(e);
    if (d < 1.0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
      throw ValidationError(key + " must list positive whole level counts");
    }
    out.push_back(static_cast<std::size_t>(d));
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  std::string v = trim(value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0" || v.empty()) return false;
  throw ValidationError(key + " must be true or false");
}

}  // namespace

DenseMatrix parse_bracket_matrix(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ValidationError("empty matrix");
  if (t.front() == '[') {
    if (t.back() != ']') throw ValidationError("matrix is missing its closing ']'");
    t = t.substr(1, t.size() - 2);
  }
  std::vector<std::vector<double>> rows;
  std::stringstream in(t);
  std::string row;
  while (std::getline(in, row, ';')) {
    std::vector<double> values;
    for (const auto& e : split_entries(row)) values.push_back(parse_number(e));
    if (values.empty()) continue;
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ValidationError("empty matrix");
  try {
    return DenseMatrix::from_rows(rows);
  } catch (const DimensionError&) {
    throw ValidationError("matrix rows have different lengths: '" + text + "'");
  }
}

DesignSpec parse_design_spec(const std::string& text) {
  DesignSpec spec;
  bool have_n = false;
  bool have_m = false;
  bool have_sd = false;
  std::vector<std::string> correlation_values;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    // Bracketed values may continue over several lines; a line break ends a
    // matrix row, and empty rows from doubled separators are skipped.
    if (!value.empty() && value.front() == '[') {
      while (value.find(']') == std::string::npos && std::getline(in, line)) {
        ++line_no;
        value += " ; " + trim(strip_comment(line));
      }
    }

    if (key == "B") {
      spec.between_levels = parse_levels(value, key);
    } else if (key == "W") {
      spec.within_levels = parse_levels(value, key);
    } else if (key == "n") {
      const double d = parse_number(value);
      if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
        throw ValidationError("n must be a whole number");
      }
      spec.n_per_cell = static_cast<std::size_t>(d);
      have_n = true;
    } else if (key == "M") {
      spec.means = parse_bracket_matrix(value);
      have_m = true;
    } else if (key == "SD") {
      spec.sd = parse_bracket_matrix(value);
      have_sd = true;
    } else if (key == "R") {
      correlation_values.push_back(value);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "round") {
      spec.round_dv = parse_bool(value, key);
    } else {
      throw ValidationError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_n) throw ValidationError("simulation spec is missing n");
  if (!have_m) throw ValidationError("simulation spec is missing M");
  if (!have_sd) throw ValidationError("simulation spec is missing SD");

  // A column of means for a between-only design may be written as a row.
  if (spec.within_levels.empty() && spec.means.rows() == 1 && spec.means.cols() > 1) {
    spec.means = transpose(spec.means);
  }
  if (spec.within_levels.empty() && spec.sd.rows() == 1 && spec.sd.cols() > 1) {
    spec.sd = transpose(spec.sd);
  }

  const std::size_t w = within_cells(spec);
  for (const auto& v : correlation_values) {
    DenseMatrix r = parse_bracket_matrix(v);
    if (r.rows() == 1 && r.cols() == 1) r = constant_correlation(w, r(0, 0));
    spec.correlation.push_back(std::move(r));
  }
  return spec;
}

DesignSpec read_design_spec(const std::string& path) {
  return parse_design_spec(slurp(path, "simulation spec"));
}

std::vector<ContrastRequest> parse_contrast_spec(const std::string& text) {
  std::vector<ContrastRequest> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    std::istringstream words(body);
    std::string keyword;
    words >> keyword;
    if (keyword != "factor") {
      throw ValidationError("line " + std::to_string(line_no) + ": expected 'factor'");
    }
    ContrastRequest req;
    if (!(words >> req.factor >> req.builder)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 'factor <name> <builder>'");
    }
    const auto& known = builder_names();
    const bool builtin = std::find(known.begin(), known.end(), req.builder) != known.end();
    if (req.builder == "means") {
      std::string token;
      while (words >> token) {
        for (const auto& e : split_entries(token)) req.means.push_back(parse_number(e));
      }
    } else {
      std::string flag;
      while (words >> flag) {
        if (flag == "intercept") {
          req.intercept = true;
        } else if (flag == "transposed") {
          req.transposed = true;
        } else if (flag == "allow_deficient") {
          req.allow_deficient = true;
        } else {
          throw ValidationError("line " + std::to_string(line_no) + ": unknown option '" +
                                flag + "'");
        }
      }
    }
    if (req.builder == "custom" || req.builder == "hypothesis") {
      std::string block;
      bool closed = false;
      while (std::getline(in, line)) {
        ++line_no;
        if (trim(line) == "end") {
          closed = true;
          break;
        }
        block += line + "\n";
      }
      if (!closed) {
        throw ValidationError("matrix for factor '" + req.factor + "' is missing 'end'");
      }
      req.matrix = parse_text(block);
    } else if (!builtin && req.builder != "means") {
      throw ValidationError("line " + std::to_string(line_no) + ": unknown builder '" +
                            req.builder + "'");
    }
    out.push_back(std::move(req));
  }
  return out;
}

std::vector<ContrastRequest> read_contrast_spec(const std::string& path) {
  return parse_contrast_spec(slurp(path, "contrast spec"));
}

std::vector<ContrastRequest> parse_contrast_shorthand(const std::string& text) {
  std::vector<ContrastRequest> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("expected factor=builder, got '" + item + "'");
    }
    ContrastRequest req;
    req.factor = trim(item.substr(0, eq));
    req.builder = trim(item.substr(eq + 1));
    const auto& known = builder_names();
    if (std::find(known.begin(), known.end(), req.builder) == known.end()) {
      throw ValidationError("unknown builder '" + req.builder + "'");
    }
    out.push_back(std::move(req));
  }
  return out;
}

ContrastMatrix resolve_contrast(const ContrastRequest& request, const Labels& levels) {
  if (request.builder == "means") {
    return from_predicted_means(request.means, levels);
  }
  if (request.builder == "custom") {
    const DenseMatrix& m = *request.matrix;
    const Labels rows = m.row_labels() ? *m.row_labels() : levels;
    return custom(m, rows, request.allow_deficient);
  }
  if (request.builder == "hypothesis") {
    const DenseMatrix m = request.transposed ? transpose(*request.matrix) : *request.matrix;
    const Labels cols = m.col_labels() ? *m.col_labels() : levels;
    Labels names = m.row_labels() ? *m.row_labels() : Labels{};
    return hypothesis_to_contrast(
        HypothesisMatrix(cols, m.with_labels(std::nullopt, std::nullopt), request.intercept,
                         names));
  }
  return build_contrast(request.builder, levels);
}

ContrastSet resolve_contrasts(const std::vector<ContrastRequest>& requests, const Dataset& data) {
  ContrastSet set;
  for (const auto& req : requests) {
    const Factor* f = data.find_factor(req.factor);
    if (!f) throw ValidationError("contrast given for unknown factor '" + req.factor + "'");
    set.insert_or_assign(req.factor, resolve_contrast(req, f->levels));
  }
  return set;
}

}  // namespace contrastlab
