#pragma once

#include "contrastlab/contrasts.hpp"
#include "contrastlab/matrix.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace contrastlab {

struct Factor {
  std::string name;
  Labels levels;
  std::vector<std::size_t> codes;  // per observation, indexes levels

  // Builds levels in first-appearance order.
  static Factor from_values(std::string name, const std::vector<std::string>& values);
  // Reorders levels to `order`, which must be a permutation of the current levels.
  void reorder(const Labels& order);
  std::string label(std::size_t obs) const { return levels[codes[obs]]; }
};

struct Covariate {
  std::string name;
  std::vector<double> values;
};

struct Dataset {
  std::vector<Factor> factors;
  std::vector<Covariate> covariates;
  std::string response_name = "DV";
  std::vector<double> response;

  std::size_t n() const noexcept { return response.size(); }
  const Factor* find_factor(const std::string& name) const;
  Factor* find_factor(const std::string& name);
  const Covariate* find_covariate(const std::string& name) const;

  // Throws ValidationError when column lengths disagree, a code is out of
  // range, or a value is not finite.
  void validate() const;
};

enum class TermKind { Main, Interaction, Nested };

struct Term {
  // For Nested terms the parents come first and the nested child is last.
  std::vector<std::string> vars;
  TermKind kind = TermKind::Main;

  std::string name() const;
  bool operator==(const Term& other) const;
};

struct ModelSpec {
  std::string response;
  bool intercept = true;
  std::vector<Term> terms;
  // Contents of an Error(...) term. Accepted for between-subject data with
  // one observation per id, where it does not change the fit.
  std::string error_term;
};

// "DV ~ 1 + A*B", "DV ~ -1 + F", "DV ~ 1 + B/A", "DV ~ A + B + A:B".
// ':' binds tighter than '*' and '/', which bind tighter than '+'.
// Throws ParseError with the offending position.
ModelSpec parse_model(const std::string& text);

using ContrastSet = std::map<std::string, ContrastMatrix>;

struct TermColumns {
  std::string term;
  std::vector<std::size_t> columns;
};

struct Design {
  DenseMatrix matrix;  // n x p, columns labeled
  bool intercept = false;
  std::vector<TermColumns> terms;  // in model order, intercept excluded
  std::vector<std::string> warnings;
  std::size_t rank = 0;
};

// Factors without an entry in `contrasts` get treatment coding. A contrast
// whose level labels are a permutation of the factor's levels is matched by
// label, otherwise by position.
Design expand_design(const Dataset& data, const ModelSpec& spec,
                     const ContrastSet& contrasts = {});

struct CsvOptions {
  std::string response = "DV";
  std::map<std::string, Labels> level_order;
  std::set<std::string> force_factor;  // numeric columns to treat as factors
};

// Header row, comma separated, optional double quotes. Non-numeric columns
// become factors and numeric ones covariates; the response must be numeric.
// Empty and NA cells are rejected.
Dataset parse_csv(const std::string& text, const CsvOptions& options = {});
Dataset read_csv(const std::string& path, const CsvOptions& options = {});

// Factors first, then covariates, then the response.
std::string to_csv(const Dataset& data);

}  // namespace contrastlab
