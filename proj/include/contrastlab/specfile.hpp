#pragma once

#include "contrastlab/contrasts.hpp"
#include "contrastlab/design.hpp"
#include "contrastlab/simulate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace contrastlab {

// "[1, 2; 3, 4]", "[500; 450; 400]" or a bare number. Rows are separated by
// ';', entries by commas or whitespace; fractions are accepted.
DenseMatrix parse_bracket_matrix(const std::string& text);

// Simulation spec: `key = value` lines with keys B, W, n, M, SD, R, seed,
// round. B and W list level counts ("2 2", "[2, 2]", or empty for none). R
// is a scalar or a matrix and may be repeated once per between cell.
// Bracket matrices may span lines. '#' starts a comment.
DesignSpec parse_design_spec(const std::string& text);
DesignSpec read_design_spec(const std::string& path);

struct ContrastRequest {
  std::string factor;
  // treatment, sum, scaled_sum, repeated, polynomial, helmert, custom,
  // hypothesis, means
  std::string builder;
  std::optional<DenseMatrix> matrix;  // custom and hypothesis
  std::vector<double> means;          // means
  bool intercept = false;             // hypothesis: first row is the intercept
  bool transposed = false;            // hypothesis given levels x hypotheses
  bool allow_deficient = false;
};

// Lines of the form
//   factor <name> <builder> [intercept] [transposed] [allow_deficient]
//   factor <name> means 10 10 20 30
// custom and hypothesis builders are followed by a labeled matrix in the
// text format and a line containing only `end`.
std::vector<ContrastRequest> parse_contrast_spec(const std::string& text);
std::vector<ContrastRequest> read_contrast_spec(const std::string& path);

// Shorthand "F=sum,A=scaled_sum" for built-in builders.
std::vector<ContrastRequest> parse_contrast_shorthand(const std::string& text);

// Builds each request against the factor levels in `data`.
ContrastSet resolve_contrasts(const std::vector<ContrastRequest>& requests, const Dataset& data);

ContrastMatrix resolve_contrast(const ContrastRequest& request, const Labels& levels);

}  // namespace contrastlab
