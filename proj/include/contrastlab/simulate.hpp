#pragma once

#include "contrastlab/design.hpp"
#include "contrastlab/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace contrastlab {

struct DesignSpec {
  std::vector<std::size_t> between_levels;
  std::vector<std::size_t> within_levels;
  std::size_t n_per_cell = 0;
  // Rows are between cells, columns within cells; earlier factors vary slowest.
  DenseMatrix means;
  // 1x1 (applies to every cell) or the shape of `means`.
  DenseMatrix sd;
  // Empty, one matrix for every between cell, or one per between cell.
  std::vector<DenseMatrix> correlation;
  std::uint64_t seed = 1;
  bool round_dv = false;
};

std::size_t between_cells(const DesignSpec& spec);
std::size_t within_cells(const DesignSpec& spec);

// w x w matrix with unit diagonal and r everywhere else.
DenseMatrix constant_correlation(std::size_t w, double r);

// Long-format data whose per-cell sample means and SDs (n - 1 divisor), and
// within-subject correlations when given, equal the specification exactly.
// Columns: B_A, B_B, ..., W_A, ..., id, DV. Rows run between cell, then
// subject, then within cell.
Dataset mixed_design(const DesignSpec& spec);

}  // namespace contrastlab
