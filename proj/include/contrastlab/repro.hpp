#pragma once

#include "contrastlab/design.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace contrastlab {

// Example datasets with exact cell moments. Factor and level names follow
// the worked examples (F with F1..Fk, A x B, Prime x Target).
Dataset two_group_data(std::uint64_t seed = 1);         // F(2), n=5, means .8/.4, SD .2
Dataset word_frequency_data(std::uint64_t seed = 1, bool round_dv = false);  // F(3), n=4
Dataset four_level_data(std::uint64_t seed = 1);        // F(4), n=5, means 10/20/10/40
Dataset two_by_two_data(std::uint64_t seed = 1);        // A(2) x B(2), same four means
Dataset priming_data(std::uint64_t seed = 1);           // Prime(3) x Target(3), SD 50
Dataset unbalanced_toy_data();                          // F1: 2, 3; F2: 4
// The rounded word-frequency responses as printed with the original example.
Dataset printed_word_frequency_data();

struct ReproCheck {
  std::string label;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;

  bool pass() const;
};

struct ReproTable {
  std::string id;
  std::string title;
  std::vector<ReproCheck> checks;
  std::vector<std::string> notes;

  bool pass() const;
};

const std::vector<std::string>& repro_ids();

// Throws ValidationError for an unknown id.
ReproTable reproduce(const std::string& id, std::uint64_t seed = 1);

}  // namespace contrastlab
