#pragma once

#include <vector>

#include "lexqa/dep_tree.hpp"

namespace lexqa {

struct ScoreWeights {
  double exact = 3.0;
  double relaxed = 1.0;
  double node_ratio = 2.0;
};

struct ScoreMultipliers {
  double entry = 1.0;
  double entity = 0.9;  // also numerals
  double special = 0.8;
};

struct TreeScore {
  double exact_fraction = 0.0;
  double relaxed_fraction = 0.0;
  double node_ratio = 0.0;
  double total = 0.0;
};

// Token-weighted match fractions plus the merge ratio, combined as a
// weighted average.
TreeScore score_tree(const DepTree& tree, const ScoreWeights& w = {},
                     const ScoreMultipliers& m = {});

// Strict weak order for processing trees: total desc, then parser tag,
// variant and structural hash.
struct ScoredTree {
  DepTree tree;
  TreeScore score;
};
bool scored_tree_before(const ScoredTree& a, const ScoredTree& b);

}  // namespace lexqa
