#include "lexqa/tree_scorer.hpp"

#include <algorithm>

#include "lexqa/errors.hpp"

namespace lexqa {

namespace {

double node_multiplier(const DepNode& n, const ScoreMultipliers& m, bool exact_only) {
  const bool entry = std::any_of(n.entry_candidates.begin(), n.entry_candidates.end(),
                                 [&](const PropertyMatch& p) { return !exact_only || p.exact; });
  if (entry) return m.entry;
  const bool entity =
      n.numeric_value.has_value() ||
      std::any_of(n.entity_candidates.begin(), n.entity_candidates.end(),
                  [&](const EntityMatch& e) { return !exact_only || e.similarity >= 1.0; });
  if (entity) return m.entity;
  if (n.special_mark) return m.special;
  return 0.0;
}

}  // namespace

TreeScore score_tree(const DepTree& tree, const ScoreWeights& w,
                     const ScoreMultipliers& m) {
  if (w.exact <= 0 || w.relaxed <= 0 || w.node_ratio <= 0) {
    throw ValidationError("score weights must be positive");
  }
  TreeScore s;
  double total_weight = 0;
  double exact = 0;
  double relaxed = 0;
  for (const auto& n : tree.nodes) {
    const double weight = static_cast<double>(n.token_count());
    total_weight += weight;
    exact += weight * node_multiplier(n, m, true);
    relaxed += weight * node_multiplier(n, m, false);
  }
  if (total_weight > 0) {
    s.exact_fraction = exact / total_weight;
    s.relaxed_fraction = relaxed / total_weight;
  }
  const auto original = std::max<std::size_t>(tree.original_node_count, 1);
  s.node_ratio = static_cast<double>(tree.nodes.size()) / static_cast<double>(original);
  s.total = (w.exact * s.exact_fraction + w.relaxed * s.relaxed_fraction +
             w.node_ratio * s.node_ratio) /
            (w.exact + w.relaxed + w.node_ratio);
  return s;
}

bool scored_tree_before(const ScoredTree& a, const ScoredTree& b) {
  if (a.score.total != b.score.total) return a.score.total > b.score.total;
  if (a.tree.parser_tag != b.tree.parser_tag) return a.tree.parser_tag < b.tree.parser_tag;
  if (a.tree.variant != b.tree.variant) return a.tree.variant < b.tree.variant;
  return a.tree.structural_hash() < b.tree.structural_hash();
}

}  // namespace lexqa
