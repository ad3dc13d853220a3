#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lexqa/dep_tree.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/ontology_matcher.hpp"

namespace lexqa {

// One rule application. `absorbed == 0` marks an annotation step that sets
// a special mark on `surviving` without merging anything.
struct MergeStep {
  std::string rule;
  int absorbed = 0;
  int surviving = 0;

  friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

struct MergeTrace {
  std::vector<MergeStep> steps;

  void append(const MergeTrace& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  }
  // One JSON object per line.
  std::string to_json_lines() const;
};

enum class MergeRuleKind { kGeneric, kLexiconMarker, kEntityMerging };

struct MergeRule {
  std::string name;
  MergeRuleKind kind;
};

// Rule inventory in application order.
const std::vector<MergeRule>& merge_rules();

// Punctuation removal, fixed/compound/det absorption, "how many" and
// comparative keywords, and amod absorption when the result is a lexicon
// form (only when `lex` is given). Also marks ASK keywords and "in".
std::pair<DepTree, MergeTrace> apply_generic_rules(const DepTree& tree,
                                                   const Lexicon* lex = nullptr);

// Absorbs the adposition that matches a candidate entry's marker into the
// node bearing the entry's written form.
std::pair<DepTree, MergeTrace> apply_marker_rules(const DepTree& tree,
                                                  const Lexicon& lex);

// Collapses each multi-node entity span into its head-most node. Overlapping
// spans branch: one output per maximal set of pairwise disjoint spans.
std::vector<std::pair<DepTree, MergeTrace>> apply_entity_merging(
    const DepTree& tree, const std::vector<EntitySpan>& spans);

// Maximal sets of pairwise non-overlapping spans, as index lists in
// lexicographic order.
std::vector<std::vector<std::size_t>> maximal_disjoint_selections(
    const std::vector<TokenSpan>& spans);

// Re-applies a trace to the tree it was recorded on.
DepTree replay(DepTree tree, const MergeTrace& trace);

}  // namespace lexqa
