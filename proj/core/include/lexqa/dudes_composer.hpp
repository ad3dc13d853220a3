#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "lexqa/dep_tree.hpp"
#include "lexqa/dudes.hpp"
#include "lexqa/lexicon.hpp"

namespace lexqa {

struct ComposeOptions {
  std::size_t max_entries_per_node = 3;
  std::size_t max_entities_per_node = 3;
  // Also try the marked-slot-as-main reading of every property entry.
  bool both_main_sides = true;
};

struct ComposeStats {
  std::size_t finals = 0;
  std::size_t compositions = 0;
  std::size_t pruned = 0;
};

// Atomic DUDES options for one node in enumeration order. nullopt stands
// for "this node contributes nothing".
std::vector<std::optional<Dudes>> node_options(const DepNode& node, const Lexicon& lex,
                                               VarFactory& vars,
                                               const ComposeOptions& opts = {});

// Selection pairs of `host` ordered for filling by the DUDES of `arg_node`:
// marker agreement, then unmarked / deprel-compatible pairs, then the rest.
std::vector<SelectionPair> ranked_pairs(const Dudes& host, const DepTree& tree,
                                        const DepNode& arg_node);

// Depth-first enumeration of final DUDES, bottom-up over the tree. `sink`
// returns false to stop; the function returns false when stopped early.
bool compose_tree(const DepTree& tree, const Lexicon& lex,
                  const std::function<bool(const Dudes&)>& sink,
                  const ComposeOptions& opts = {}, ComposeStats* stats = nullptr);

// Convenience: the first `k` final DUDES.
std::vector<Dudes> first_k(const DepTree& tree, const Lexicon& lex, std::size_t k,
                           const ComposeOptions& opts = {});

}  // namespace lexqa
