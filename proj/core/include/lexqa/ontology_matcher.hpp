#pragma once

#include <string>
#include <vector>

#include "lexqa/dep_tree.hpp"
#include "lexqa/label_index.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/ner.hpp"

namespace lexqa {

// Relaxed readings of a node's phrase used when the surface has no exact
// lexicon match, in the fixed order: trailing adpositions dropped, leading
// determiners dropped, both, then the lemma forms of each.
struct PhraseVariant {
  std::string text;
  bool relaxed = false;  // false only for the untouched surface phrase
};
std::vector<PhraseVariant> phrase_variants(const DepNode& node);

// Entries reachable from `node` through phrase_variants, each once.
std::vector<const LexicalEntry*> lexicon_candidates(const Lexicon& lex,
                                                    const DepNode& node);

struct EntitySpan {
  TokenSpan span;
  std::vector<EntityMatch> matches;  // ranked
};

struct MatcherOptions {
  double threshold = 0.5;
  std::size_t max_span_tokens = 8;
  std::size_t max_candidates_per_node = 5;
};

struct Diagnostics {
  std::vector<std::string> messages;
};

// Multi-node spans whose text matches a label (or an external entity) and
// whose nodes form a connected fragment of content words. Feeds
// apply_entity_merging.
std::vector<EntitySpan> detect_entity_spans(const LabelIndex& index,
                                            const DepTree& tree,
                                            NerProvider* ner,
                                            const MatcherOptions& opts,
                                            Diagnostics* diag = nullptr);

// Annotates entity_candidates on every node. Idempotent.
DepTree match_entities(const LabelIndex& index, const DepTree& tree,
                       NerProvider* ner, const MatcherOptions& opts = {},
                       Diagnostics* diag = nullptr);

// Annotates entry_candidates on every node with the ranking: marker match
// first, then similarity to canonical form, then entry id.
DepTree match_properties(const Lexicon& lex, const DepTree& tree,
                         const MatcherOptions& opts = {});

// Total order used for ranking entity matches: similarity desc, span length
// desc, label-index before external, IRI asc.
bool entity_match_before(const EntityMatch& a, const EntityMatch& b);

}  // namespace lexqa
