#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

struct Token {
  int index = 0;  // 1-based position in the sentence
  std::string surface;
  std::string lemma;
  std::string upos;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class SpecialMark {
  kAskKeyword,
  kComparativeMore,
  kComparativeFewer,
  kPrepositionIn,
  kCountKeyword,
};

std::string_view to_string(SpecialMark m);

// Inclusive range of sentence token indexes.
struct TokenSpan {
  int first = 0;
  int last = 0;
  bool overlaps(const TokenSpan& o) const {
    return first <= o.last && o.first <= last;
  }
  int length() const { return last - first + 1; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

enum class EntitySource { kLabelIndex, kExternalNer };

struct EntityMatch {
  std::string iri;
  std::string matched_label;
  double similarity = 0.0;
  EntitySource source = EntitySource::kLabelIndex;
  TokenSpan span;

  friend bool operator==(const EntityMatch&, const EntityMatch&) = default;
};

struct PropertyMatch {
  std::string entry_id;
  double similarity = 0.0;
  bool exact = false;
  bool marker_matched = false;

  friend bool operator==(const PropertyMatch&, const PropertyMatch&) = default;
};

struct DepNode {
  int id = 0;
  std::vector<Token> tokens;  // always in sentence order
  std::string upos;
  std::string deprel;
  int head = 0;  // 0 = root
  std::optional<double> numeric_value;
  std::vector<EntityMatch> entity_candidates;
  std::vector<PropertyMatch> entry_candidates;
  std::optional<SpecialMark> special_mark;
  // Adposition that introduced this node and was merged into its head by a
  // lexicon marker rule ("of" in "mayor of Moscow", recorded on Moscow).
  std::optional<std::string> case_marker;

  std::string phrase() const;
  std::string lemma_phrase() const;
  std::size_t token_count() const { return tokens.size(); }

  friend bool operator==(const DepNode&, const DepNode&) = default;
};

enum class TreeVariant { kOriginal, kNumerized };

std::string_view to_string(TreeVariant v);

struct DepTree {
  std::vector<DepNode> nodes;  // ordered by id
  int root_id = 0;
  TreeVariant variant = TreeVariant::kOriginal;
  std::string parser_tag = "unknown";
  std::size_t original_node_count = 0;
  std::string text;
  std::string sent_id;

  const DepNode* find(int id) const;
  DepNode* find(int id);
  const DepNode& at(int id) const;
  DepNode& at(int id);

  std::vector<int> children(int id) const;
  int depth(int id) const;
  bool is_ancestor(int ancestor, int node) const;
  // Nodes in post-order (children before parents, siblings by id).
  std::vector<int> post_order() const;
  std::vector<Token> all_tokens() const;
  // Node that owns the sentence token `token_index`, or 0.
  int node_of_token(int token_index) const;

  // Throws StructuralError unless exactly one node has head 0, every head
  // exists and the head links are acyclic.
  void validate() const;

  // Hash over ids, tokens, heads, deprels and the variant.
  std::size_t structural_hash() const;
  bool same_structure(const DepTree& o) const;

  friend bool operator==(const DepTree&, const DepTree&) = default;
};

// Moves `absorbed` into `surviving`: tokens are merged in sentence order,
// entity candidates are unioned, absorbed's children are re-attached to the
// survivor. Throws ContractViolation when absorbed is the root or an
// ancestor of the survivor.
void merge_nodes(DepTree& tree, int absorbed, int surviving);

}  // namespace lexqa
