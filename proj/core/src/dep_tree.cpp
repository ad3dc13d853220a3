#include "lexqa/dep_tree.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lexqa/errors.hpp"

namespace lexqa {

std::string_view to_string(SpecialMark m) {
  switch (m) {
    case SpecialMark::kAskKeyword: return "ask_keyword";
    case SpecialMark::kComparativeMore: return "comparative_more";
    case SpecialMark::kComparativeFewer: return "comparative_fewer";
    case SpecialMark::kPrepositionIn: return "preposition_in";
    case SpecialMark::kCountKeyword: return "count_keyword";
  }
  return "?";
}

std::string_view to_string(TreeVariant v) {
  return v == TreeVariant::kOriginal ? "original" : "numerized";
}

std::string DepNode::phrase() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

std::string DepNode::lemma_phrase() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.lemma.empty() || t.lemma == "_" ? t.surface : t.lemma;
  }
  return out;
}

const DepNode* DepTree::find(int id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const DepNode& n, int v) { return n.id < v; });
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

DepNode* DepTree::find(int id) {
  return const_cast<DepNode*>(std::as_const(*this).find(id));
}

const DepNode& DepTree::at(int id) const {
  const auto* n = find(id);
  if (!n) throw ContractViolation("no node with id " + std::to_string(id));
  return *n;
}

DepNode& DepTree::at(int id) {
  return const_cast<DepNode&>(std::as_const(*this).at(id));
}

std::vector<int> DepTree::children(int id) const {
  std::vector<int> out;
  for (const auto& n : nodes) {
    if (n.head == id && n.id != id) out.push_back(n.id);
  }
  return out;
}

int DepTree::depth(int id) const {
  int d = 0;
  const DepNode* n = find(id);
  while (n && n->head != 0) {
    n = find(n->head);
    if (++d > static_cast<int>(nodes.size())) {
      throw StructuralError("cycle in head links");
    }
  }
  return d;
}

bool DepTree::is_ancestor(int ancestor, int node) const {
  const DepNode* n = find(node);
  std::size_t steps = 0;
  while (n && n->head != 0 && steps++ <= nodes.size()) {
    if (n->head == ancestor) return true;
    n = find(n->head);
  }
  return false;
}

std::vector<int> DepTree::post_order() const {
  std::vector<int> out;
  out.reserve(nodes.size());
  std::function<void(int)> visit = [&](int id) {
    for (int c : children(id)) visit(c);
    out.push_back(id);
  };
  if (find(root_id)) visit(root_id);
  return out;
}

std::vector<Token> DepTree::all_tokens() const {
  std::vector<Token> out;
  for (const auto& n : nodes) out.insert(out.end(), n.tokens.begin(), n.tokens.end());
  std::sort(out.begin(), out.end(),
            [](const Token& a, const Token& b) { return a.index < b.index; });
  return out;
}

int DepTree::node_of_token(int token_index) const {
  for (const auto& n : nodes) {
    for (const auto& t : n.tokens) {
      if (t.index == token_index) return n.id;
    }
  }
  return 0;
}

void DepTree::validate() const {
  const std::string where =
      sent_id.empty() ? "'" + text + "'" : "sentence " + sent_id;
  if (nodes.empty()) throw StructuralError(where + ": empty tree");
  std::set<int> ids;
  int roots = 0;
  for (const auto& n : nodes) {
    if (!ids.insert(n.id).second) {
      throw StructuralError(where + ": duplicate node id " + std::to_string(n.id));
    }
    if (n.tokens.empty()) {
      throw StructuralError(where + ": node " + std::to_string(n.id) + " has no tokens");
    }
    if (n.head == 0) ++roots;
  }
  if (roots != 1) {
    throw StructuralError(where + ": expected exactly one root, found " +
                          std::to_string(roots));
  }
  for (const auto& n : nodes) {
    if (n.head == n.id) {
      throw StructuralError(where + ": node " + std::to_string(n.id) +
                            " is its own head");
    }
    if (n.head != 0 && !ids.count(n.head)) {
      throw StructuralError(where + ": node " + std::to_string(n.id) +
                            " has unknown head " + std::to_string(n.head));
    }
    if (n.head == 0 && n.id != root_id) {
      throw StructuralError(where + ": root id mismatch");
    }
  }
  for (const auto& n : nodes) {
    std::set<int> seen{n.id};
    const DepNode* cur = &n;
    while (cur->head != 0) {
      if (!seen.insert(cur->head).second) {
        throw StructuralError(where + ": cycle through node " +
                              std::to_string(n.id));
      }
      cur = find(cur->head);
    }
  }
}

std::size_t DepTree::structural_hash() const {
  std::size_t h = static_cast<std::size_t>(variant) * 0x9e3779b97f4a7c15ULL;
  const auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  std::hash<std::string> sh;
  for (const auto& n : nodes) {
    mix(static_cast<std::size_t>(n.id));
    mix(static_cast<std::size_t>(n.head));
    mix(sh(n.deprel));
    for (const auto& t : n.tokens) {
      mix(static_cast<std::size_t>(t.index));
      mix(sh(t.surface));
    }
  }
  return h;
}

bool DepTree::same_structure(const DepTree& o) const {
  if (variant != o.variant || nodes.size() != o.nodes.size()) return false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& a = nodes[i];
    const auto& b = o.nodes[i];
    if (a.id != b.id || a.head != b.head || a.deprel != b.deprel ||
        a.upos != b.upos || a.tokens != b.tokens ||
        a.numeric_value != b.numeric_value) {
      return false;
    }
  }
  return true;
}

void merge_nodes(DepTree& tree, int absorbed, int surviving) {
  if (absorbed == surviving) throw ContractViolation("cannot merge a node into itself");
  if (absorbed == tree.root_id) throw ContractViolation("cannot absorb the root node");
  if (tree.is_ancestor(absorbed, surviving)) {
    throw ContractViolation("absorbed node is an ancestor of the survivor");
  }
  DepNode gone = tree.at(absorbed);
  DepNode& keep = tree.at(surviving);
  keep.tokens.insert(keep.tokens.end(), gone.tokens.begin(), gone.tokens.end());
  std::sort(keep.tokens.begin(), keep.tokens.end(),
            [](const Token& a, const Token& b) { return a.index < b.index; });
  for (auto& m : gone.entity_candidates) {
    if (std::find(keep.entity_candidates.begin(), keep.entity_candidates.end(),
                  m) == keep.entity_candidates.end()) {
      keep.entity_candidates.push_back(std::move(m));
    }
  }
  if (!keep.numeric_value) keep.numeric_value = gone.numeric_value;
  if (!keep.special_mark) keep.special_mark = gone.special_mark;
  if (!keep.case_marker) keep.case_marker = gone.case_marker;
  for (auto& n : tree.nodes) {
    if (n.head == absorbed) n.head = surviving;
  }
  std::erase_if(tree.nodes, [absorbed](const DepNode& n) { return n.id == absorbed; });
}

}  // namespace lexqa
