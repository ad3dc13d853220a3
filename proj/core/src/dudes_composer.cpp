#include "lexqa/dudes_composer.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <set>

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

namespace {

std::string base_rel(const std::string& deprel) {
  return deprel.substr(0, deprel.find(':'));
}

bool is_modifier(const DepNode& n) {
  static const std::set<std::string> kModifiers = {"amod", "advmod", "nummod",
                                                   "acl", "advcl", "obl:npmod"};
  return kModifiers.count(n.deprel) || kModifiers.count(base_rel(n.deprel));
}

// Marker the argument node arrived with: recorded by the marker rule or
// still present as an adposition child.
std::optional<std::string> arg_marker(const DepTree& tree, const DepNode& n) {
  if (n.case_marker) return n.case_marker;
  for (int c : tree.children(n.id)) {
    const auto& child = tree.at(c);
    if (child.upos == "ADP") return text::normalize(child.phrase());
  }
  return std::nullopt;
}

// Whether a pair slot suits the grammatical function of the argument: the
// first pair is the complement slot, the second the head/subject slot.
int deprel_fit(const DepNode& arg, std::size_t pair_index) {
  const auto rel = base_rel(arg.deprel);
  const bool complement = rel == "obj" || rel == "obl" || rel == "nmod" ||
                          rel == "iobj" || rel == "xcomp";
  const bool subject = rel == "nsubj" || rel == "csubj";
  if (complement) return pair_index == 0 ? 0 : 1;
  if (subject) return pair_index == 0 ? 1 : 0;
  return 0;
}

bool final_ok(const Dudes& d) { return !d.hint_only(); }

// Union of a hint-only DUDES with any other.
Dudes with_hints(const Dudes& hints, const Dudes& other) {
  Dudes out = other;
  for (const auto& c : hints.conditions) {
    if (std::find(out.conditions.begin(), out.conditions.end(), c) == out.conditions.end()) {
      out.conditions.push_back(c);
    }
  }
  return out;
}

class Enumerator {
 public:
  Enumerator(const DepTree& tree, const Lexicon& lex, const ComposeOptions& opts,
             ComposeStats* stats)
      : tree_(tree), stats_(stats) {
    // Options are built once so every branch sees the same variables and
    // universes of different nodes stay disjoint.
    for (const auto& n : tree.nodes) options_.emplace(n.id, node_options(n, lex, vars_, opts));
  }

  bool run(const std::function<bool(const Dudes&)>& sink) {
    return subtree(tree_.root_id, [&](const std::optional<Dudes>& d) {
      if (!d || !final_ok(*d)) {
        if (stats_) ++stats_->pruned;
        return true;
      }
      if (stats_) ++stats_->finals;
      return sink(*d);
    });
  }

 private:
  using Cont = std::function<bool(const std::optional<Dudes>&)>;

  bool subtree(int id, const Cont& k) {
    const auto children = tree_.children(id);
    for (const auto& opt : options_.at(id)) {
      if (!fold(id, children, 0, opt, opt.has_value(), k)) return false;
    }
    return true;
  }

  // Folds children[i..] into `acc`. `acc_is_node` says whether acc holds
  // the node's own DUDES (children are its arguments) or a sibling fold.
  bool fold(int id, const std::vector<int>& children, std::size_t i,
            const std::optional<Dudes>& acc, bool acc_is_node, const Cont& k) {
    if (i == children.size()) return k(acc);
    const int child_id = children[i];
    return subtree(child_id, [&](const std::optional<Dudes>& child) {
      if (!child) return fold(id, children, i + 1, acc, acc_is_node, k);
      if (!acc) return fold(id, children, i + 1, child, false, k);
      const auto combos = combine(*acc, *child, tree_.at(child_id), acc_is_node);
      if (combos.empty() && stats_) ++stats_->pruned;
      for (const auto& d : combos) {
        if (!fold(id, children, i + 1, d, acc_is_node, k)) return false;
      }
      return true;
    });
  }

  std::vector<Dudes> combine(const Dudes& parent, const Dudes& child,
                             const DepNode& child_node, bool parent_is_node) {
    std::vector<Dudes> out;
    if (parent.hint_only() || child.hint_only()) {
      out.push_back(parent.hint_only() ? with_hints(parent, child) : with_hints(child, parent));
      return out;
    }
    std::vector<Dudes> down;  // child fills a slot of the parent
    if (child.main) {
      for (const auto& p : ranked_pairs(parent, tree_, child_node)) {
        down.push_back(compose(child, parent, p));
      }
    }
    std::vector<Dudes> up;  // parent fills a slot of the child
    if (parent.main) {
      for (const auto& p : child.pairs) {
        up.push_back(compose(parent, child, p));
      }
    }
    const bool up_first = parent_is_node && is_modifier(child_node);
    auto& first = up_first ? up : down;
    auto& second = up_first ? down : up;
    for (auto& d : first) out.push_back(std::move(d));
    for (auto& d : second) out.push_back(std::move(d));
    if (stats_) stats_->compositions += out.size();
    return out;
  }

  const DepTree& tree_;
  ComposeStats* stats_;
  VarFactory vars_;
  std::map<int, std::vector<std::optional<Dudes>>> options_;
};

}  // namespace

std::vector<std::optional<Dudes>> node_options(const DepNode& node, const Lexicon& lex,
                                               VarFactory& vars,
                                               const ComposeOptions& opts) {
  std::vector<std::optional<Dudes>> out;
  if (node.special_mark) {
    switch (*node.special_mark) {
      case SpecialMark::kAskKeyword:
        out.push_back(ask_dudes());
        return out;
      case SpecialMark::kCountKeyword:
        out.push_back(count_dudes(vars));
        return out;
      case SpecialMark::kComparativeMore:
      case SpecialMark::kComparativeFewer:
        if (node.numeric_value) {
          out.push_back(comparison_dudes(
              vars,
              *node.special_mark == SpecialMark::kComparativeMore ? CmpOp::kGt : CmpOp::kLt,
              *node.numeric_value));
          return out;
        }
        break;
      case SpecialMark::kPrepositionIn:
        break;
    }
  }
  if (node.numeric_value) {
    out.push_back(entity_dudes(vars, Term::number(*node.numeric_value)));
  }

  bool exact_property = false;
  std::vector<std::optional<Dudes>> properties;
  std::size_t used = 0;
  for (const auto& m : node.entry_candidates) {
    if (used == opts.max_entries_per_node) break;
    const auto* e = lex.find(m.entry_id);
    if (!e) continue;
    ++used;
    exact_property = exact_property || m.exact;
    if (e->frame == Frame::kAdjectiveSuperlative) {
      properties.push_back(superlative_dudes(vars, *e));
    } else if (e->denotes_class()) {
      properties.push_back(class_dudes(vars, *e));
    } else {
      properties.push_back(property_dudes(vars, *e, MainSide::kHead));
      if (opts.both_main_sides) properties.push_back(property_dudes(vars, *e, MainSide::kMarked));
    }
  }

  std::vector<std::optional<Dudes>> exact_entities;
  std::vector<std::optional<Dudes>> fuzzy_entities;
  std::size_t entities = 0;
  for (const auto& m : node.entity_candidates) {
    if (entities++ == opts.max_entities_per_node) break;
    auto d = entity_dudes(vars, Term::iri(m.iri));
    const bool exact = m.similarity >= 1.0 || m.source == EntitySource::kExternalNer;
    (exact ? exact_entities : fuzzy_entities).push_back(std::move(d));
  }

  const auto append = [&out](std::vector<std::optional<Dudes>>& v) {
    for (auto& d : v) out.push_back(std::move(d));
  };
  if (exact_property) {
    append(properties);
    append(exact_entities);
  } else {
    append(exact_entities);
    append(properties);
  }
  append(fuzzy_entities);
  if (exact_entities.empty() && !exact_property) out.push_back(std::nullopt);
  return out;
}

std::vector<SelectionPair> ranked_pairs(const Dudes& host, const DepTree& tree,
                                        const DepNode& arg_node) {
  const auto marker = arg_marker(tree, arg_node);
  std::vector<std::pair<std::tuple<int, int, std::size_t>, SelectionPair>> ranked;
  for (std::size_t i = 0; i < host.pairs.size(); ++i) {
    const auto& p = host.pairs[i];
    int tier;
    if (p.marker && marker && text::normalize(*p.marker) == *marker) {
      tier = 0;
    } else if (!p.marker) {
      tier = 1;
    } else {
      tier = 2;
    }
    ranked.push_back({{tier, deprel_fit(arg_node, i), i}, p});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SelectionPair> out;
  for (auto& [key, p] : ranked) out.push_back(std::move(p));
  return out;
}

bool compose_tree(const DepTree& tree, const Lexicon& lex,
                  const std::function<bool(const Dudes&)>& sink,
                  const ComposeOptions& opts, ComposeStats* stats) {
  if (tree.nodes.empty()) return true;
  Enumerator e(tree, lex, opts, stats);
  return e.run(sink);
}

std::vector<Dudes> first_k(const DepTree& tree, const Lexicon& lex, std::size_t k,
                           const ComposeOptions& opts) {
  std::vector<Dudes> out;
  if (k == 0) return out;
  compose_tree(
      tree, lex,
      [&](const Dudes& d) {
        out.push_back(d);
        return out.size() < k;
      },
      opts);
  return out;
}

}  // namespace lexqa
