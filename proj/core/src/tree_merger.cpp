#include "lexqa/tree_merger.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

namespace {

constexpr const char* kPunct = "punct";
constexpr const char* kFixed = "fixed";
constexpr const char* kCompound = "compound";
constexpr const char* kDet = "det";
constexpr const char* kHowMany = "how_many";
constexpr const char* kComparativeMore = "comparative_more";
constexpr const char* kComparativeFewer = "comparative_fewer";
constexpr const char* kAmodCovered = "amod_lexicon";
constexpr const char* kMarkAsk = "mark_ask";
constexpr const char* kMarkIn = "mark_in";
constexpr const char* kMarker = "lexicon_marker";
constexpr const char* kEntity = "entity_merging";

std::string base_rel(const std::string& deprel) {
  return deprel.substr(0, deprel.find(':'));
}

bool is_punct(const DepNode& n) {
  return n.upos == "PUNCT" || base_rel(n.deprel) == "punct";
}

std::string lower_phrase(const DepNode& n) { return text::normalize(n.phrase()); }

bool is_comparative_word(const std::string& w, bool& more) {
  if (w == "more" || w == "more than" || w == "greater than") {
    more = true;
    return true;
  }
  if (w == "fewer" || w == "less" || w == "fewer than" || w == "less than") {
    more = false;
    return true;
  }
  return false;
}

void drop_node(DepTree& tree, int id) {
  const int head = tree.at(id).head;
  for (auto& n : tree.nodes) {
    if (n.head == id) n.head = head;
  }
  std::erase_if(tree.nodes, [id](const DepNode& n) { return n.id == id; });
}

// Marker adposition `adp` moves into `node`; the nominal it introduced
// remembers the marker for selection-pair choice.
void merge_marker(DepTree& tree, int adp, int node) {
  const auto marker = lower_phrase(tree.at(adp));
  const int adp_head = tree.at(adp).head;
  if (adp_head == node) {
    for (int c : tree.children(adp)) tree.at(c).case_marker = marker;
  } else {
    tree.at(adp_head).case_marker = marker;
  }
  tree.at(adp).special_mark.reset();
  merge_nodes(tree, adp, node);
}

bool phrase_is_lexicon_form(const Lexicon& lex, const DepNode& a,
                            const DepNode& b) {
  DepNode joined = b;
  joined.tokens.insert(joined.tokens.end(), a.tokens.begin(), a.tokens.end());
  std::sort(joined.tokens.begin(), joined.tokens.end(),
            [](const Token& x, const Token& y) { return x.index < y.index; });
  return !lex.lookup_exact(joined.phrase()).empty() ||
         !lex.lookup_exact(joined.lemma_phrase()).empty();
}

// First applicable generic merge, or nullopt at fixpoint.
std::optional<MergeStep> next_generic(const DepTree& tree, const Lexicon* lex) {
  for (const auto& n : tree.nodes) {
    if (n.head != 0 && is_punct(n)) return MergeStep{kPunct, n.id, n.head};
  }
  for (const char* rel : {kFixed, kCompound, kDet}) {
    for (const auto& n : tree.nodes) {
      if (n.head != 0 && base_rel(n.deprel) == rel && tree.children(n.id).empty()) {
        return MergeStep{rel, n.id, n.head};
      }
    }
  }
  for (const auto& n : tree.nodes) {
    const auto w = lower_phrase(n);
    if (n.head != 0 && w == "how") {
      const auto head = lower_phrase(tree.at(n.head));
      if (head == "many" || head == "much") return MergeStep{kHowMany, n.id, n.head};
    }
  }
  for (const auto& n : tree.nodes) {
    bool more = false;
    if (n.head != 0 && !n.special_mark && is_comparative_word(lower_phrase(n), more) &&
        tree.children(n.id).empty()) {
      return MergeStep{more ? kComparativeMore : kComparativeFewer, n.id, n.head};
    }
  }
  if (lex) {
    for (const auto& n : tree.nodes) {
      if (n.head != 0 && base_rel(n.deprel) == "amod" && tree.children(n.id).empty() &&
          phrase_is_lexicon_form(*lex, n, tree.at(n.head))) {
        return MergeStep{kAmodCovered, n.id, n.head};
      }
    }
  }
  return std::nullopt;
}

std::vector<MergeStep> special_annotations(const DepTree& tree) {
  std::vector<MergeStep> out;
  const auto tokens = tree.all_tokens();
  if (!tokens.empty()) {
    const auto& first = tokens.front();
    const auto lemma = text::normalize(first.lemma.empty() ? first.surface : first.lemma);
    const bool aux_like = first.upos == "AUX" ||
                          (first.upos == "VERB" &&
                           (lemma == "be" || lemma == "do" || lemma == "have"));
    if (aux_like) {
      const int id = tree.node_of_token(first.index);
      if (id && !tree.at(id).special_mark) out.push_back({kMarkAsk, 0, id});
    }
  }
  for (const auto& n : tree.nodes) {
    if (n.upos == "ADP" && lower_phrase(n) == "in" && !n.special_mark) {
      out.push_back({kMarkIn, 0, n.id});
    }
  }
  return out;
}

void apply_step(DepTree& tree, const MergeStep& s) {
  if (s.rule == kMarkAsk) {
    tree.at(s.surviving).special_mark = SpecialMark::kAskKeyword;
  } else if (s.rule == kMarkIn) {
    tree.at(s.surviving).special_mark = SpecialMark::kPrepositionIn;
  } else if (s.rule == kPunct) {
    drop_node(tree, s.absorbed);
  } else if (s.rule == kMarker) {
    merge_marker(tree, s.absorbed, s.surviving);
  } else {
    merge_nodes(tree, s.absorbed, s.surviving);
    if (s.rule == kHowMany) {
      tree.at(s.surviving).special_mark = SpecialMark::kCountKeyword;
    } else if (s.rule == kComparativeMore) {
      tree.at(s.surviving).special_mark = SpecialMark::kComparativeMore;
    } else if (s.rule == kComparativeFewer) {
      tree.at(s.surviving).special_mark = SpecialMark::kComparativeFewer;
    }
  }
}

}  // namespace

std::string MergeTrace::to_json_lines() const {
  std::string out;
  for (const auto& s : steps) {
    out += nlohmann::json{{"rule", s.rule}, {"absorbed", s.absorbed},
                          {"surviving", s.surviving}}
               .dump();
    out += "\n";
  }
  return out;
}

const std::vector<MergeRule>& merge_rules() {
  static const std::vector<MergeRule> kRules = {
      {kPunct, MergeRuleKind::kGeneric},
      {kFixed, MergeRuleKind::kGeneric},
      {kCompound, MergeRuleKind::kGeneric},
      {kDet, MergeRuleKind::kGeneric},
      {kHowMany, MergeRuleKind::kGeneric},
      {kComparativeMore, MergeRuleKind::kGeneric},
      {kComparativeFewer, MergeRuleKind::kGeneric},
      {kAmodCovered, MergeRuleKind::kGeneric},
      {kMarker, MergeRuleKind::kLexiconMarker},
      {kEntity, MergeRuleKind::kEntityMerging},
  };
  return kRules;
}

std::pair<DepTree, MergeTrace> apply_generic_rules(const DepTree& tree,
                                                   const Lexicon* lex) {
  DepTree out = tree;
  MergeTrace trace;
  while (auto step = next_generic(out, lex)) {
    apply_step(out, *step);
    trace.steps.push_back(*step);
  }
  for (const auto& s : special_annotations(out)) {
    apply_step(out, s);
    trace.steps.push_back(s);
  }
  return {std::move(out), std::move(trace)};
}

std::pair<DepTree, MergeTrace> apply_marker_rules(const DepTree& tree,
                                                  const Lexicon& lex) {
  DepTree out = tree;
  MergeTrace trace;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& node : out.nodes) {
      if (node.upos == "ADP") continue;
      std::set<std::string> markers;
      for (const auto* e : lexicon_candidates(lex, node)) {
        if (e->marker) markers.insert(text::normalize(*e->marker));
      }
      if (markers.empty()) continue;
      std::set<std::string> present;
      for (const auto& t : node.tokens) present.insert(text::normalize(t.surface));
      std::optional<int> adp;
      for (int c : out.children(node.id)) {
        const auto& child = out.at(c);
        const auto phrase = lower_phrase(child);
        if (child.upos == "ADP" && markers.count(phrase) && !present.count(phrase)) {
          adp = c;
          break;
        }
        for (int g : out.children(c)) {
          const auto& gc = out.at(g);
          const auto gp = lower_phrase(gc);
          if (gc.upos == "ADP" && base_rel(gc.deprel) == "case" &&
              out.children(g).empty() && markers.count(gp) && !present.count(gp)) {
            adp = g;
            break;
          }
        }
        if (adp) break;
      }
      if (adp) {
        const MergeStep step{kMarker, *adp, node.id};
        apply_step(out, step);
        trace.steps.push_back(step);
        changed = true;
        break;
      }
    }
  }
  return {std::move(out), std::move(trace)};
}

std::vector<std::vector<std::size_t>> maximal_disjoint_selections(
    const std::vector<TokenSpan>& spans) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  const std::size_t n = spans.size();
  const auto compatible = [&](std::size_t i) {
    return std::none_of(current.begin(), current.end(),
                        [&](std::size_t j) { return spans[i].overlaps(spans[j]); });
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      for (std::size_t k = 0; k < n; ++k) {
        if (std::find(current.begin(), current.end(), k) == current.end() &&
            compatible(k)) {
          return;  // not maximal
        }
      }
      out.push_back(current);
      return;
    }
    if (compatible(i)) {
      current.push_back(i);
      rec(i + 1);
      current.pop_back();
    }
    rec(i + 1);
  };
  rec(0);
  return out;
}

std::vector<std::pair<DepTree, MergeTrace>> apply_entity_merging(
    const DepTree& tree, const std::vector<EntitySpan>& spans) {
  std::vector<EntitySpan> multi;
  for (const auto& s : spans) {
    std::set<int> owners;
    for (int t = s.span.first; t <= s.span.last; ++t) {
      if (int id = tree.node_of_token(t)) owners.insert(id);
    }
    if (owners.size() >= 2) multi.push_back(s);
  }
  if (multi.empty()) return {{tree, MergeTrace{}}};

  std::vector<TokenSpan> ranges;
  for (const auto& s : multi) ranges.push_back(s.span);
  std::vector<std::pair<DepTree, MergeTrace>> out;
  for (const auto& selection : maximal_disjoint_selections(ranges)) {
    DepTree t = tree;
    MergeTrace trace;
    for (std::size_t idx : selection) {
      const auto& s = multi[idx];
      std::vector<int> ids;
      for (int tok = s.span.first; tok <= s.span.last; ++tok) {
        const int id = t.node_of_token(tok);
        if (id && std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
      }
      const int survivor = *std::min_element(ids.begin(), ids.end(), [&](int a, int b) {
        const int da = t.depth(a);
        const int db = t.depth(b);
        return da != db ? da < db : a < b;
      });
      for (int id : ids) {
        if (id == survivor) continue;
        merge_nodes(t, id, survivor);
        trace.steps.push_back({kEntity, id, survivor});
      }
      auto& node = t.at(survivor);
      for (const auto& m : s.matches) {
        if (std::find(node.entity_candidates.begin(), node.entity_candidates.end(), m) ==
            node.entity_candidates.end()) {
          node.entity_candidates.push_back(m);
        }
      }
    }
    out.emplace_back(std::move(t), std::move(trace));
  }
  return out;
}

DepTree replay(DepTree tree, const MergeTrace& trace) {
  for (const auto& s : trace.steps) apply_step(tree, s);
  return tree;
}

}  // namespace lexqa
