#include "lexqa/ontology_matcher.hpp"

#include <algorithm>
#include <set>

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

namespace {

bool is_determiner(const Token& t) {
  const auto w = text::normalize(t.surface);
  return t.upos == "DET" || w == "the" || w == "a" || w == "an";
}

bool is_function_upos(const std::string& upos) {
  static const std::set<std::string> kFunction = {"ADP", "AUX",   "PRON", "DET",
                                                  "CCONJ", "SCONJ", "PART", "PUNCT"};
  return kFunction.count(upos) > 0;
}

bool is_content_upos(const std::string& upos) {
  return upos == "PROPN" || upos == "NOUN" || upos == "NUM" || upos == "ADJ" ||
         upos == "X" || upos == "SYM";
}

std::string join_tokens(const std::vector<Token>& tokens, bool lemma) {
  std::vector<std::string> words;
  for (const auto& t : tokens) {
    words.push_back(lemma && !t.lemma.empty() && t.lemma != "_" ? t.lemma : t.surface);
  }
  return text::join(words, " ");
}

// Function-word-only nodes ("who", "is", "of") are never linked.
bool linkable(const DepNode& n) {
  if (n.special_mark && *n.special_mark != SpecialMark::kPrepositionIn) return false;
  return std::any_of(n.tokens.begin(), n.tokens.end(),
                     [](const Token& t) { return !is_function_upos(t.upos); });
}

std::string without_leading_determiners(const std::vector<Token>& tokens) {
  std::size_t b = 0;
  while (b < tokens.size() && is_determiner(tokens[b])) ++b;
  return join_tokens({tokens.begin() + static_cast<long>(b), tokens.end()}, false);
}

void add_hits(const LabelIndex& index, const std::string& phrase, TokenSpan span,
              double threshold, std::vector<EntityMatch>& out) {
  if (text::normalize(phrase).empty()) return;
  for (const auto& hit : index.search(phrase, threshold)) {
    out.push_back({hit.iri, hit.label, hit.similarity, EntitySource::kLabelIndex, span});
  }
}

// Keeps the best-ranked match per IRI and sorts.
void dedupe_and_rank(std::vector<EntityMatch>& matches) {
  std::sort(matches.begin(), matches.end(), entity_match_before);
  std::set<std::string> seen;
  std::vector<EntityMatch> out;
  for (auto& m : matches) {
    if (seen.insert(m.iri).second) out.push_back(std::move(m));
  }
  matches = std::move(out);
}

std::vector<ExternalEntity> safe_annotate(NerProvider* ner, const std::string& question,
                                          Diagnostics* diag) {
  if (!ner) return {};
  try {
    return ner->annotate(question);
  } catch (const std::exception& e) {
    if (diag) diag->messages.push_back(std::string("ner provider failed: ") + e.what());
    return {};
  }
}

}  // namespace

bool entity_match_before(const EntityMatch& a, const EntityMatch& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  if (a.span.length() != b.span.length()) return a.span.length() > b.span.length();
  if (a.source != b.source) return a.source == EntitySource::kLabelIndex;
  if (a.iri != b.iri) return a.iri < b.iri;
  if (a.matched_label != b.matched_label) return a.matched_label < b.matched_label;
  return a.span.first < b.span.first;
}

std::vector<PhraseVariant> phrase_variants(const DepNode& node) {
  std::vector<PhraseVariant> out;
  std::set<std::string> seen;
  const auto add = [&](const std::string& s, bool relaxed) {
    auto norm = text::normalize(s);
    if (!norm.empty() && seen.insert(norm).second) out.push_back({norm, relaxed});
  };
  const auto& toks = node.tokens;
  std::size_t e = toks.size();
  while (e > 0 && toks[e - 1].upos == "ADP") --e;
  std::size_t b = 0;
  while (b < toks.size() && is_determiner(toks[b])) ++b;

  const std::vector<Token> full(toks.begin(), toks.end());
  const std::vector<Token> no_adp(toks.begin(), toks.begin() + static_cast<long>(e));
  const std::vector<Token> no_det(toks.begin() + static_cast<long>(b), toks.end());
  std::vector<Token> both;
  if (b < e) both.assign(toks.begin() + static_cast<long>(b), toks.begin() + static_cast<long>(e));

  for (bool lemma : {false, true}) {
    add(join_tokens(full, lemma), lemma);
    add(join_tokens(no_adp, lemma), true);
    add(join_tokens(no_det, lemma), true);
    add(join_tokens(both, lemma), true);
  }
  return out;
}

std::vector<const LexicalEntry*> lexicon_candidates(const Lexicon& lex,
                                                    const DepNode& node) {
  std::vector<const LexicalEntry*> out;
  for (const auto& v : phrase_variants(node)) {
    for (const auto* e : lex.lookup_exact(v.text)) {
      if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
  }
  return out;
}

DepTree match_properties(const Lexicon& lex, const DepTree& tree,
                         const MatcherOptions&) {
  DepTree out = tree;
  for (auto& node : out.nodes) {
    node.entry_candidates.clear();
    if (node.upos == "ADP" || node.upos == "PUNCT") continue;
    std::set<std::string> words;
    for (const auto& t : node.tokens) words.insert(text::normalize(t.surface));
    const auto phrase = node.phrase();

    const auto variants = phrase_variants(node);
    std::vector<const LexicalEntry*> entries;
    bool exact = false;
    if (!variants.empty() && !variants.front().relaxed) {
      entries = lex.lookup_exact(variants.front().text);
      exact = !entries.empty();
    }
    if (!exact) entries = lexicon_candidates(lex, node);

    for (const auto* e : entries) {
      PropertyMatch m;
      m.entry_id = e->id;
      m.exact = exact;
      m.similarity = exact ? 1.0 : text::similarity(phrase, e->canonical_form);
      m.marker_matched = e->marker.has_value() && words.count(text::normalize(*e->marker));
      node.entry_candidates.push_back(m);
    }
    std::sort(node.entry_candidates.begin(), node.entry_candidates.end(),
              [](const PropertyMatch& a, const PropertyMatch& b) {
                if (a.marker_matched != b.marker_matched) return a.marker_matched;
                if (a.similarity != b.similarity) return a.similarity > b.similarity;
                return a.entry_id < b.entry_id;
              });
  }
  return out;
}

std::vector<EntitySpan> detect_entity_spans(const LabelIndex& index, const DepTree& tree,
                                            NerProvider* ner, const MatcherOptions& opts,
                                            Diagnostics* diag) {
  const auto tokens = tree.all_tokens();
  const auto external = safe_annotate(ner, tree.text, diag);
  std::vector<EntitySpan> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j < tokens.size() && j - i + 1 <= opts.max_span_tokens;
         ++j) {
      const TokenSpan span{tokens[i].index, tokens[j].index};
      std::vector<int> ids;
      for (std::size_t k = i; k <= j; ++k) {
        const int id = tree.node_of_token(tokens[k].index);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
      }
      if (ids.size() < 2) continue;
      // Nodes must lie entirely inside the span, be plain words and hang
      // together as one fragment.
      bool ok = true;
      int outside_heads = 0;
      for (int id : ids) {
        const auto& n = tree.at(id);
        if (n.tokens.front().index < span.first || n.tokens.back().index > span.last ||
            n.special_mark) {
          ok = false;
          break;
        }
        if (std::find(ids.begin(), ids.end(), n.head) == ids.end()) ++outside_heads;
      }
      if (!ok || outside_heads != 1) continue;
      if (!is_content_upos(tokens[i].upos) || !is_content_upos(tokens[j].upos)) continue;
      bool content_interior = true;
      for (std::size_t k = i; k <= j; ++k) {
        const auto& u = tokens[k].upos;
        if (u == "VERB" || u == "AUX" || u == "PRON" || u == "PUNCT" || u == "SCONJ") {
          content_interior = false;
        }
      }
      if (!content_interior) continue;

      std::vector<Token> covered(tokens.begin() + static_cast<long>(i),
                                 tokens.begin() + static_cast<long>(j) + 1);
      const auto phrase = join_tokens(covered, false);
      EntitySpan es{span, {}};
      add_hits(index, phrase, span, opts.threshold, es.matches);
      for (const auto& x : external) {
        if (text::normalize(x.surface) == text::normalize(phrase)) {
          es.matches.push_back({x.iri, text::normalize(x.surface), x.confidence,
                                EntitySource::kExternalNer, span});
        }
      }
      if (es.matches.empty()) continue;
      dedupe_and_rank(es.matches);
      if (es.matches.size() > opts.max_candidates_per_node) {
        es.matches.resize(opts.max_candidates_per_node);
      }
      out.push_back(std::move(es));
    }
  }
  return out;
}

DepTree match_entities(const LabelIndex& index, const DepTree& tree, NerProvider* ner,
                       const MatcherOptions& opts, Diagnostics* diag) {
  DepTree out = tree;
  const auto external = safe_annotate(ner, tree.text, diag);
  for (auto& node : out.nodes) {
    if (!linkable(node)) continue;
    const TokenSpan span{node.tokens.front().index, node.tokens.back().index};
    std::vector<EntityMatch> matches = node.entity_candidates;
    const auto phrase = node.phrase();
    add_hits(index, phrase, span, opts.threshold, matches);
    const auto trimmed = without_leading_determiners(node.tokens);
    if (text::normalize(trimmed) != text::normalize(phrase)) {
      add_hits(index, trimmed, span, opts.threshold, matches);
    }
    for (const auto& x : external) {
      const auto surface = text::normalize(x.surface);
      if (surface == text::normalize(phrase) || surface == text::normalize(trimmed)) {
        matches.push_back({x.iri, surface, x.confidence, EntitySource::kExternalNer, span});
      }
    }
    dedupe_and_rank(matches);
    if (matches.size() > opts.max_candidates_per_node) {
      matches.resize(opts.max_candidates_per_node);
    }
    node.entity_candidates = std::move(matches);
  }
  return out;
}

}  // namespace lexqa
