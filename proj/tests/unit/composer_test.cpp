#include <gtest/gtest.h>

#include <set>

#include "lexqa/dudes_composer.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/pipeline.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

DepNode word(int id, int head, const std::string& w, const std::string& upos,
             const std::string& deprel) {
  DepNode n;
  n.id = id;
  n.head = head;
  n.upos = upos;
  n.deprel = deprel;
  n.tokens.push_back({id, w, w, upos});
  return n;
}

EntityMatch exact_entity(const std::string& iri, int tok) {
  return {iri, "x", 1.0, EntitySource::kLabelIndex, {tok, tok}};
}

class ComposerTest : public ::testing::Test {
 protected:
  Lexicon lex_ = load_lexicon(oracle::toy_dir() / "lexicon.json");
};

TEST_F(ComposerTest, SingleEntityNode) {
  DepTree t;
  t.nodes.push_back(word(1, 0, "Moscow", "PROPN", "root"));
  t.nodes[0].entity_candidates.push_back(exact_entity("http://dbpedia.org/resource/Moscow", 1));
  t.root_id = 1;
  t.original_node_count = 1;
  std::vector<Dudes> all;
  compose_tree(t, lex_, [&](const Dudes& d) {
    all.push_back(d);
    return true;
  });
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(canonical_text(all[0]), "main=v0 U={v0} C={v0=dbr:Moscow} S=[]");
}

TEST_F(ComposerTest, CartesianProductOfCandidates) {
  DepTree t;
  t.nodes.push_back(word(1, 0, "most", "ADJ", "root"));
  t.nodes.push_back(word(2, 1, "thing", "PROPN", "nmod"));
  for (const char* id : {"highest", "largest", "smallest"}) {
    t.nodes[0].entry_candidates.push_back({id, 1.0, true, false});
  }
  t.nodes[1].entity_candidates = {exact_entity("http://ex.org/a", 2),
                                  exact_entity("http://ex.org/b", 2)};
  t.root_id = 1;
  t.original_node_count = 2;

  ComposeStats stats;
  std::set<std::string> texts;
  std::size_t n = 0;
  compose_tree(
      t, lex_,
      [&](const Dudes& d) {
        ++n;
        texts.insert(canonical_text(d));
        return true;
      },
      {}, &stats);
  EXPECT_EQ(n, 3u * 2u);
  EXPECT_EQ(texts.size(), 6u);
  EXPECT_EQ(stats.finals, 6u);
}

TEST_F(ComposerTest, StopsEarly) {
  DepTree t;
  t.nodes.push_back(word(1, 0, "most", "ADJ", "root"));
  t.nodes.push_back(word(2, 1, "thing", "PROPN", "nmod"));
  for (const char* id : {"highest", "largest", "smallest"}) {
    t.nodes[0].entry_candidates.push_back({id, 1.0, true, false});
  }
  t.nodes[1].entity_candidates = {exact_entity("http://ex.org/a", 2),
                                  exact_entity("http://ex.org/b", 2)};
  t.root_id = 1;
  t.original_node_count = 2;
  ComposeStats stats;
  const bool finished = compose_tree(t, lex_, [](const Dudes&) { return false; }, {}, &stats);
  EXPECT_FALSE(finished);
  EXPECT_EQ(stats.finals, 1u);
  EXPECT_EQ(stats.compositions, 1u);
  EXPECT_EQ(first_k(t, lex_, 4).size(), 4u);
  EXPECT_TRUE(first_k(t, lex_, 0).empty());
}

TEST_F(ComposerTest, EnumerationIsDeterministic) {
  auto cfg = PipelineConfig::load(oracle::toy_dir() / "config.json");
  Pipeline p(cfg);
  const std::string q = "Who is the mayor of the capital of Russia?";
  const auto trees = p.prepare(q, p.parses_for(q));
  ASSERT_FALSE(trees.empty());
  std::vector<std::string> a;
  std::vector<std::string> b;
  for (const auto& d : first_k(trees[0].tree, p.lexicon(), 50)) a.push_back(canonical_text(d));
  for (const auto& d : first_k(trees[0].tree, p.lexicon(), 50)) b.push_back(canonical_text(d));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST_F(ComposerTest, BirthNameQuestionFirstDudes) {
  auto cfg = PipelineConfig::load(oracle::toy_dir() / "config.json");
  Pipeline p(cfg);
  const std::string q = "What is the birth name of Angela Merkel?";
  const auto trees = p.prepare(q, p.parses_for(q));
  ASSERT_FALSE(trees.empty());
  const auto first = first_k(trees[0].tree, p.lexicon(), 1);
  ASSERT_EQ(first.size(), 1u);
  const auto& d = first[0];
  ASSERT_TRUE(d.main.has_value());
  // birthName(z, main) with z bound to Merkel and main otherwise free.
  bool atom = false;
  bool bound = false;
  Var z{};
  for (const auto& c : d.conditions) {
    if (const auto* a = std::get_if<PropertyAtom>(&c)) {
      if (a->pred == "http://dbpedia.org/ontology/birthName" &&
          std::get<Var>(a->obj) == *d.main) {
        atom = true;
        z = std::get<Var>(a->subj);
      }
    }
  }
  for (const auto& c : d.conditions) {
    if (const auto* e = std::get_if<Equality>(&c)) {
      bound = bound || (e->v == z && e->t.value == "http://dbpedia.org/resource/Angela_Merkel");
      EXPECT_NE(e->v, *d.main);
    }
  }
  EXPECT_TRUE(atom);
  EXPECT_TRUE(bound);
}

TEST_F(ComposerTest, RankedPairsPreferMarker) {
  VarFactory vars;
  const auto host = property_dudes(vars, *lex_.find("mayor"));
  DepTree t;
  t.nodes.push_back(word(1, 0, "mayor", "NOUN", "root"));
  t.nodes.push_back(word(2, 1, "Moscow", "PROPN", "nmod"));
  t.nodes[1].case_marker = "of";
  t.root_id = 1;
  auto ranked = ranked_pairs(host, t, t.at(2));
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0], host.pairs[0]);

  t.at(2).case_marker.reset();
  t.at(2).deprel = "nsubj";
  ranked = ranked_pairs(host, t, t.at(2));
  EXPECT_EQ(ranked[0], host.pairs[1]);
}

TEST_F(ComposerTest, UnmatchedNodeContributesNothing) {
  VarFactory vars;
  const auto opts = node_options(word(1, 0, "who", "PRON", "nsubj"), lex_, vars);
  ASSERT_EQ(opts.size(), 1u);
  EXPECT_FALSE(opts[0].has_value());
}

}  // namespace
}  // namespace lexqa
