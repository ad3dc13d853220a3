#include <gtest/gtest.h>

#include <stdexcept>

#include "lexqa/conllu.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/ner.hpp"
#include "lexqa/ontology_matcher.hpp"
#include "lexqa/tree_merger.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

DepTree tree_of(const char* conllu) { return parse_conllu(conllu).at(0); }

class ThrowingNer : public NerProvider {
 public:
  std::vector<ExternalEntity> annotate(const std::string&) override {
    throw std::runtime_error("service down");
  }
};

const char* kNewYork =
    "# text = Who lives in New York?\n"
    "1\tWho\twho\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tlives\tlive\tVERB\t_\t_\t0\troot\t_\t_\n"
    "3\tin\tin\tADP\t_\t_\t5\tcase\t_\t_\n"
    "4\tNew\tNew\tPROPN\t_\t_\t5\tcompound\t_\t_\n"
    "5\tYork\tYork\tPROPN\t_\t_\t2\tobl\t_\t_\n";

TEST(EntityMatching, IdentityAndFuzzy) {
  const auto idx = LabelIndex::build({{"http://ex.org/Angela_Merkel", "Angela Merkel"},
                                      {"http://ex.org/Merkle", "Merkle"}});
  const auto t = match_entities(idx, tree_of("1\tMerkel\tMerkel\tPROPN\t_\t_\t0\troot\t_\t_\n"),
                                nullptr);
  ASSERT_EQ(t.at(1).entity_candidates.size(), 1u);
  EXPECT_NEAR(t.at(1).entity_candidates[0].similarity, 1.0 - 2.0 / 6.0, 1e-12);

  const auto t2 = match_entities(
      idx, tree_of("1\tAngela\tAngela\tPROPN\t_\t_\t2\tflat\t_\t_\n"
                   "2\tMerkel\tMerkel\tPROPN\t_\t_\t0\troot\t_\t_\n"),
      nullptr);
  const auto spans = detect_entity_spans(
      idx, tree_of("1\tAngela\tAngela\tPROPN\t_\t_\t2\tflat\t_\t_\n"
                   "2\tMerkel\tMerkel\tPROPN\t_\t_\t0\troot\t_\t_\n"),
      nullptr, {});
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].matches.front().iri, "http://ex.org/Angela_Merkel");
  EXPECT_EQ(spans[0].matches.front().similarity, 1.0);
  (void)t2;
}

TEST(EntityMatching, LongerSpanRankedFirst) {
  const auto idx = LabelIndex::build({{"http://ex.org/York", "York"},
                                      {"http://ex.org/New_York", "New York"}});
  auto tree = apply_generic_rules(tree_of(kNewYork)).first;
  // "New York" is one node after compound absorption; both labels hit.
  tree = match_entities(idx, tree, nullptr);
  const auto& c = tree.at(5).entity_candidates;
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c.front().iri, "http://ex.org/New_York");

  const EntityMatch york{"http://ex.org/York", "york", 1.0, EntitySource::kLabelIndex, {5, 5}};
  const EntityMatch new_york{"http://ex.org/New_York", "new york", 1.0,
                             EntitySource::kLabelIndex, {4, 5}};
  EXPECT_TRUE(entity_match_before(new_york, york));
  EXPECT_FALSE(entity_match_before(york, new_york));
}

TEST(EntityMatching, ExternalProviderAppendsAndDedupes) {
  const auto idx = LabelIndex::build({{"http://ex.org/Moscow", "Moscow"}});
  FixtureNerProvider ner({{"Where is Moscow?",
                           {{"http://ex.org/Moscow", "Moscow", 0.8},
                            {"http://ex.org/Moskva", "Moscow", 0.7}}}});
  auto t = tree_of("# text = Where is Moscow?\n"
                   "1\tWhere\twhere\tADV\t_\t_\t3\tadvmod\t_\t_\n"
                   "2\tis\tbe\tAUX\t_\t_\t3\tcop\t_\t_\n"
                   "3\tMoscow\tMoscow\tPROPN\t_\t_\t0\troot\t_\t_\n");
  t = match_entities(idx, t, &ner);
  const auto& c = t.at(3).entity_candidates;
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].iri, "http://ex.org/Moscow");
  EXPECT_EQ(c[0].source, EntitySource::kLabelIndex);
  EXPECT_EQ(c[1].source, EntitySource::kExternalNer);
  EXPECT_EQ(match_entities(idx, t, &ner), t);
}

TEST(EntityMatching, ProviderFailureIsDiagnostic) {
  const auto idx = LabelIndex::build({{"http://ex.org/Moscow", "Moscow"}});
  ThrowingNer ner;
  Diagnostics diag;
  const auto t =
      match_entities(idx, tree_of("1\tMoscow\tMoscow\tPROPN\t_\t_\t0\troot\t_\t_\n"), &ner, {},
                     &diag);
  EXPECT_EQ(t.at(1).entity_candidates.size(), 1u);
  ASSERT_EQ(diag.messages.size(), 1u);
  EXPECT_NE(diag.messages[0].find("service down"), std::string::npos);
}

TEST(PropertyMatching, ExactAndMarkerHeuristics) {
  const auto lex = load_lexicon(oracle::toy_dir() / "lexicon.json");
  auto t = tree_of(
      "1\tbirth\tbirth\tNOUN\t_\t_\t2\tcompound\t_\t_\n"
      "2\tname\tname\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "3\tof\tof\tADP\t_\t_\t4\tcase\t_\t_\n"
      "4\tMerkel\tMerkel\tPROPN\t_\t_\t2\tnmod\t_\t_\n");
  t = apply_generic_rules(t, &lex).first;
  t = apply_marker_rules(t, lex).first;
  t = match_properties(lex, t);
  const auto& c = t.at(2).entry_candidates;
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0].entry_id, "birth_name");
  EXPECT_TRUE(c[0].marker_matched);
  EXPECT_FALSE(c[0].exact);

  auto mayor = match_properties(lex, tree_of("1\tmayor\tmayor\tNOUN\t_\t_\t0\troot\t_\t_\n"));
  ASSERT_FALSE(mayor.at(1).entry_candidates.empty());
  EXPECT_TRUE(mayor.at(1).entry_candidates[0].exact);
  EXPECT_EQ(mayor.at(1).entry_candidates[0].similarity, 1.0);
  EXPECT_EQ(lex.find(mayor.at(1).entry_candidates[0].entry_id)->reference,
            "http://dbpedia.org/ontology/leaderName");

  const auto none = match_properties(lex, tree_of("1\txyzq\txyzq\tX\t_\t_\t0\troot\t_\t_\n"));
  EXPECT_TRUE(none.at(1).entry_candidates.empty());
}

TEST(PropertyMatching, LemmaVariant) {
  const auto lex = parse_lexicon(R"({"entries":[{"id":"write","canonicalForm":"write",
    "otherForms":[],"partOfSpeech":"verb","frame":"TransitiveFrame",
    "reference":"http://dbpedia.org/ontology/author","subjArg":"objOfProp"}]})");
  const auto t = match_properties(lex, tree_of("1\twrote\twrite\tVERB\t_\t_\t0\troot\t_\t_\n"));
  ASSERT_EQ(t.at(1).entry_candidates.size(), 1u);
  EXPECT_EQ(t.at(1).entry_candidates[0].entry_id, "write");
  EXPECT_FALSE(t.at(1).entry_candidates[0].exact);
  EXPECT_NEAR(t.at(1).entry_candidates[0].similarity, 1.0 - 1.0 / 5.0, 1e-12);
}

TEST(PhraseVariants, FixedOrder) {
  const auto t = tree_of(
      "1\tthe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"
      "2\tcities\tcity\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "3\tof\tof\tADP\t_\t_\t2\tcase\t_\t_\n");
  auto merged = t;
  merge_nodes(merged, 1, 2);
  merge_nodes(merged, 3, 2);
  const auto v = phrase_variants(merged.at(2));
  std::vector<std::string> texts;
  for (const auto& p : v) texts.push_back(p.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"the cities of", "the cities", "cities of",
                                             "cities", "the city of", "the city", "city of",
                                             "city"}));
  EXPECT_FALSE(v[0].relaxed);
  EXPECT_TRUE(v[1].relaxed);
}

}  // namespace
}  // namespace lexqa
