#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lexqa/conllu.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/ontology_matcher.hpp"
#include "lexqa/tree_merger.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

const char* kMayor =
    "# text = Who is the mayor of Moscow?\n"
    "1\tWho\twho\tPRON\t_\t_\t4\tnsubj\t_\t_\n"
    "2\tis\tbe\tAUX\t_\t_\t4\tcop\t_\t_\n"
    "3\tthe\tthe\tDET\t_\t_\t4\tdet\t_\t_\n"
    "4\tmayor\tmayor\tNOUN\t_\t_\t0\troot\t_\t_\n"
    "5\tof\tof\tADP\t_\t_\t6\tcase\t_\t_\n"
    "6\tMoscow\tMoscow\tPROPN\t_\t_\t4\tnmod\t_\t_\n"
    "7\t?\t?\tPUNCT\t_\t_\t4\tpunct\t_\t_\n";

DepTree tree_of(const char* conllu) { return parse_conllu(conllu).at(0); }

TEST(MergeNodes, RejectsRootAndAncestor) {
  auto t = tree_of(kMayor);
  EXPECT_THROW(merge_nodes(t, 4, 6), ContractViolation);
  EXPECT_THROW(merge_nodes(t, 6, 5), ContractViolation);
  EXPECT_THROW(merge_nodes(t, 6, 6), ContractViolation);
}

TEST(MergeNodes, ReattachesChildrenAndOrdersTokens) {
  auto t = tree_of(kMayor);
  merge_nodes(t, 6, 4);
  EXPECT_EQ(t.at(4).phrase(), "mayor Moscow");
  EXPECT_EQ(t.at(5).head, 4);
  EXPECT_NO_THROW(t.validate());
}

TEST(GenericRules, PunctuationAndDeterminer) {
  const auto [t, trace] = apply_generic_rules(tree_of(kMayor));
  EXPECT_EQ(t.find(7), nullptr);
  EXPECT_EQ(t.at(4).phrase(), "the mayor");
  ASSERT_GE(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[0].rule, "punct");
  EXPECT_NO_THROW(t.validate());
}

TEST(GenericRules, NoApplicableRuleIsIdentity) {
  const auto t = tree_of("1\tMoscow\tMoscow\tPROPN\t_\t_\t0\troot\t_\t_\n");
  const auto [out, trace] = apply_generic_rules(t);
  EXPECT_EQ(out, t);
  EXPECT_TRUE(trace.steps.empty());
}

TEST(GenericRules, AskKeywordAndHowMany) {
  const auto ask = tree_of(
      "1\tIs\tbe\tAUX\t_\t_\t2\tcop\t_\t_\n"
      "2\tBerlin\tBerlin\tPROPN\t_\t_\t0\troot\t_\t_\n");
  EXPECT_EQ(apply_generic_rules(ask).first.at(1).special_mark, SpecialMark::kAskKeyword);

  const auto how_many = tree_of(
      "1\tHow\thow\tADV\t_\t_\t2\tadvmod\t_\t_\n"
      "2\tmany\tmany\tADJ\t_\t_\t3\tamod\t_\t_\n"
      "3\tfilms\tfilm\tNOUN\t_\t_\t0\troot\t_\t_\n");
  const auto merged = apply_generic_rules(how_many).first;
  EXPECT_EQ(merged.at(2).phrase(), "How many");
  EXPECT_EQ(merged.at(2).special_mark, SpecialMark::kCountKeyword);
}

TEST(MarkerRules, MergesOfIntoMayor) {
  const auto lex = load_lexicon(oracle::toy_dir() / "lexicon.json");
  const auto generic = apply_generic_rules(tree_of(kMayor), &lex).first;
  const auto [t, trace] = apply_marker_rules(generic, lex);
  ASSERT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.steps[0], (MergeStep{"lexicon_marker", 5, 4}));
  EXPECT_EQ(t.at(4).phrase(), "the mayor of");
  EXPECT_EQ(t.at(6).case_marker, "of");
  EXPECT_FALSE(t.at(4).special_mark.has_value());
}

TEST(Replay, ReproducesResult) {
  const auto lex = load_lexicon(oracle::toy_dir() / "lexicon.json");
  const auto original = tree_of(kMayor);
  const auto [g, gt] = apply_generic_rules(original, &lex);
  const auto [m, mt] = apply_marker_rules(g, lex);
  MergeTrace all = gt;
  all.append(mt);
  EXPECT_EQ(replay(original, all), m);
  EXPECT_NE(all.to_json_lines().find("\"rule\":\"lexicon_marker\""), std::string::npos);
}

TEST(EntityMerging, OverlappingSpansBranch) {
  const auto t = tree_of(
      "1\tNew\tNew\tPROPN\t_\t_\t2\tcompound\t_\t_\n"
      "2\tYork\tYork\tPROPN\t_\t_\t3\tcompound\t_\t_\n"
      "3\tTimes\tTimes\tPROPN\t_\t_\t0\troot\t_\t_\n");
  const std::vector<EntitySpan> spans = {
      {{1, 2}, {{"http://ex.org/NY", "new york", 1.0, EntitySource::kLabelIndex, {1, 2}}}},
      {{2, 3}, {{"http://ex.org/YT", "york times", 1.0, EntitySource::kLabelIndex, {2, 3}}}},
  };
  const auto out = apply_entity_merging(t, spans);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].first.nodes.size(), 2u);
  EXPECT_EQ(out[1].first.nodes.size(), 2u);
  EXPECT_EQ(out[0].first.at(2).phrase(), "New York");
  EXPECT_EQ(out[1].first.at(3).phrase(), "York Times");
}

TEST(EntityMerging, SingleNodeSpansDoNothing) {
  const auto t = tree_of(kMayor);
  const auto out = apply_entity_merging(
      t, {{{6, 6}, {{"http://ex.org/M", "moscow", 1.0, EntitySource::kLabelIndex, {6, 6}}}}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].first, t);
}

// Brute force: every subset that is pairwise disjoint and cannot be extended.
std::vector<std::vector<std::size_t>> brute_selections(const std::vector<TokenSpan>& s) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = s.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const auto in = [&](std::size_t i) { return (mask >> i) & 1; };
    bool disjoint = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (in(i) && in(j) && s[i].overlaps(s[j])) disjoint = false;
    if (!disjoint) continue;
    bool maximal = true;
    for (std::size_t k = 0; k < n && maximal; ++k) {
      if (in(k)) continue;
      bool fits = true;
      for (std::size_t i = 0; i < n; ++i)
        if (in(i) && s[i].overlaps(s[k])) fits = false;
      if (fits) maximal = false;
    }
    if (!maximal) continue;
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < n; ++i)
      if (in(i)) sel.push_back(i);
    out.push_back(sel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(EntityMerging, SelectionsMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = rng() % 7;
    std::vector<TokenSpan> spans;
    for (std::size_t i = 0; i < n; ++i) {
      const int a = static_cast<int>(rng() % 10) + 1;
      spans.push_back({a, a + static_cast<int>(rng() % 3)});
    }
    auto got = maximal_disjoint_selections(spans);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, brute_selections(spans)) << "round " << round;
  }
}

TEST(MergeRules, InventoryOrder) {
  const auto& rules = merge_rules();
  ASSERT_FALSE(rules.empty());
  EXPECT_EQ(rules.front().kind, MergeRuleKind::kGeneric);
  EXPECT_EQ(rules.back().kind, MergeRuleKind::kEntityMerging);
}

}  // namespace
}  // namespace lexqa
