#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lexqa/errors.hpp"
#include "lexqa/metrics.hpp"
#include "lexqa/selector.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

std::vector<std::shared_ptr<Comparator>> ensemble_of(const oracle::SyntheticCase& c) {
  const std::size_t n = c.cands.size();
  std::vector<std::shared_ptr<Comparator>> out;
  for (const auto& m : c.table.out) {
    std::vector<std::vector<ComparatorOutput>> by_enum(n, std::vector<ComparatorOutput>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        by_enum[c.cands[i].enum_index][c.cands[j].enum_index] = m[i][j];
      }
    }
    out.push_back(std::make_shared<oracle::TableComparator>(std::move(by_enum)));
  }
  return out;
}

CandidateQuery with_count(std::size_t count, IrForm form = IrForm::kSelect) {
  CandidateQuery c;
  c.result_count = count;
  c.ir.form = form;
  c.answers = form == IrForm::kAsk ? AnswerSet::boolean(false) : AnswerSet::bindings({});
  return c;
}

TEST(Filter, ZeroAndOversizedDropped) {
  const auto out = filter_candidates({with_count(0), with_count(5), with_count(200)}, 100);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].result_count, 5u);
}

TEST(Filter, Boundary) {
  EXPECT_EQ(result_limit(100), 110u);
  EXPECT_EQ(result_limit(7), 7u);
  EXPECT_EQ(filter_candidates({with_count(110)}, 100).size(), 1u);
  EXPECT_TRUE(filter_candidates({with_count(111)}, 100).empty());
  EXPECT_EQ(filter_candidates({with_count(0, IrForm::kAsk)}, 100).size(), 1u);
}

TEST(Strategy, ParseAndName) {
  auto base = std::make_shared<BaselineComparator>();
  EXPECT_EQ(Strategy::parse("bestscore", {}).name(), "BestScore");
  EXPECT_EQ(Strategy::parse("mostwins:0.75", {base}).name(), "MostWins_0.75^top1");
  EXPECT_EQ(Strategy::parse("accum:logits", {base, base}).name(), "Accum_logits^top2");
  EXPECT_THROW(Strategy::parse("mostwins:2", {}), ValidationError);
  EXPECT_THROW(Strategy::parse("mostwins:abc", {}), ValidationError);
  EXPECT_THROW(Strategy::parse("random", {}), ValidationError);
}

TEST(Select, EmptyAndContracts) {
  EXPECT_FALSE(select(Strategy::best_score(), {}, "q").has_value());
  EXPECT_THROW(select(Strategy::best_score(), {with_count(1)}, "q"), ContractViolation);
  EXPECT_THROW(select(Strategy::most_wins(0.5, {}), {with_count(1)}, "q"), ContractViolation);
}

TEST(Select, BestScoreTiesByEnumIndex) {
  const auto gold = AnswerSet::bindings({Term::iri("http://ex.org/a")});
  std::vector<CandidateQuery> cands(3);
  for (int i = 0; i < 3; ++i) {
    cands[i].enum_index = 2 - i;
    cands[i].answers = i == 2 ? AnswerSet::bindings({}) : gold;
  }
  const auto best = select(Strategy::best_score(), cands, "q", &gold);
  EXPECT_EQ(best->enum_index, 1);
}

TEST(Select, MatchesOracles) {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + rng() % 7;
    const auto c = oracle::random_case(rng, n, 1 + rng() % 3);
    const auto ensemble = ensemble_of(c);
    for (double margin : {0.0, 0.25, 0.75}) {
      const auto got = select(Strategy::most_wins(margin, ensemble), c.cands, "q", nullptr, &c.table);
      EXPECT_EQ(got->enum_index, c.cands[oracle::tournament(c, margin)].enum_index);
    }
    for (auto mode : {AccumMode::kLogits, AccumMode::kSigmoid}) {
      const auto got = select(Strategy::accum(mode, ensemble), c.cands, "q");
      EXPECT_EQ(got->enum_index,
                c.cands[oracle::summation(c, mode == AccumMode::kLogits)].enum_index);
    }
  }
}

TEST(Select, PermutationInvariant) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 50; ++round) {
    const auto c = oracle::random_case(rng, 2 + rng() % 6, 2);
    const auto ensemble = ensemble_of(c);
    auto shuffled = c.cands;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (const auto& s : {Strategy::most_wins(0.5, ensemble),
                          Strategy::accum(AccumMode::kSigmoid, ensemble)}) {
      EXPECT_EQ(select(s, c.cands, "q")->enum_index, select(s, shuffled, "q")->enum_index);
    }
  }
}

TEST(Baseline, Fitness) {
  BaselineComparator comp;
  CandidateQuery a;
  a.tree_score = 0.8;
  a.result_count = 1;
  a.ir.patterns.resize(1);
  CandidateQuery b = a;
  b.tree_score = 0.5;
  const auto out = comp.compare("q", a, b);
  EXPECT_NEAR(out.raw_a, 2.0 * 0.3, 1e-12);
  EXPECT_NEAR(out.raw_b, -out.raw_a, 1e-12);
  EXPECT_NEAR(out.sig_a, logistic(out.raw_a), 1e-12);
  EXPECT_GT(out.sig_a, 0.5);
}

}  // namespace
}  // namespace lexqa
