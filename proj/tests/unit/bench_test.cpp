#include <gtest/gtest.h>

#include "json.hpp"
#include "lexqa/bench.hpp"
#include "lexqa/dataset.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

TEST(ScoreSelection, UnansweredCountsGoldAsMissed) {
  const auto gold = AnswerSet::bindings({Term::iri("http://ex.org/a"), Term::iri("http://ex.org/b"),
                                         Term::iri("http://ex.org/c")});
  const auto e = score_selection("q", std::nullopt, gold);
  EXPECT_FALSE(e.answered);
  EXPECT_EQ(e.confusion, (Confusion{0, 0, 3}));
  EXPECT_EQ(e.prf.f1, 0.0);
}

TEST(ScoreSelection, Answered) {
  const auto gold = AnswerSet::bindings({Term::iri("http://ex.org/a")});
  CandidateQuery c;
  c.query_text = "SELECT ...";
  c.answers = gold;
  const auto e = score_selection("q", c, gold);
  EXPECT_TRUE(e.answered);
  EXPECT_EQ(e.prf.f1, 1.0);
  EXPECT_EQ(e.selected_query, "SELECT ...");
}

class BenchTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    pipeline_ = new Pipeline(PipelineConfig::load(oracle::toy_dir() / "config.json"));
  }
  static void TearDownTestSuite() { delete pipeline_; }
  static Pipeline* pipeline_;
};
Pipeline* BenchTest::pipeline_ = nullptr;

TEST_F(BenchTest, ToySuite) {
  const auto data = load_dataset(oracle::toy_dir() / "qald_toy.json");
  const auto comps = pipeline_->comparators();
  const std::vector<Strategy> strategies = {Strategy::best_score(),
                                            Strategy::most_wins(0.75, comps)};
  BenchOptions opts;
  opts.workers = 4;
  const auto run = run_benchmark(*pipeline_, data.questions, strategies, opts);
  ASSERT_EQ(run.reports.size(), 2u);
  EXPECT_TRUE(run.within_budget);
  const auto& best = run.reports[0];
  EXPECT_EQ(best.strategy, "BestScore");
  ASSERT_EQ(best.per_question.size(), 15u);
  EXPECT_EQ(best.per_question[0].id, data.questions[0].id);
  EXPECT_GE(best.micro.f1, 0.85);
  // BestScore is an upper bound for every other strategy on each question.
  for (std::size_t i = 0; i < 15; ++i) {
    EXPECT_GE(best.per_question[i].prf.f1 + 1e-12, run.reports[1].per_question[i].prf.f1);
  }

  const auto j = nlohmann::json::parse(report_json(run, false));
  EXPECT_FALSE(j.dump().find("elapsedMs") != std::string::npos);
  EXPECT_NE(report_json(run, true).find("elapsedMs"), std::string::npos);
  EXPECT_NE(report_table(run).find("MostWins_0.75^top1"), std::string::npos);
}

TEST_F(BenchTest, DeterministicAcrossWorkerCounts) {
  const auto data = load_dataset(oracle::toy_dir() / "qald_toy.json");
  const std::vector<Strategy> strategies = {Strategy::most_wins(0.75, pipeline_->comparators())};
  BenchOptions one;
  one.workers = 1;
  BenchOptions many;
  many.workers = 8;
  EXPECT_EQ(report_json(run_benchmark(*pipeline_, data.questions, strategies, one), false),
            report_json(run_benchmark(*pipeline_, data.questions, strategies, many), false));
}

TEST_F(BenchTest, EmptyDataset) {
  const auto run = run_benchmark(*pipeline_, {}, {Strategy::best_score()});
  ASSERT_EQ(run.warnings.size(), 1u);
  EXPECT_EQ(run.reports[0].micro.f1, 0.0);
}

}  // namespace
}  // namespace lexqa
