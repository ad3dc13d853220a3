#include <gtest/gtest.h>

#include "lexqa/metrics.hpp"

namespace lexqa {
namespace {

// System/gold pair with the requested confusion counts.
std::pair<AnswerSet, AnswerSet> sets(std::size_t tp, std::size_t fp, std::size_t fn) {
  std::vector<Term> sys;
  std::vector<Term> gold;
  for (std::size_t i = 0; i < tp + fn; ++i) {
    gold.push_back(Term::iri("http://ex.org/g" + std::to_string(i)));
  }
  for (std::size_t i = 0; i < tp; ++i) sys.push_back(gold[i]);
  for (std::size_t i = 0; i < fp; ++i) sys.push_back(Term::iri("http://ex.org/f" + std::to_string(i)));
  return {AnswerSet::bindings(sys), AnswerSet::bindings(gold)};
}

TEST(Confusion, Counts) {
  const auto [s, g] = sets(2, 3, 4);
  EXPECT_EQ(confusion(s, g), (Confusion{2, 3, 4}));
}

TEST(Confusion, NumericLiteralsByValue) {
  const auto s = AnswerSet::bindings({Term::literal("3", ns::kXsdInteger)});
  const auto g = AnswerSet::bindings({Term::literal("3.0", ns::kXsdDouble)});
  EXPECT_EQ(confusion(s, g), (Confusion{1, 0, 0}));
  EXPECT_EQ(confusion(AnswerSet::bindings({Term::literal("4")}), g), (Confusion{0, 1, 1}));
  EXPECT_EQ(confusion(AnswerSet::bindings({Term::iri("http://ex.org/3")}), g), (Confusion{0, 1, 1}));
}

TEST(Confusion, Booleans) {
  EXPECT_EQ(confusion(AnswerSet::boolean(true), AnswerSet::boolean(true)), (Confusion{1, 0, 0}));
  EXPECT_EQ(confusion(AnswerSet::boolean(false), AnswerSet::boolean(true)), (Confusion{0, 1, 1}));
}

TEST(Prf, QuestionLevel) {
  const auto p = question_prf({0, 0, 0});
  EXPECT_EQ(p.f1, 1.0);
  const auto q = question_prf({2, 2, 0});
  EXPECT_NEAR(q.p, 0.5, 1e-12);
  EXPECT_NEAR(q.r, 1.0, 1e-12);
  EXPECT_NEAR(q.f1, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(question_prf({0, 1, 1}).f1, 0.0);
}

TEST(Prf, MicroAndMacro) {
  const std::vector<Confusion> cs = {{2, 0, 0}, {0, 0, 3}};
  const auto micro = micro_prf(cs);
  EXPECT_NEAR(micro.p, 1.0, 1e-12);
  EXPECT_NEAR(micro.r, 0.4, 1e-12);
  EXPECT_NEAR(micro.f1, 2 * 0.4 / 1.4, 1e-12);
  const auto macro = macro_prf({question_prf(cs[0]), question_prf(cs[1])});
  EXPECT_NEAR(macro.f1, 0.5, 1e-12);
  EXPECT_EQ(micro_prf({}).f1, 0.0);
  EXPECT_EQ(macro_prf({}).f1, 0.0);
}

TEST(ClampedF1, TenToOneRule) {
  {
    const auto [s, g] = sets(1, 10, 0);
    EXPECT_EQ(clamped_f1(s, g), 0.0);
  }
  {
    const auto [s, g] = sets(2, 2, 0);
    EXPECT_NEAR(clamped_f1(s, g), 2.0 / 3.0, 1e-12);
  }
  {
    const auto [s, g] = sets(1, 9, 0);
    EXPECT_NEAR(clamped_f1(s, g), question_prf({1, 9, 0}).f1, 1e-12);
  }
  {
    const auto [s, g] = sets(0, 1, 2);
    EXPECT_EQ(clamped_f1(s, g), 0.0);
  }
  {
    const auto [s, g] = sets(0, 0, 0);
    EXPECT_EQ(clamped_f1(s, g), 1.0);
  }
}

}  // namespace
}  // namespace lexqa
