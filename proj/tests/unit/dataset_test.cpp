#include <gtest/gtest.h>

#include "lexqa/dataset.hpp"
#include "lexqa/errors.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

TEST(Dataset, ToySuiteLoadsClean) {
  const auto d = load_dataset(oracle::toy_dir() / "qald_toy.json");
  EXPECT_EQ(d.questions.size(), 15u);
  EXPECT_TRUE(d.warnings.empty());
  EXPECT_EQ(d.questions[0].text, "Who is the mayor of Moscow?");
  EXPECT_EQ(d.questions[8].gold_answers, AnswerSet::boolean(true));
  EXPECT_FALSE(d.questions[0].gold_query.empty());
}

TEST(Dataset, SkipsWithWarnings) {
  const auto d = parse_dataset(R"({"questions":[
    {"id":"1","question":[{"language":"de","string":"Wer?"}],"query":{"sparql":"ASK {}"},
     "answers":[{"head":{},"boolean":true}]},
    {"id":"2","question":[{"language":"en","string":"Who?"}],"query":{"sparql":"ASK {}"},
     "answers":[]},
    {"id":"3","question":[{"language":"en","string":"Is it?"}],"query":{"sparql":"ASK {}"},
     "answers":[{"head":{},"boolean":false}]}]})");
  ASSERT_EQ(d.questions.size(), 1u);
  EXPECT_EQ(d.questions[0].id, "3");
  EXPECT_EQ(d.warnings.size(), 2u);
}

TEST(Dataset, Malformed) {
  EXPECT_THROW(parse_dataset("{"), FormatError);
  EXPECT_THROW(parse_dataset(R"({"items":[]})"), FormatError);
  EXPECT_THROW(load_dataset("/nonexistent/qald.json"), Error);
}

}  // namespace
}  // namespace lexqa
