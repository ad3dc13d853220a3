#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexqa/kb.hpp"

namespace lexqa {

struct BenchQuestion {
  std::string id;
  std::string text;
  std::string gold_query;
  AnswerSet gold_answers;
};

struct DatasetLoad {
  std::vector<BenchQuestion> questions;
  std::vector<std::string> warnings;
};

// QALD JSON: questions[] with language-tagged `question` strings,
// `query.sparql` and `answers[0]` in SPARQL JSON results form. Questions
// without an English string or answers are skipped with a warning.
DatasetLoad parse_dataset(std::string_view json_text);
DatasetLoad load_dataset(const std::filesystem::path& path);

}  // namespace lexqa
