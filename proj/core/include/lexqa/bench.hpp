#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "lexqa/dataset.hpp"
#include "lexqa/metrics.hpp"
#include "lexqa/pipeline.hpp"
#include "lexqa/selector.hpp"

namespace lexqa {

struct QuestionEval {
  std::string id;
  Confusion confusion;
  Prf prf;
  std::string selected_query;  // empty when unanswered
  double elapsed_ms = 0.0;
  bool answered = false;
};

struct EvalReport {
  std::string strategy;
  std::vector<QuestionEval> per_question;  // dataset order
  Prf micro;
  Prf macro;
  std::size_t candidates_generated = 0;
};

struct BenchOptions {
  std::size_t workers = 12;
  std::chrono::milliseconds total_budget{3600000};
  std::size_t max_train_results = 1000000000;
};

struct BenchRun {
  std::vector<EvalReport> reports;  // one per strategy, input order
  bool within_budget = true;
  std::vector<std::string> warnings;
};

// Answers every question once and scores each strategy on the same
// candidate lists. A question whose budget runs out counts as unanswered.
BenchRun run_benchmark(const Pipeline& pipeline, const std::vector<BenchQuestion>& questions,
                       const std::vector<Strategy>& strategies, const BenchOptions& opts = {});

// Scores for one question given the selected candidate (nullopt: unanswered).
QuestionEval score_selection(const std::string& id, const std::optional<CandidateQuery>& chosen,
                             const AnswerSet& gold);

std::string report_json(const BenchRun& run, bool include_timing = true);
// Strategy | Micro P R F1 | Macro P R F1, aligned.
std::string report_table(const BenchRun& run);

}  // namespace lexqa
