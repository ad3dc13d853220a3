#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexqa/comparator.hpp"
#include "lexqa/kb.hpp"

namespace lexqa {

// Drops zero-result candidates (ASK excepted) and candidates with more
// than floor(max_train_results * 1.1) results. Order is kept.
std::vector<CandidateQuery> filter_candidates(const std::vector<CandidateQuery>& cands,
                                              std::size_t max_train_results);
std::size_t result_limit(std::size_t max_train_results);

enum class AccumMode { kLogits, kSigmoid };

struct Strategy {
  enum class Kind { kBestScore, kMostWins, kAccum };
  Kind kind = Kind::kBestScore;
  double margin = 0.0;  // MostWins
  AccumMode mode = AccumMode::kSigmoid;
  std::vector<std::shared_ptr<Comparator>> ensemble;

  static Strategy best_score();
  static Strategy most_wins(double margin, std::vector<std::shared_ptr<Comparator>> ensemble);
  static Strategy accum(AccumMode mode, std::vector<std::shared_ptr<Comparator>> ensemble);
  // "bestscore", "mostwins:0.75", "accum:logits", "accum:sigmoid".
  static Strategy parse(const std::string& spec,
                        std::vector<std::shared_ptr<Comparator>> ensemble);
  std::string name() const;
};

// All comparator outputs for one candidate list, indexed
// [comparator][i][j] = compare(cands[i], cands[j]) for i != j. Lets several
// strategies share one round of comparisons.
struct ComparisonTable {
  std::vector<std::vector<std::vector<ComparatorOutput>>> out;
};
ComparisonTable compare_all(const std::vector<std::shared_ptr<Comparator>>& ensemble,
                            const std::vector<CandidateQuery>& cands,
                            const std::string& question);

// Selected candidate; nullopt for an empty list. `gold` is required for
// BestScore. `table`, when given, must have been built from `cands` in the
// same order with the strategy's ensemble.
std::optional<CandidateQuery> select(const Strategy& strategy,
                                     const std::vector<CandidateQuery>& cands,
                                     const std::string& question,
                                     const AnswerSet* gold = nullptr,
                                     const ComparisonTable* table = nullptr);

}  // namespace lexqa
