#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "lexqa/kb.hpp"
#include "lexqa/sparql_gen.hpp"

namespace lexqa {

struct CandidateQuery {
  std::string query_text;
  QueryIR ir;
  std::string dudes_text;
  double tree_score = 0.0;
  int enum_index = 0;
  std::size_t result_count = 0;
  AnswerSet answers;
  std::string tree_id;  // parser tag / variant / sentence of the source tree
};

struct ComparatorOutput {
  double raw_a = 0.0;
  double raw_b = 0.0;
  double sig_a = 0.5;
  double sig_b = 0.5;

  static ComparatorOutput from_raw(double raw_a, double raw_b);
};

double logistic(double x);

// Scores "is A the better query than B" for one question.
class Comparator {
 public:
  virtual ~Comparator() = default;
  virtual ComparatorOutput compare(const std::string& question, const CandidateQuery& a,
                                   const CandidateQuery& b) = 0;
  virtual std::string name() const = 0;
};

struct BaselineParams {
  double score_weight = 2.0;
  double pattern_penalty = 0.25;
  double plausibility_weight = 0.5;
  double prior_count = 1.0;  // expected result count
};

// f(C) = score_weight * tree_score - pattern_penalty * patterns
//        - plausibility_weight * |ln(1 + count) - ln(1 + prior_count)|
// raw_a = f(A) - f(B), raw_b = -raw_a.
class BaselineComparator : public Comparator {
 public:
  explicit BaselineComparator(BaselineParams p = {}) : p_(p) {}
  ComparatorOutput compare(const std::string& question, const CandidateQuery& a,
                           const CandidateQuery& b) override;
  std::string name() const override { return "baseline"; }
  double fitness(const CandidateQuery& c) const;

 private:
  BaselineParams p_;
};

// External model behind a long-running process speaking one JSON object per
// line: request {question, queryA, queryB, countA, countB, dudesA, dudesB},
// response {rawA, rawB}.
class SubprocessComparator : public Comparator {
 public:
  SubprocessComparator(std::string command, std::chrono::milliseconds timeout);
  ~SubprocessComparator() override;
  ComparatorOutput compare(const std::string& question, const CandidateQuery& a,
                           const CandidateQuery& b) override;
  std::string name() const override { return name_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::chrono::milliseconds timeout_;
  std::string name_;
};

}  // namespace lexqa
