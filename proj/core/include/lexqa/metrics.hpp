#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lexqa/kb.hpp"

namespace lexqa {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct Prf {
  double p = 0.0;
  double r = 0.0;
  double f1 = 0.0;
};

// Answers are compared by (IRI or literal, lexical value); numeric literals
// by value. Booleans: agreement is one true positive, disagreement one false
// positive and one false negative.
Confusion confusion(const AnswerSet& system, const AnswerSet& gold);

// Per-question scores; an all-zero confusion (both sides empty) scores 1.
Prf question_prf(const Confusion& c);

// Micro scores from summed counts; zero denominators give 0.
Prf micro_prf(const std::vector<Confusion>& per_question);
Prf macro_prf(const std::vector<Prf>& per_question);

// F1 that drops to 0 once false positives reach ten times the true
// positives (including any false positive with no true positive).
double clamped_f1(const AnswerSet& candidate, const AnswerSet& gold);

}  // namespace lexqa
