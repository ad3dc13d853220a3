#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "lexqa/rdf.hpp"

namespace lexqa {

// Query result: a deduplicated value set (first projected column) or a
// truth value.
struct AnswerSet {
  enum class Kind { kBindings, kBoolean };

  Kind kind = Kind::kBindings;
  std::vector<Term> values;  // sorted, unique
  bool truth = false;

  static AnswerSet bindings(std::vector<Term> values);
  static AnswerSet boolean(bool truth);

  bool is_boolean() const { return kind == Kind::kBoolean; }
  // Number of results: value count, or 1 for a boolean.
  std::size_t size() const { return is_boolean() ? 1 : values.size(); }

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

inline constexpr std::chrono::milliseconds kDefaultQueryBudget{30000};

class KnowledgeBase {
 public:
  virtual ~KnowledgeBase() = default;
  // Thread-safe. Throws UnsupportedFeature, TransportError, BudgetExceeded.
  virtual AnswerSet execute(const std::string& sparql,
                            std::chrono::milliseconds budget = kDefaultQueryBudget) = 0;
  virtual std::string describe() const = 0;
};

}  // namespace lexqa
