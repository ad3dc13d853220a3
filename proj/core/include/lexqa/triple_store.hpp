#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexqa/kb.hpp"
#include "lexqa/ntriples.hpp"
#include "lexqa/sparql_parser.hpp"

namespace lexqa {

using Binding = std::map<std::string, Term>;

// Immutable set of triples with subject / predicate / object indexes.
class TripleStore : public KnowledgeBase {
 public:
  TripleStore() = default;
  // Duplicates are stored once.
  explicit TripleStore(std::vector<Triple> triples);

  static TripleStore load_ntriples(const std::filesystem::path& path);

  std::size_t size() const { return triples_.size(); }
  const std::vector<Triple>& triples() const { return triples_; }

  AnswerSet execute(const std::string& sparql,
                    std::chrono::milliseconds budget = kDefaultQueryBudget) override;
  AnswerSet execute(const sparql::Query& q,
                    std::chrono::milliseconds budget = kDefaultQueryBudget) const;
  std::string describe() const override;

  // Solutions of the VALUES blocks, patterns and filters, before ordering,
  // projection and slicing.
  std::vector<Binding> solutions(const sparql::Query& q,
                                 std::chrono::steady_clock::time_point deadline) const;

 private:
  using Index = std::unordered_map<Term, std::vector<std::size_t>, TermHash>;

  std::vector<Triple> triples_;  // sorted, unique
  Index by_subject_;
  Index by_predicate_;
  Index by_object_;
};

// SPARQL value comparison used by FILTER; nullopt when the operands are not
// comparable (the filter then fails).
std::optional<bool> compare_terms(CmpOp op, const Term& a, const Term& b);

// Ordering, projection, DISTINCT, OFFSET/LIMIT and the aggregate applied to
// raw solutions.
AnswerSet finalize(const sparql::Query& q, std::vector<Binding> solutions);

}  // namespace lexqa
