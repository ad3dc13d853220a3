#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexqa/dudes.hpp"

namespace lexqa {

struct TriplePattern {
  Operand subj;
  Operand pred;
  Operand obj;
  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct OrderModifier {
  Var v;
  Degree direction = Degree::kMax;
  int limit = 1;
  friend bool operator==(const OrderModifier&, const OrderModifier&) = default;
};

enum class IrForm { kSelect, kAsk, kCount };
std::string_view to_string(IrForm f);

struct QueryIR {
  IrForm form = IrForm::kSelect;
  std::vector<Var> projection;  // empty for ask; the counted var for count
  std::vector<TriplePattern> patterns;
  std::vector<Comparison> filters;
  std::optional<OrderModifier> modifier;
  bool distinct = false;
  // Bindings kept as VALUES blocks instead of being inlined.
  std::vector<std::pair<Var, Term>> values;

  // Throws ContractViolation on a projected variable missing from the
  // patterns or an ask form with a projection.
  void validate() const;
  friend bool operator==(const QueryIR&, const QueryIR&) = default;
};

struct BoundnessReport {
  std::vector<Var> bound;  // sorted
  std::vector<Var> free;   // sorted
  bool is_bound(Var v) const;
};

// Fixpoint over the conditions: equality with a term binds a variable; an
// aggregation output is bound once its input is constrained by a pattern.
BoundnessReport analyze_boundness(const Dudes& d);

struct QueryOptions {
  bool inline_bound = true;
};

// Throws QueryGenerationError when no query can be formed (nothing to
// project, ambiguous projection, conflicting equalities, variables that no
// pattern constrains).
QueryIR to_query(const Dudes& d, const QueryOptions& opts = {});

// Canonical SPARQL text: the projected variable is ?answer (the counted
// variable keeps its ?vK name), the rest ?v0, ?v1, ... by first occurrence.
std::string serialize(const QueryIR& q);

// SPARQL surface form of a term (full IRIs, bare numbers).
std::string sparql_term(const Term& t);

}  // namespace lexqa
