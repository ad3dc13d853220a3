#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lexqa/lexicon.hpp"
#include "lexqa/rdf.hpp"

namespace lexqa {

struct Var {
  int id = 0;
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

using Operand = std::variant<Var, Term>;

struct PropertyAtom {
  std::string pred;
  Operand subj;
  Operand obj;
  friend bool operator==(const PropertyAtom&, const PropertyAtom&) = default;
};

struct Equality {
  Var v;
  Term t;
  friend bool operator==(const Equality&, const Equality&) = default;
};

struct ClassAtom {
  std::string cls;
  Var v;
  friend bool operator==(const ClassAtom&, const ClassAtom&) = default;
};

enum class CmpOp { kLt, kLe, kGt, kGe, kEq, kNe };
std::string_view to_string(CmpOp op);

struct Comparison {
  CmpOp op = CmpOp::kGt;
  Var lhs;
  std::variant<Var, double> rhs;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

enum class AggKind { kCount };

struct Aggregation {
  AggKind kind = AggKind::kCount;
  Var in;
  Var out;
  friend bool operator==(const Aggregation&, const Aggregation&) = default;
};

struct Ordering {
  Var v;
  Degree direction = Degree::kMax;
  int limit = 1;
  friend bool operator==(const Ordering&, const Ordering&) = default;
};

enum class QueryForm { kSelect, kAsk };

struct QueryFormHint {
  QueryForm form = QueryForm::kSelect;
  friend bool operator==(const QueryFormHint&, const QueryFormHint&) = default;
};

using Condition = std::variant<PropertyAtom, Equality, ClassAtom, Comparison,
                               Aggregation, Ordering, QueryFormHint>;

// Variables mentioned by a condition, in argument order.
std::vector<Var> vars_of(const Condition& c);
// Replaces every occurrence of `from` with `to`.
Condition substitute(const Condition& c, Var from, Var to);

struct SelectionPair {
  Var v;
  std::optional<std::string> marker;  // nullopt = ε
  friend bool operator==(const SelectionPair&, const SelectionPair&) = default;
};

struct Dudes {
  std::optional<Var> main;   // nullopt = ε
  std::vector<Var> universe;  // sorted, unique
  std::vector<Condition> conditions;  // no duplicates
  std::vector<SelectionPair> pairs;

  // Throws ContractViolation when main, a pair or a condition mentions a
  // variable outside the universe.
  void validate() const;
  bool has(Var v) const;
  // True when every condition is a QueryFormHint.
  bool hint_only() const;

  friend bool operator==(const Dudes&, const Dudes&) = default;
};

// Fresh-variable source for one composition session.
class VarFactory {
 public:
  explicit VarFactory(int first = 1) : next_(first) {}
  Var fresh() { return Var{next_++}; }
  int peek() const { return next_; }

 private:
  int next_;
};

// ({z}, [z = iri], main z, no pairs).
Dudes entity_dudes(VarFactory& vars, const Term& value);

// Which variable of a property DUDES is main: the head side (the answer of
// "mayor of X") or the marked complement slot.
enum class MainSide { kHead, kMarked };

// Fresh x (marked complement slot) and y (head slot); the atom's argument
// order follows subj_arg. Pairs: (x, marker or ε), (y, ε).
Dudes property_dudes(VarFactory& vars, const LexicalEntry& entry,
                     MainSide side = MainSide::kHead);

// (x, [p(x, y), Ordering(y, degree, 1)], pairs (x, ε)).
Dudes superlative_dudes(VarFactory& vars, const LexicalEntry& entry);

// (x, [ClassAtom(cls, x)], no pairs).
Dudes class_dudes(VarFactory& vars, const LexicalEntry& entry);

// (ε, ∅, [QueryFormHint(ask)]).
Dudes ask_dudes();
// (a, {a, n}, [count(a, n)], pairs (a, ε)).
Dudes count_dudes(VarFactory& vars);
// (c, {c}, [c op value], pairs (c, ε)).
Dudes comparison_dudes(VarFactory& vars, CmpOp op, double value);

// d2 with selection pair p filled by d1's main variable.
Dudes compose(const Dudes& d1, const Dudes& d2, const SelectionPair& p);

// Deterministic text form; variables are renumbered v0, v1, ... by first
// occurrence after sorting conditions.
std::string canonical_text(const Dudes& d);
std::string to_string(const Condition& c);

}  // namespace lexqa
