#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexqa/dudes.hpp"
#include "lexqa/rdf.hpp"

namespace lexqa::sparql {

// A variable (by name, without '?') or a concrete term.
struct Node {
  bool is_var = false;
  std::string var;
  Term term;

  static Node variable(std::string name) { return {true, std::move(name), {}}; }
  static Node constant(Term t) { return {false, {}, std::move(t)}; }
  friend bool operator==(const Node&, const Node&) = default;
};

struct Pattern {
  Node s, p, o;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct Filter {
  CmpOp op = CmpOp::kEq;
  Node lhs, rhs;
  friend bool operator==(const Filter&, const Filter&) = default;
};

struct OrderKey {
  std::string var;
  bool descending = false;
  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct Values {
  std::string var;
  std::vector<Term> rows;
  friend bool operator==(const Values&, const Values&) = default;
};

struct Query {
  enum class Form { kSelect, kAsk };
  Form form = Form::kSelect;
  bool distinct = false;
  bool select_all = false;
  std::vector<std::string> projection;
  // (COUNT([DISTINCT] ?in) AS ?alias)
  struct Count {
    std::string in;  // empty for COUNT(*)
    std::string alias;
    bool distinct = false;
    friend bool operator==(const Count&, const Count&) = default;
  };
  std::optional<Count> count;
  std::vector<Pattern> patterns;
  std::vector<Filter> filters;
  std::vector<Values> values;
  std::vector<OrderKey> order;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;

  // Variables in patterns and VALUES, by first occurrence.
  std::vector<std::string> pattern_variables() const;
  friend bool operator==(const Query&, const Query&) = default;
};

// Parses the supported subset: PREFIX, SELECT [DISTINCT] vars | * |
// (COUNT([DISTINCT] ?v|*) AS ?x), ASK, basic graph patterns with ';' and
// ',', `a`, FILTER(term op term), VALUES ?v { ... }, ORDER BY, LIMIT,
// OFFSET. Syntax errors raise FormatError; anything else outside the subset
// raises UnsupportedFeature.
Query parse(std::string_view text);

}  // namespace lexqa::sparql
