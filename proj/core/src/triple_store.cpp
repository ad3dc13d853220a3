#include "lexqa/triple_store.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "lexqa/errors.hpp"

namespace lexqa {

namespace {

bool is_numeric_type(const std::string& dt) {
  static const std::set<std::string> kTypes = [] {
    std::set<std::string> s;
    for (const char* t : {"integer", "decimal", "double", "float", "int", "long", "short",
                          "byte", "nonNegativeInteger", "positiveInteger",
                          "nonPositiveInteger", "negativeInteger", "unsignedInt",
                          "unsignedLong", "unsignedShort", "unsignedByte"}) {
      s.insert(std::string(ns::kXsd) + t);
    }
    return s;
  }();
  return kTypes.count(dt) > 0;
}

std::optional<double> numeric_value(const Term& t) {
  if (!t.is_literal() || !is_numeric_type(t.datatype)) return std::nullopt;
  return t.numeric();
}

int kind_rank(const Term& t) {
  if (t.is_blank()) return 1;
  if (t.is_iri()) return 2;
  return 3;
}

// Ordering for ORDER BY: unbound first, then blank, IRI, literal; numbers
// by value.
bool order_less(const std::optional<Term>& a, const std::optional<Term>& b) {
  if (!a || !b) return !a && b;
  const auto na = numeric_value(*a);
  const auto nb = numeric_value(*b);
  if (na && nb) return *na < *nb;
  if (kind_rank(*a) != kind_rank(*b)) return kind_rank(*a) < kind_rank(*b);
  return *a < *b;
}

struct Deadline {
  std::chrono::steady_clock::time_point at;
  mutable std::size_t ticks = 0;
  void check() const {
    if ((++ticks & 1023) == 0 && std::chrono::steady_clock::now() > at) {
      throw BudgetExceeded("query exceeded its time budget");
    }
  }
};

bool unify(const sparql::Node& n, const Term& value, Binding& b, std::vector<std::string>& added) {
  if (!n.is_var) return n.term == value;
  auto it = b.find(n.var);
  if (it != b.end()) return it->second == value;
  b.emplace(n.var, value);
  added.push_back(n.var);
  return true;
}

std::optional<Term> resolve(const sparql::Node& n, const Binding& b) {
  if (!n.is_var) return n.term;
  auto it = b.find(n.var);
  if (it == b.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<bool> compare_terms(CmpOp op, const Term& a, const Term& b) {
  const auto na = numeric_value(a);
  const auto nb = numeric_value(b);
  int cmp;
  if (na && nb) {
    cmp = *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  } else if (op == CmpOp::kEq || op == CmpOp::kNe) {
    cmp = a == b ? 0 : 1;
  } else if (a.is_literal() && b.is_literal() && a.datatype == b.datatype &&
             a.lang == b.lang && !is_numeric_type(a.datatype)) {
    cmp = a.value < b.value ? -1 : (a.value > b.value ? 1 : 0);
  } else {
    return std::nullopt;
  }
  switch (op) {
    case CmpOp::kLt: return cmp < 0;
    case CmpOp::kLe: return cmp <= 0;
    case CmpOp::kGt: return cmp > 0;
    case CmpOp::kGe: return cmp >= 0;
    case CmpOp::kEq: return cmp == 0;
    case CmpOp::kNe: return cmp != 0;
  }
  return std::nullopt;
}

TripleStore::TripleStore(std::vector<Triple> triples) : triples_(std::move(triples)) {
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    by_subject_[triples_[i].subject].push_back(i);
    by_predicate_[triples_[i].predicate].push_back(i);
    by_object_[triples_[i].object].push_back(i);
  }
}

TripleStore TripleStore::load_ntriples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open N-Triples file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return TripleStore(parse_ntriples(buf.str()));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string TripleStore::describe() const {
  return "in-memory store (" + std::to_string(triples_.size()) + " triples)";
}

std::vector<Binding> TripleStore::solutions(
    const sparql::Query& q, std::chrono::steady_clock::time_point deadline) const {
  const Deadline dl{deadline};
  std::vector<Binding> starts{Binding{}};
  for (const auto& v : q.values) {
    std::vector<Binding> next;
    for (const auto& b : starts) {
      for (const auto& t : v.rows) {
        Binding nb = b;
        auto it = nb.find(v.var);
        if (it != nb.end() && it->second != t) continue;
        nb[v.var] = t;
        next.push_back(std::move(nb));
      }
    }
    starts = std::move(next);
  }

  std::vector<Binding> out;
  const auto& pats = q.patterns;
  std::vector<std::size_t> all;
  const auto candidates = [&](const sparql::Pattern& p,
                              const Binding& b) -> const std::vector<std::size_t>* {
    const std::vector<std::size_t>* best = nullptr;
    bool constrained = false;
    const auto consider = [&](const sparql::Node& n, const Index& idx) {
      const auto t = resolve(n, b);
      if (!t) return;
      constrained = true;
      static const std::vector<std::size_t> kEmpty;
      auto it = idx.find(*t);
      const auto* list = it == idx.end() ? &kEmpty : &it->second;
      if (!best || list->size() < best->size()) best = list;
    };
    consider(p.s, by_subject_);
    consider(p.p, by_predicate_);
    consider(p.o, by_object_);
    if (!constrained) {
      if (all.size() != triples_.size()) {
        all.resize(triples_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      }
      return &all;
    }
    return best;
  };

  std::function<void(std::size_t, Binding&)> join = [&](std::size_t i, Binding& b) {
    if (i == pats.size()) {
      for (const auto& f : q.filters) {
        const auto l = resolve(f.lhs, b);
        const auto r = resolve(f.rhs, b);
        if (!l || !r) return;
        const auto ok = compare_terms(f.op, *l, *r);
        if (!ok || !*ok) return;
      }
      out.push_back(b);
      return;
    }
    const auto& p = pats[i];
    for (std::size_t idx : *candidates(p, b)) {
      dl.check();
      const auto& t = triples_[idx];
      std::vector<std::string> added;
      if (unify(p.s, t.subject, b, added) && unify(p.p, t.predicate, b, added) &&
          unify(p.o, t.object, b, added)) {
        join(i + 1, b);
      }
      for (const auto& v : added) b.erase(v);
    }
  };
  for (auto& b : starts) join(0, b);
  return out;
}

AnswerSet finalize(const sparql::Query& q, std::vector<Binding> sols) {
  if (q.form == sparql::Query::Form::kAsk) return AnswerSet::boolean(!sols.empty());
  if (q.count) {
    std::size_t n = 0;
    if (q.count->in.empty()) {
      n = sols.size();
    } else {
      std::set<Term> seen;
      for (const auto& b : sols) {
        auto it = b.find(q.count->in);
        if (it == b.end()) continue;
        if (q.count->distinct) {
          seen.insert(it->second);
        } else {
          ++n;
        }
      }
      if (q.count->distinct) n = seen.size();
    }
    return AnswerSet::bindings({Term::number(static_cast<double>(n))});
  }
  if (!q.order.empty()) {
    std::stable_sort(sols.begin(), sols.end(), [&](const Binding& a, const Binding& b) {
      for (const auto& key : q.order) {
        const auto get = [&](const Binding& s) -> std::optional<Term> {
          auto it = s.find(key.var);
          if (it == s.end()) return std::nullopt;
          return it->second;
        };
        const auto va = get(a);
        const auto vb = get(b);
        if (order_less(va, vb)) return !key.descending;
        if (order_less(vb, va)) return key.descending;
      }
      return false;
    });
  }
  std::vector<std::string> vars = q.projection;
  if (q.select_all) vars = q.pattern_variables();
  std::vector<std::vector<std::optional<Term>>> rows;
  for (const auto& b : sols) {
    std::vector<std::optional<Term>> row;
    for (const auto& v : vars) {
      auto it = b.find(v);
      row.push_back(it == b.end() ? std::nullopt : std::optional<Term>(it->second));
    }
    if (q.distinct && std::find(rows.begin(), rows.end(), row) != rows.end()) continue;
    rows.push_back(std::move(row));
  }
  const std::size_t begin = std::min(q.offset, rows.size());
  std::size_t end = rows.size();
  if (q.limit) end = std::min(end, begin + *q.limit);
  std::vector<Term> values;
  for (std::size_t i = begin; i < end; ++i) {
    if (!rows[i].empty() && rows[i][0]) values.push_back(*rows[i][0]);
  }
  return AnswerSet::bindings(std::move(values));
}

AnswerSet TripleStore::execute(const sparql::Query& q,
                               std::chrono::milliseconds budget) const {
  const auto deadline = std::chrono::steady_clock::now() + budget;
  return finalize(q, solutions(q, deadline));
}

AnswerSet TripleStore::execute(const std::string& text, std::chrono::milliseconds budget) {
  const auto q = sparql::parse(text);
  return static_cast<const TripleStore&>(*this).execute(q, budget);
}

AnswerSet AnswerSet::bindings(std::vector<Term> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  AnswerSet a;
  a.kind = Kind::kBindings;
  a.values = std::move(values);
  return a;
}

AnswerSet AnswerSet::boolean(bool truth) {
  AnswerSet a;
  a.kind = Kind::kBoolean;
  a.truth = truth;
  return a;
}

}  // namespace lexqa
