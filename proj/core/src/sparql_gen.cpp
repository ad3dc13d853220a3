#include "lexqa/sparql_gen.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lexqa/errors.hpp"

namespace lexqa {

namespace {

bool is_number_type(const std::string& dt) {
  return dt == ns::kXsdInteger || dt == ns::kXsdDecimal || dt == ns::kXsdDouble;
}

std::size_t var_count(const TriplePattern& p) {
  return std::holds_alternative<Var>(p.subj) + std::holds_alternative<Var>(p.pred) +
         std::holds_alternative<Var>(p.obj);
}

void collect(const Operand& o, std::vector<Var>& out) {
  if (const auto* v = std::get_if<Var>(&o)) {
    if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
  }
}

}  // namespace

std::string_view to_string(IrForm f) {
  switch (f) {
    case IrForm::kSelect: return "select";
    case IrForm::kAsk: return "ask";
    case IrForm::kCount: return "count";
  }
  return "?";
}

void QueryIR::validate() const {
  std::vector<Var> in_patterns;
  for (const auto& p : patterns) {
    collect(p.subj, in_patterns);
    collect(p.pred, in_patterns);
    collect(p.obj, in_patterns);
  }
  for (Var v : projection) {
    if (std::find(in_patterns.begin(), in_patterns.end(), v) == in_patterns.end()) {
      throw ContractViolation("projected variable does not occur in the patterns");
    }
  }
  if (form == IrForm::kAsk && !projection.empty()) {
    throw ContractViolation("ask query cannot project variables");
  }
}

bool BoundnessReport::is_bound(Var v) const {
  return std::binary_search(bound.begin(), bound.end(), v);
}

BoundnessReport analyze_boundness(const Dudes& d) {
  std::set<Var> bound;
  std::set<Var> in_atoms;
  for (const auto& c : d.conditions) {
    if (const auto* e = std::get_if<Equality>(&c)) bound.insert(e->v);
    if (std::holds_alternative<PropertyAtom>(c) || std::holds_alternative<ClassAtom>(c)) {
      for (Var v : vars_of(c)) in_atoms.insert(v);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : d.conditions) {
      if (const auto* a = std::get_if<Aggregation>(&c)) {
        if ((bound.count(a->in) || in_atoms.count(a->in)) && !bound.count(a->out)) {
          bound.insert(a->out);
          changed = true;
        }
      }
    }
  }
  BoundnessReport r;
  for (Var v : d.universe) (bound.count(v) ? r.bound : r.free).push_back(v);
  return r;
}

QueryIR to_query(const Dudes& d, const QueryOptions& opts) {
  std::map<Var, Term> eq;
  for (const auto& c : d.conditions) {
    if (const auto* e = std::get_if<Equality>(&c)) {
      auto [it, inserted] = eq.emplace(e->v, e->t);
      if (!inserted && it->second != e->t) {
        throw QueryGenerationError("conflicting equalities on one variable");
      }
    }
  }
  const auto op = [&](const Operand& o) -> Operand {
    if (!opts.inline_bound) return o;
    if (const auto* v = std::get_if<Var>(&o)) {
      if (auto it = eq.find(*v); it != eq.end()) return it->second;
    }
    return o;
  };

  QueryIR q;
  bool ask = false;
  const Aggregation* agg = nullptr;
  for (const auto& c : d.conditions) {
    if (const auto* a = std::get_if<PropertyAtom>(&c)) {
      q.patterns.push_back({op(a->subj), Term::iri(a->pred), op(a->obj)});
    } else if (const auto* k = std::get_if<ClassAtom>(&c)) {
      q.patterns.push_back({op(k->v), Term::iri(ns::kRdfType), Term::iri(k->cls)});
    } else if (const auto* cmp = std::get_if<Comparison>(&c)) {
      if (eq.count(cmp->lhs)) throw QueryGenerationError("comparison on a bound variable");
      q.filters.push_back(*cmp);
    } else if (const auto* o = std::get_if<Ordering>(&c)) {
      if (q.modifier) throw QueryGenerationError("more than one ordering");
      if (eq.count(o->v)) throw QueryGenerationError("ordering on a bound variable");
      q.modifier = OrderModifier{o->v, o->direction, o->limit};
    } else if (const auto* a = std::get_if<Aggregation>(&c)) {
      if (agg) throw QueryGenerationError("more than one aggregation");
      agg = a;
    } else if (const auto* h = std::get_if<QueryFormHint>(&c)) {
      ask = ask || h->form == QueryForm::kAsk;
    }
  }
  if (q.patterns.empty()) throw QueryGenerationError("no triple pattern to query");
  std::stable_sort(q.patterns.begin(), q.patterns.end(),
                   [](const TriplePattern& a, const TriplePattern& b) {
                     return var_count(a) < var_count(b);
                   });

  std::vector<Var> pattern_vars;
  for (const auto& p : q.patterns) {
    collect(p.subj, pattern_vars);
    collect(p.pred, pattern_vars);
    collect(p.obj, pattern_vars);
  }
  const auto in_patterns = [&](Var v) {
    return std::find(pattern_vars.begin(), pattern_vars.end(), v) != pattern_vars.end();
  };
  for (const auto& f : q.filters) {
    if (!in_patterns(f.lhs)) throw QueryGenerationError("filter on an unconstrained variable");
    if (const auto* v = std::get_if<Var>(&f.rhs); v && !in_patterns(*v)) {
      throw QueryGenerationError("filter on an unconstrained variable");
    }
  }
  if (q.modifier && !in_patterns(q.modifier->v)) {
    throw QueryGenerationError("ordering on an unconstrained variable");
  }
  if (!opts.inline_bound) {
    for (const auto& [v, t] : eq) {
      if (in_patterns(v)) q.values.emplace_back(v, t);
    }
  }

  const auto report = analyze_boundness(d);
  std::vector<Var> free;
  for (Var v : report.free) {
    if (in_patterns(v)) free.push_back(v);
  }

  if (ask) {
    if (agg) throw QueryGenerationError("ask form with an aggregation");
    q.form = IrForm::kAsk;
  } else if (agg) {
    if (!in_patterns(agg->in) || eq.count(agg->in)) {
      throw QueryGenerationError("count over a variable no pattern constrains");
    }
    q.form = IrForm::kCount;
    q.projection = {agg->in};
  } else {
    q.form = IrForm::kSelect;
    q.distinct = true;
    if (d.main && std::find(free.begin(), free.end(), *d.main) != free.end()) {
      q.projection = {*d.main};
    } else if (free.size() == 1) {
      q.projection = {free.front()};
    } else if (free.empty()) {
      throw QueryGenerationError("select query without a free variable");
    } else {
      throw QueryGenerationError("ambiguous projection");
    }
  }
  q.validate();
  return q;
}

std::string sparql_term(const Term& t) {
  if (t.is_iri()) return "<" + t.value + ">";
  if (t.is_blank()) return "_:" + t.value;
  if (is_number_type(t.datatype) && t.numeric()) return t.value;
  return t.to_string();
}

std::string serialize(const QueryIR& q) {
  std::map<Var, std::string> names;
  const bool project_as_answer = q.form == IrForm::kSelect && !q.projection.empty();
  if (project_as_answer) names[q.projection.front()] = "answer";
  int next = 0;
  const auto name = [&](Var v) -> const std::string& {
    auto it = names.find(v);
    if (it == names.end()) it = names.emplace(v, "v" + std::to_string(next++)).first;
    return it->second;
  };
  const auto operand = [&](const Operand& o) {
    if (const auto* v = std::get_if<Var>(&o)) return "?" + name(*v);
    return sparql_term(std::get<Term>(o));
  };

  std::string body;
  for (std::size_t i = 0; i < q.patterns.size(); ++i) {
    const auto& p = q.patterns[i];
    if (i) body += " . ";
    body += operand(p.subj) + " " + operand(p.pred) + " " + operand(p.obj);
  }
  for (const auto& [v, t] : q.values) {
    body += " VALUES ?" + name(v) + " { " + sparql_term(t) + " }";
  }
  for (const auto& f : q.filters) {
    const std::string rhs = std::holds_alternative<Var>(f.rhs)
                                ? "?" + name(std::get<Var>(f.rhs))
                                : format_number(std::get<double>(f.rhs));
    body += " FILTER(?" + name(f.lhs) + " " + std::string(to_string(f.op)) + " " + rhs + ")";
  }

  std::string head;
  switch (q.form) {
    case IrForm::kAsk:
      head = "ASK";
      break;
    case IrForm::kCount:
      head = "SELECT (COUNT(DISTINCT ?" + name(q.projection.front()) + ") AS ?answer)";
      break;
    case IrForm::kSelect:
      head = std::string("SELECT ") + (q.distinct ? "DISTINCT " : "");
      if (q.projection.empty()) {
        head += "*";
      } else {
        for (std::size_t i = 0; i < q.projection.size(); ++i) {
          head += (i ? " ?" : "?") + name(q.projection[i]);
        }
      }
      break;
  }
  std::string out = head + " WHERE { " + body + " }";
  if (q.modifier) {
    out += std::string(" ORDER BY ") + (q.modifier->direction == Degree::kMax ? "DESC" : "ASC") +
           "(?" + name(q.modifier->v) + ") LIMIT " + std::to_string(q.modifier->limit);
  }
  return out;
}

}  // namespace lexqa
