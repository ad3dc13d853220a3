#include "lexqa/dudes.hpp"

#include <algorithm>
#include <map>

#include "lexqa/errors.hpp"

namespace lexqa {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Operand sub(const Operand& o, Var from, Var to) {
  if (const auto* v = std::get_if<Var>(&o); v && *v == from) return to;
  return o;
}

Var sub(Var v, Var from, Var to) { return v == from ? to : v; }

void add_var(std::vector<Var>& u, Var v) {
  auto pos = std::lower_bound(u.begin(), u.end(), v);
  if (pos == u.end() || *pos != v) u.insert(pos, v);
}

void add_condition(std::vector<Condition>& cs, Condition c) {
  if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(std::move(c));
}

std::string operand_text(const Operand& o, const std::map<int, int>& names) {
  if (const auto* v = std::get_if<Var>(&o)) {
    auto it = names.find(v->id);
    return "v" + std::to_string(it == names.end() ? v->id : it->second);
  }
  const auto& t = std::get<Term>(o);
  return t.is_iri() ? compact_iri(t.value) : t.to_string();
}

std::string condition_text(const Condition& c, const std::map<int, int>& names) {
  const auto var = [&](Var v) { return operand_text(v, names); };
  return std::visit(
      Overloaded{
          [&](const PropertyAtom& a) {
            return compact_iri(a.pred) + "(" + operand_text(a.subj, names) + "," +
                   operand_text(a.obj, names) + ")";
          },
          [&](const Equality& e) { return var(e.v) + "=" + operand_text(e.t, names); },
          [&](const ClassAtom& a) { return compact_iri(a.cls) + "(" + var(a.v) + ")"; },
          [&](const Comparison& cmp) {
            std::string rhs = std::holds_alternative<Var>(cmp.rhs)
                                  ? var(std::get<Var>(cmp.rhs))
                                  : format_number(std::get<double>(cmp.rhs));
            return var(cmp.lhs) + std::string(to_string(cmp.op)) + rhs;
          },
          [&](const Aggregation& a) { return "count(" + var(a.in) + "," + var(a.out) + ")"; },
          [&](const Ordering& o) {
            return std::string(o.direction == Degree::kMax ? "max" : "min") + "(" +
                   var(o.v) + "," + std::to_string(o.limit) + ")";
          },
          [&](const QueryFormHint& h) {
            return std::string(h.form == QueryForm::kAsk ? "ask" : "select");
          },
      },
      c);
}

}  // namespace

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
  }
  return "?";
}

std::vector<Var> vars_of(const Condition& c) {
  return std::visit(
      Overloaded{
          [](const PropertyAtom& a) {
            std::vector<Var> out;
            if (const auto* v = std::get_if<Var>(&a.subj)) out.push_back(*v);
            if (const auto* v = std::get_if<Var>(&a.obj)) out.push_back(*v);
            return out;
          },
          [](const Equality& e) { return std::vector<Var>{e.v}; },
          [](const ClassAtom& a) { return std::vector<Var>{a.v}; },
          [](const Comparison& cmp) {
            std::vector<Var> out{cmp.lhs};
            if (const auto* v = std::get_if<Var>(&cmp.rhs)) out.push_back(*v);
            return out;
          },
          [](const Aggregation& a) { return std::vector<Var>{a.in, a.out}; },
          [](const Ordering& o) { return std::vector<Var>{o.v}; },
          [](const QueryFormHint&) { return std::vector<Var>{}; },
      },
      c);
}

Condition substitute(const Condition& c, Var from, Var to) {
  return std::visit(
      Overloaded{
          [&](const PropertyAtom& a) -> Condition {
            return PropertyAtom{a.pred, sub(a.subj, from, to), sub(a.obj, from, to)};
          },
          [&](const Equality& e) -> Condition { return Equality{sub(e.v, from, to), e.t}; },
          [&](const ClassAtom& a) -> Condition { return ClassAtom{a.cls, sub(a.v, from, to)}; },
          [&](const Comparison& cmp) -> Condition {
            Comparison out = cmp;
            out.lhs = sub(cmp.lhs, from, to);
            if (const auto* v = std::get_if<Var>(&cmp.rhs)) out.rhs = sub(*v, from, to);
            return out;
          },
          [&](const Aggregation& a) -> Condition {
            return Aggregation{a.kind, sub(a.in, from, to), sub(a.out, from, to)};
          },
          [&](const Ordering& o) -> Condition {
            return Ordering{sub(o.v, from, to), o.direction, o.limit};
          },
          [&](const QueryFormHint& h) -> Condition { return h; },
      },
      c);
}

bool Dudes::has(Var v) const {
  return std::binary_search(universe.begin(), universe.end(), v);
}

bool Dudes::hint_only() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) {
    return std::holds_alternative<QueryFormHint>(c);
  });
}

void Dudes::validate() const {
  if (!std::is_sorted(universe.begin(), universe.end()) ||
      std::adjacent_find(universe.begin(), universe.end()) != universe.end()) {
    throw ContractViolation("DUDES universe must be sorted and unique");
  }
  if (main && !has(*main)) throw ContractViolation("main variable outside universe");
  for (const auto& p : pairs) {
    if (!has(p.v)) throw ContractViolation("selection pair variable outside universe");
  }
  for (const auto& c : conditions) {
    for (Var v : vars_of(c)) {
      if (!has(v)) throw ContractViolation("condition variable outside universe");
    }
  }
}

Dudes entity_dudes(VarFactory& vars, const Term& value) {
  const Var z = vars.fresh();
  return Dudes{z, {z}, {Equality{z, value}}, {}};
}

Dudes property_dudes(VarFactory& vars, const LexicalEntry& entry, MainSide side) {
  if (entry.frame == Frame::kAdjectiveSuperlative) {
    throw ContractViolation("superlative entry '" + entry.id +
                            "' needs superlative_dudes");
  }
  const Var x = vars.fresh();
  const Var y = vars.fresh();
  const Operand ox = x;
  const Operand oy = y;
  PropertyAtom atom = entry.subj_arg == SubjArg::kSubjectOfProperty
                          ? PropertyAtom{entry.reference, ox, oy}
                          : PropertyAtom{entry.reference, oy, ox};
  return Dudes{side == MainSide::kHead ? y : x,
               {x, y},
               {std::move(atom)},
               {{x, entry.marker}, {y, std::nullopt}}};
}

Dudes superlative_dudes(VarFactory& vars, const LexicalEntry& entry) {
  if (entry.frame != Frame::kAdjectiveSuperlative || !entry.degree) {
    throw ValidationError("entry '" + entry.id + "' is not a superlative with a degree");
  }
  const Var x = vars.fresh();
  const Var y = vars.fresh();
  return Dudes{x,
               {x, y},
               {PropertyAtom{entry.reference, x, y}, Ordering{y, *entry.degree, 1}},
               {{x, std::nullopt}}};
}

Dudes class_dudes(VarFactory& vars, const LexicalEntry& entry) {
  const Var x = vars.fresh();
  return Dudes{x, {x}, {ClassAtom{entry.reference, x}}, {}};
}

Dudes ask_dudes() { return Dudes{std::nullopt, {}, {QueryFormHint{QueryForm::kAsk}}, {}}; }

Dudes count_dudes(VarFactory& vars) {
  const Var a = vars.fresh();
  const Var n = vars.fresh();
  return Dudes{a, {a, n}, {Aggregation{AggKind::kCount, a, n}}, {{a, std::nullopt}}};
}

Dudes comparison_dudes(VarFactory& vars, CmpOp op, double value) {
  const Var c = vars.fresh();
  return Dudes{c, {c}, {Comparison{op, c, value}}, {{c, std::nullopt}}};
}

Dudes compose(const Dudes& d1, const Dudes& d2, const SelectionPair& p) {
  if (std::find(d2.pairs.begin(), d2.pairs.end(), p) == d2.pairs.end()) {
    throw ContractViolation("selection pair does not belong to the host DUDES");
  }
  if (!d1.main) throw ContractViolation("argument DUDES has no main variable");
  for (Var v : d1.universe) {
    if (d2.has(v)) throw ContractViolation("DUDES universes are not disjoint");
  }
  const Var x = p.v;
  const Var v1 = *d1.main;

  Dudes out;
  for (Var v : d2.universe) add_var(out.universe, sub(v, x, v1));
  for (Var v : d1.universe) add_var(out.universe, v);

  for (const auto& c : d2.conditions) add_condition(out.conditions, substitute(c, x, v1));
  for (const auto& c : d1.conditions) add_condition(out.conditions, c);

  bool removed = false;
  for (const auto& q : d2.pairs) {
    if (!removed && q == p) {
      removed = true;
      continue;
    }
    out.pairs.push_back({sub(q.v, x, v1), q.marker});
  }
  for (const auto& q : d1.pairs) out.pairs.push_back(q);

  out.main = (d2.main && *d2.main == x) ? d1.main : d2.main;
  return out;
}

std::string to_string(const Condition& c) { return condition_text(c, {}); }

std::string canonical_text(const Dudes& d) {
  // Sort by variable-free skeleton so numbering does not depend on the
  // original ids, then number variables by first occurrence.
  std::map<int, int> blank;
  for (Var v : d.universe) blank[v.id] = -1;
  std::vector<std::pair<std::string, const Condition*>> order;
  for (const auto& c : d.conditions) order.emplace_back(condition_text(c, blank), &c);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::map<int, int> names;
  const auto name = [&](Var v) {
    if (!names.count(v.id)) {
      const int next = static_cast<int>(names.size());
      names[v.id] = next;
    }
  };
  if (d.main) name(*d.main);
  for (const auto& [skeleton, c] : order) {
    for (Var v : vars_of(*c)) name(v);
  }
  for (const auto& p : d.pairs) name(p.v);
  for (Var v : d.universe) name(v);

  std::vector<std::string> conds;
  for (const auto& [skeleton, c] : order) conds.push_back(condition_text(*c, names));
  std::sort(conds.begin(), conds.end());

  std::string out = "main=";
  out += d.main ? "v" + std::to_string(names[d.main->id]) : std::string("e");
  out += " U={";
  std::vector<int> ids;
  for (Var v : d.universe) ids.push_back(names[v.id]);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out += (i ? ",v" : "v") + std::to_string(ids[i]);
  }
  out += "} C={";
  for (std::size_t i = 0; i < conds.size(); ++i) out += (i ? "; " : "") + conds[i];
  out += "} S=[";
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    out += (i ? "," : "");
    out += "(v" + std::to_string(names[d.pairs[i].v.id]) + "," +
           (d.pairs[i].marker ? *d.pairs[i].marker : std::string("e")) + ")";
  }
  out += "]";
  return out;
}

}  // namespace lexqa
