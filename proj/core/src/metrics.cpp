#include "lexqa/metrics.hpp"

#include <set>

namespace lexqa {

namespace {

std::pair<int, std::string> answer_key(const Term& t) {
  if (t.is_literal()) {
    if (auto v = t.numeric(); v && !t.datatype.empty() &&
                              t.datatype.rfind(std::string(ns::kXsd), 0) == 0) {
      return {1, format_number(*v)};
    }
    return {1, t.value};
  }
  return {t.is_iri() ? 0 : 2, t.value};
}

double ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

double harmonic(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

}  // namespace

Confusion confusion(const AnswerSet& system, const AnswerSet& gold) {
  Confusion c;
  if (gold.is_boolean() && system.is_boolean()) {
    if (gold.truth == system.truth) {
      c.tp = 1;
    } else {
      c.fp = 1;
      c.fn = 1;
    }
    return c;
  }
  if (gold.is_boolean()) {
    c.fp = system.values.size();
    c.fn = 1;
    return c;
  }
  if (system.is_boolean()) {
    c.fp = 1;
    c.fn = gold.values.size();
    return c;
  }
  std::set<std::pair<int, std::string>> g;
  for (const auto& t : gold.values) g.insert(answer_key(t));
  std::set<std::pair<int, std::string>> s;
  for (const auto& t : system.values) s.insert(answer_key(t));
  for (const auto& k : s) (g.count(k) ? c.tp : c.fp)++;
  for (const auto& k : g) {
    if (!s.count(k)) ++c.fn;
  }
  return c;
}

Prf question_prf(const Confusion& c) {
  if (c.tp == 0 && c.fp == 0 && c.fn == 0) return {1.0, 1.0, 1.0};
  Prf out;
  out.p = ratio(c.tp, c.tp + c.fp);
  out.r = ratio(c.tp, c.tp + c.fn);
  out.f1 = harmonic(out.p, out.r);
  return out;
}

Prf micro_prf(const std::vector<Confusion>& per_question) {
  Confusion sum;
  for (const auto& c : per_question) {
    sum.tp += c.tp;
    sum.fp += c.fp;
    sum.fn += c.fn;
  }
  Prf out;
  out.p = ratio(sum.tp, sum.tp + sum.fp);
  out.r = ratio(sum.tp, sum.tp + sum.fn);
  out.f1 = harmonic(out.p, out.r);
  return out;
}

Prf macro_prf(const std::vector<Prf>& per_question) {
  Prf out;
  if (per_question.empty()) return out;
  for (const auto& q : per_question) {
    out.p += q.p;
    out.r += q.r;
    out.f1 += q.f1;
  }
  const double n = static_cast<double>(per_question.size());
  out.p /= n;
  out.r /= n;
  out.f1 /= n;
  return out;
}

double clamped_f1(const AnswerSet& candidate, const AnswerSet& gold) {
  const auto c = confusion(candidate, gold);
  if (c.fp > 0 && c.fp >= 10 * c.tp) return 0.0;
  return question_prf(c).f1;
}

}  // namespace lexqa
