#include "lexqa/selector.hpp"

#include <algorithm>
#include <numeric>

#include "lexqa/errors.hpp"
#include "lexqa/metrics.hpp"

namespace lexqa {

std::size_t result_limit(std::size_t max_train_results) {
  return max_train_results * 11 / 10;
}

std::vector<CandidateQuery> filter_candidates(const std::vector<CandidateQuery>& cands,
                                              std::size_t max_train_results) {
  const std::size_t limit = result_limit(max_train_results);
  std::vector<CandidateQuery> out;
  for (const auto& c : cands) {
    const bool ask = c.ir.form == IrForm::kAsk || c.answers.is_boolean();
    if (!ask && c.result_count == 0) continue;
    if (c.result_count > limit) continue;
    out.push_back(c);
  }
  return out;
}

Strategy Strategy::best_score() { return Strategy{}; }

Strategy Strategy::most_wins(double margin, std::vector<std::shared_ptr<Comparator>> ensemble) {
  Strategy s;
  s.kind = Kind::kMostWins;
  s.margin = margin;
  s.ensemble = std::move(ensemble);
  return s;
}

Strategy Strategy::accum(AccumMode mode, std::vector<std::shared_ptr<Comparator>> ensemble) {
  Strategy s;
  s.kind = Kind::kAccum;
  s.mode = mode;
  s.ensemble = std::move(ensemble);
  return s;
}

Strategy Strategy::parse(const std::string& spec,
                         std::vector<std::shared_ptr<Comparator>> ensemble) {
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "bestscore" && arg.empty()) return best_score();
  if (head == "mostwins") {
    double p = 0.0;
    try {
      std::size_t used = 0;
      p = arg.empty() ? 0.0 : std::stod(arg, &used);
      if (!arg.empty() && used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ValidationError("bad MostWins margin in '" + spec + "'");
    }
    if (p < 0 || p > 1) throw ValidationError("MostWins margin must be in [0,1]");
    return most_wins(p, std::move(ensemble));
  }
  if (head == "accum" && (arg == "logits" || arg == "sigmoid")) {
    return accum(arg == "logits" ? AccumMode::kLogits : AccumMode::kSigmoid,
                 std::move(ensemble));
  }
  throw ValidationError("unknown strategy '" + spec + "'");
}

std::string Strategy::name() const {
  switch (kind) {
    case Kind::kBestScore:
      return "BestScore";
    case Kind::kMostWins: {
      std::string m = format_number(margin);
      return "MostWins_" + m + "^top" + std::to_string(ensemble.size());
    }
    case Kind::kAccum:
      return std::string("Accum_") + (mode == AccumMode::kLogits ? "logits" : "sigmoid") +
             "^top" + std::to_string(ensemble.size());
  }
  return "?";
}

ComparisonTable compare_all(const std::vector<std::shared_ptr<Comparator>>& ensemble,
                            const std::vector<CandidateQuery>& cands,
                            const std::string& question) {
  ComparisonTable t;
  const std::size_t n = cands.size();
  for (const auto& comp : ensemble) {
    std::vector<std::vector<ComparatorOutput>> m(n, std::vector<ComparatorOutput>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) m[i][j] = comp->compare(question, cands[i], cands[j]);
      }
    }
    t.out.push_back(std::move(m));
  }
  return t;
}

std::optional<CandidateQuery> select(const Strategy& strategy,
                                     const std::vector<CandidateQuery>& cands,
                                     const std::string& question, const AnswerSet* gold,
                                     const ComparisonTable* table) {
  if (cands.empty()) return std::nullopt;
  const std::size_t n = cands.size();
  // Work in enum_index order so the result does not depend on input order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].enum_index < cands[b].enum_index;
  });

  std::vector<double> score(n, 0.0);
  if (strategy.kind == Strategy::Kind::kBestScore) {
    if (!gold) throw ContractViolation("BestScore needs gold answers");
    for (std::size_t i = 0; i < n; ++i) score[i] = clamped_f1(cands[i].answers, *gold);
    std::size_t best = order[0];
    for (std::size_t k : order) {
      if (score[k] > score[best]) best = k;
    }
    return cands[best];
  }

  if (strategy.ensemble.empty()) throw ContractViolation("strategy needs a comparator");
  ComparisonTable local;
  if (!table) {
    local = compare_all(strategy.ensemble, cands, question);
    table = &local;
  }
  const bool raw = strategy.kind == Strategy::Kind::kAccum && strategy.mode == AccumMode::kLogits;
  const auto pick = [raw](const ComparatorOutput& o, bool a_side) {
    if (raw) return a_side ? o.raw_a : o.raw_b;
    return a_side ? o.sig_a : o.sig_b;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const std::size_t i = order[x];
      const std::size_t j = order[y];
      double si = 0.0;
      double sj = 0.0;
      for (const auto& m : table->out) {
        si += (pick(m[i][j], true) + pick(m[j][i], false)) / 2.0;
        sj += (pick(m[i][j], false) + pick(m[j][i], true)) / 2.0;
      }
      if (strategy.kind == Strategy::Kind::kMostWins) {
        if (si - sj > strategy.margin) score[i] += 1.0;
        if (sj - si > strategy.margin) score[j] += 1.0;
      } else {
        score[i] += si;
        score[j] += sj;
      }
    }
  }
  std::size_t best = order[0];
  for (std::size_t k : order) {
    if (score[k] > score[best] ||
        (score[k] == score[best] && cands[k].tree_score > cands[best].tree_score)) {
      best = k;
    }
  }
  return cands[best];
}

}  // namespace lexqa
