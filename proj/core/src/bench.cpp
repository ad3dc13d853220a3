#include "lexqa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lexqa/errors.hpp"

namespace lexqa {

namespace {

using Clock = std::chrono::steady_clock;

struct QuestionOutcome {
  std::vector<std::optional<CandidateQuery>> chosen;  // per strategy
  std::size_t candidates = 0;
  double elapsed_ms = 0.0;
  std::vector<std::string> warnings;
};

QuestionOutcome evaluate_one(const Pipeline& pipeline, const BenchQuestion& q,
                             const std::vector<Strategy>& strategies, const BenchOptions& opts,
                             Clock::time_point deadline) {
  QuestionOutcome out;
  out.chosen.resize(strategies.size());
  const auto start = Clock::now();
  try {
    const auto parses = pipeline.parses_for(q.text, q.id);
    if (parses.empty()) out.warnings.push_back(q.id + ": no parse available");
    const auto run = pipeline.answer(q.text, parses, deadline);
    out.candidates = run.candidates.size();
    if (run.budget_exhausted) {
      out.warnings.push_back(q.id + ": budget exhausted");
    } else {
      const auto cands = filter_candidates(run.candidates, opts.max_train_results);
      std::map<std::vector<Comparator*>, ComparisonTable> tables;
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        const auto& st = strategies[s];
        const ComparisonTable* table = nullptr;
        if (st.kind != Strategy::Kind::kBestScore) {
          std::vector<Comparator*> key;
          for (const auto& c : st.ensemble) key.push_back(c.get());
          auto it = tables.find(key);
          if (it == tables.end()) {
            it = tables.emplace(key, compare_all(st.ensemble, cands, q.text)).first;
          }
          table = &it->second;
        }
        out.chosen[s] = select(st, cands, q.text, &q.gold_answers, table);
      }
    }
  } catch (const std::exception& e) {
    out.warnings.push_back(q.id + ": " + e.what());
    std::fill(out.chosen.begin(), out.chosen.end(), std::nullopt);
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return out;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

QuestionEval score_selection(const std::string& id, const std::optional<CandidateQuery>& chosen,
                             const AnswerSet& gold) {
  QuestionEval e;
  e.id = id;
  if (!chosen) {
    e.confusion.fn = gold.size();
    return e;
  }
  e.answered = true;
  e.selected_query = chosen->query_text;
  e.confusion = confusion(chosen->answers, gold);
  e.prf = question_prf(e.confusion);
  return e;
}

BenchRun run_benchmark(const Pipeline& pipeline, const std::vector<BenchQuestion>& questions,
                       const std::vector<Strategy>& strategies, const BenchOptions& opts) {
  if (opts.workers == 0) throw ValidationError("workers must be at least 1");
  BenchRun run;
  const auto start = Clock::now();
  const auto total_deadline = start + opts.total_budget;
  std::vector<QuestionOutcome> outcomes(questions.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::min(opts.workers, std::max<std::size_t>(questions.size(), 1));

  const auto work = [&] {
    for (std::size_t i = next++; i < questions.size(); i = next++) {
      const auto now = Clock::now();
      const std::size_t remaining = questions.size() - i;
      const std::size_t rounds = (remaining + workers - 1) / workers;
      const auto slice = (total_deadline - now) / static_cast<long>(rounds);
      outcomes[i] = evaluate_one(pipeline, questions[i], strategies, opts,
                                 std::min(total_deadline, now + slice));
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  run.within_budget = Clock::now() <= total_deadline;

  if (questions.empty()) run.warnings.push_back("dataset has no questions");
  for (const auto& o : outcomes) {
    run.warnings.insert(run.warnings.end(), o.warnings.begin(), o.warnings.end());
  }
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    EvalReport rep;
    rep.strategy = strategies[s].name();
    std::vector<Confusion> cs;
    std::vector<Prf> ps;
    for (std::size_t i = 0; i < questions.size(); ++i) {
      auto e = score_selection(questions[i].id, outcomes[i].chosen[s], questions[i].gold_answers);
      e.elapsed_ms = outcomes[i].elapsed_ms;
      rep.candidates_generated += outcomes[i].candidates;
      cs.push_back(e.confusion);
      ps.push_back(e.prf);
      rep.per_question.push_back(std::move(e));
    }
    rep.micro = micro_prf(cs);
    rep.macro = macro_prf(ps);
    run.reports.push_back(std::move(rep));
  }
  return run;
}

std::string report_json(const BenchRun& run, bool include_timing) {
  using nlohmann::ordered_json;
  const auto prf = [](const Prf& p) {
    return ordered_json{{"precision", p.p}, {"recall", p.r}, {"f1", p.f1}};
  };
  ordered_json reports = ordered_json::array();
  for (const auto& r : run.reports) {
    ordered_json qs = ordered_json::array();
    for (const auto& q : r.per_question) {
      ordered_json j{{"id", q.id},
                     {"answered", q.answered},
                     {"tp", q.confusion.tp},
                     {"fp", q.confusion.fp},
                     {"fn", q.confusion.fn},
                     {"f1", q.prf.f1},
                     {"query", q.selected_query}};
      if (include_timing) j["elapsedMs"] = q.elapsed_ms;
      qs.push_back(std::move(j));
    }
    reports.push_back({{"strategy", r.strategy},
                       {"micro", prf(r.micro)},
                       {"macro", prf(r.macro)},
                       {"candidatesGenerated", r.candidates_generated},
                       {"questions", std::move(qs)}});
  }
  ordered_json out{{"reports", std::move(reports)}, {"warnings", run.warnings}};
  if (include_timing) out["withinBudget"] = run.within_budget;
  return out.dump(2);
}

std::string report_table(const BenchRun& run) {
  std::vector<std::vector<std::string>> rows{
      {"Strategy", "Micro P", "Micro R", "Micro F1", "Macro P", "Macro R", "Macro F1"}};
  for (const auto& r : run.reports) {
    rows.push_back({r.strategy, fixed(r.micro.p, 4), fixed(r.micro.r, 4), fixed(r.micro.f1, 4),
                    fixed(r.macro.p, 4), fixed(r.macro.r, 4), fixed(r.macro.f1, 4)});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << " | ";
      os << row[c] << std::string(width[c] - row[c].size(), ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace lexqa
