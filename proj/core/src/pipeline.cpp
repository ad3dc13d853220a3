#include "lexqa/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lexqa/conllu.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/numerize.hpp"
#include "lexqa/ontology_matcher.hpp"
#include "lexqa/remote_endpoint.hpp"
#include "lexqa/sparql_gen.hpp"
#include "lexqa/text.hpp"
#include "lexqa/triple_store.hpp"
#include "line_process.hpp"

namespace lexqa {

namespace {

using nlohmann::json;

// Serves one precomputed NER answer for every tree of a question.
class CachedNer : public NerProvider {
 public:
  explicit CachedNer(std::vector<ExternalEntity> items) : items_(std::move(items)) {}
  std::vector<ExternalEntity> annotate(const std::string&) override { return items_; }

 private:
  std::vector<ExternalEntity> items_;
};

std::chrono::milliseconds seconds_field(const json& j, const char* key,
                                        std::chrono::milliseconds fallback) {
  if (!j.contains(key)) return fallback;
  const double s = j.at(key).get<double>();
  if (s <= 0) throw ValidationError(std::string(key) + " must be positive");
  return std::chrono::milliseconds(static_cast<long long>(s * 1000));
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string tree_label(const DepTree& t) {
  return t.parser_tag + "/" + std::string(to_string(t.variant)) +
         (t.sent_id.empty() ? "" : "/" + t.sent_id);
}

}  // namespace

void PipelineConfig::validate() const {
  if (threshold < 0 || threshold > 1) throw ValidationError("threshold must be in [0,1]");
  if (weights.exact <= 0 || weights.relaxed <= 0 || weights.node_ratio <= 0) {
    throw ValidationError("score weights must be positive");
  }
  if (max_candidates == 0) throw ValidationError("maxCandidates must be at least 1");
  if (!kb_path.empty() && !kb_endpoint.empty()) {
    throw ValidationError("kb takes either a path or an endpoint, not both");
  }
  if (!ner_fixture.empty() && !ner_command.empty()) {
    throw ValidationError("ner takes either a fixture or a command, not both");
  }
  if (comparators.empty()) throw ValidationError("at least one comparator is required");
}

PipelineConfig PipelineConfig::parse(const std::string& json_text,
                                     const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("pipeline config: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("pipeline config must be a JSON object");
  reject_unknown(j,
                 {"lexicon", "labels", "kb", "parses", "parseCommand", "ner",
                  "maxCandidates", "maxDudesPerTree", "budgetSeconds", "queryBudgetSeconds",
                  "threshold", "weights", "multipliers", "comparators", "maxTrainResults",
                  "strategy", "maxEntriesPerNode", "maxEntitiesPerNode", "bothMainSides"},
                 "pipeline config");
  PipelineConfig c;
  try {
    if (j.contains("lexicon")) c.lexicon = resolve(base_dir, j.at("lexicon").get<std::string>());
    if (j.contains("labels")) c.labels = resolve(base_dir, j.at("labels").get<std::string>());
    if (j.contains("kb")) {
      const auto& kb = j.at("kb");
      reject_unknown(kb, {"path", "endpoint"}, "kb");
      if (kb.contains("path")) c.kb_path = resolve(base_dir, kb.at("path").get<std::string>());
      c.kb_endpoint = kb.value("endpoint", "");
    }
    for (const auto& p : j.value("parses", json::array())) {
      c.parses.push_back(resolve(base_dir, p.get<std::string>()));
    }
    c.parse_command = j.value("parseCommand", "");
    if (j.contains("ner") && !j.at("ner").is_null()) {
      const auto& ner = j.at("ner");
      reject_unknown(ner, {"fixture", "command", "timeoutSeconds"}, "ner");
      if (ner.contains("fixture")) {
        c.ner_fixture = resolve(base_dir, ner.at("fixture").get<std::string>());
      }
      c.ner_command = ner.value("command", "");
      c.ner_timeout = seconds_field(ner, "timeoutSeconds", c.ner_timeout);
    }
    c.max_candidates = j.value("maxCandidates", c.max_candidates);
    c.max_dudes_per_tree = j.value("maxDudesPerTree", c.max_dudes_per_tree);
    c.budget = seconds_field(j, "budgetSeconds", c.budget);
    c.query_budget = seconds_field(j, "queryBudgetSeconds", c.query_budget);
    c.threshold = j.value("threshold", c.threshold);
    if (j.contains("weights")) {
      const auto w = j.at("weights").get<std::vector<double>>();
      if (w.size() != 3) throw ValidationError("weights needs three values");
      c.weights = {w[0], w[1], w[2]};
    }
    if (j.contains("multipliers")) {
      const auto m = j.at("multipliers").get<std::vector<double>>();
      if (m.size() != 3) throw ValidationError("multipliers needs three values");
      c.multipliers = {m[0], m[1], m[2]};
    }
    if (j.contains("comparators")) {
      c.comparators.clear();
      for (const auto& cj : j.at("comparators")) {
        reject_unknown(cj,
                       {"type", "command", "timeoutSeconds", "scoreWeight", "patternPenalty",
                        "plausibilityWeight", "priorCount"},
                       "comparator");
        ComparatorSpec s;
        s.type = cj.value("type", "baseline");
        if (s.type != "baseline" && s.type != "process") {
          throw ValidationError("unknown comparator type '" + s.type + "'");
        }
        s.command = cj.value("command", "");
        if (s.type == "process" && s.command.empty()) {
          throw ValidationError("process comparator needs a command");
        }
        s.timeout = seconds_field(cj, "timeoutSeconds", s.timeout);
        s.baseline.score_weight = cj.value("scoreWeight", s.baseline.score_weight);
        s.baseline.pattern_penalty = cj.value("patternPenalty", s.baseline.pattern_penalty);
        s.baseline.plausibility_weight =
            cj.value("plausibilityWeight", s.baseline.plausibility_weight);
        s.baseline.prior_count = cj.value("priorCount", s.baseline.prior_count);
        c.comparators.push_back(s);
      }
    }
    c.max_train_results = j.value("maxTrainResults", c.max_train_results);
    c.strategy = j.value("strategy", c.strategy);
    c.compose.max_entries_per_node = j.value("maxEntriesPerNode", c.compose.max_entries_per_node);
    c.compose.max_entities_per_node =
        j.value("maxEntitiesPerNode", c.compose.max_entities_per_node);
    c.compose.both_main_sides = j.value("bothMainSides", c.compose.both_main_sides);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("pipeline config: ") + e.what());
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.parent_path());
}

Pipeline::Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  if (cfg_.lexicon.empty()) throw ValidationError("config names no lexicon");
  lex_ = load_lexicon(cfg_.lexicon);
  if (!cfg_.labels.empty()) index_ = LabelIndex::build(read_label_source(cfg_.labels));
  if (!cfg_.kb_endpoint.empty()) {
    kb_ = std::make_shared<RemoteEndpoint>(cfg_.kb_endpoint);
  } else if (!cfg_.kb_path.empty()) {
    kb_ = std::make_shared<TripleStore>(TripleStore::load_ntriples(cfg_.kb_path));
  } else {
    throw ValidationError("config names no knowledge base");
  }
  if (!cfg_.ner_fixture.empty()) {
    ner_ = std::make_shared<FixtureNerProvider>(FixtureNerProvider::load(cfg_.ner_fixture));
  } else if (!cfg_.ner_command.empty()) {
    ner_ = std::make_shared<SubprocessNerProvider>(cfg_.ner_command, cfg_.ner_timeout);
  }
  for (const auto& p : cfg_.parses) {
    for (auto& t : read_conllu(p)) {
      if (!t.text.empty()) parse_bank_.emplace(text::normalize(t.text), t);
      if (!t.sent_id.empty()) parse_bank_.emplace("#" + t.sent_id, std::move(t));
    }
  }
  init_comparators();
}

Pipeline::Pipeline(PipelineConfig cfg, Lexicon lex, LabelIndex index,
                   std::shared_ptr<KnowledgeBase> kb, std::shared_ptr<NerProvider> ner)
    : cfg_(std::move(cfg)),
      lex_(std::move(lex)),
      index_(std::move(index)),
      kb_(std::move(kb)),
      ner_(std::move(ner)) {
  cfg_.validate();
  if (!kb_) throw ValidationError("pipeline needs a knowledge base");
  init_comparators();
}

void Pipeline::init_comparators() {
  for (const auto& s : cfg_.comparators) {
    if (s.type == "process") {
      comparators_.push_back(std::make_shared<SubprocessComparator>(s.command, s.timeout));
    } else {
      comparators_.push_back(std::make_shared<BaselineComparator>(s.baseline));
    }
  }
}

Strategy Pipeline::default_strategy() const {
  return Strategy::parse(cfg_.strategy, comparators_);
}

std::vector<DepTree> Pipeline::parses_for(const std::string& question,
                                          const std::string& id) const {
  std::vector<DepTree> out;
  const auto add_range = [&](const std::string& key) {
    auto [b, e] = parse_bank_.equal_range(key);
    for (auto it = b; it != e; ++it) out.push_back(it->second);
  };
  add_range(text::normalize(question));
  if (out.empty() && !id.empty()) add_range("#" + id);
  if (out.empty() && !cfg_.parse_command.empty()) {
    out = parse_conllu(detail::run_capture(cfg_.parse_command, question + "\n", cfg_.budget));
  }
  return out;
}

std::vector<PreparedTree> Pipeline::prepare(const std::string& question,
                                            const std::vector<DepTree>& parses,
                                            std::vector<std::string>* messages) const {
  Diagnostics diag;
  std::vector<ExternalEntity> external;
  if (ner_) {
    try {
      external = ner_->annotate(question);
    } catch (const std::exception& e) {
      diag.messages.push_back(std::string("ner provider failed: ") + e.what());
    }
  }
  CachedNer ner(std::move(external));
  MatcherOptions mopts;
  mopts.threshold = cfg_.threshold;

  std::vector<DepTree> unique;
  for (const auto& p : parses) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](const DepTree& u) { return u.same_structure(p); });
    if (!seen) unique.push_back(p);
  }

  std::vector<ScoredTree> scored;
  std::vector<MergeTrace> traces;
  for (const auto& parse : unique) {
    for (const auto& variant : numerize_variants(parse)) {
      auto [generic, gtrace] = apply_generic_rules(variant, &lex_);
      auto [marked, mtrace] = apply_marker_rules(generic, lex_);
      const auto spans = detect_entity_spans(index_, marked, &ner, mopts, &diag);
      for (auto& [merged, etrace] : apply_entity_merging(marked, spans)) {
        DepTree t = match_entities(index_, merged, &ner, mopts, &diag);
        t = match_properties(lex_, t, mopts);
        const bool dup = std::any_of(scored.begin(), scored.end(), [&](const ScoredTree& s) {
          return s.tree.same_structure(t) && s.tree.nodes == t.nodes;
        });
        if (dup) continue;
        MergeTrace trace = gtrace;
        trace.append(mtrace);
        trace.append(etrace);
        const auto score = score_tree(t, cfg_.weights, cfg_.multipliers);
        scored.push_back({std::move(t), score});
        traces.push_back(std::move(trace));
      }
    }
  }
  std::vector<std::size_t> order(scored.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored_tree_before(scored[a], scored[b]);
  });
  std::vector<PreparedTree> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& s = scored[order[k]];
    PreparedTree p{std::move(s.tree), s.score, std::move(traces[order[k]]), {}};
    p.id = tree_label(p.tree) + "#" + std::to_string(k);
    out.push_back(std::move(p));
  }
  if (messages) {
    messages->insert(messages->end(), diag.messages.begin(), diag.messages.end());
  }
  return out;
}

PipelineRun Pipeline::answer(const std::string& question,
                             const std::vector<DepTree>& parses) const {
  return answer(question, parses, std::chrono::steady_clock::now() + cfg_.budget);
}

PipelineRun Pipeline::answer(const std::string& question, const std::vector<DepTree>& parses,
                             std::chrono::steady_clock::time_point deadline) const {
  using Clock = std::chrono::steady_clock;
  deadline = std::min(deadline, Clock::now() + cfg_.budget);
  PipelineRun run;
  run.question = question;
  const auto trees = prepare(question, parses, &run.messages);
  std::set<std::string> seen;
  for (const auto& pt : trees) {
    if (run.candidates.size() >= cfg_.max_candidates || run.budget_exhausted) break;
    ++run.trees_considered;
    TreeDiagnostic diag{pt.id, pt.score, 0, 0};
    compose_tree(
        pt.tree, lex_,
        [&](const Dudes& d) {
          if (Clock::now() > deadline) {
            run.budget_exhausted = true;
            return false;
          }
          ++diag.finals;
          QueryIR ir;
          try {
            ir = to_query(d);
          } catch (const QueryGenerationError&) {
            ++run.pruned_dudes;
            return diag.finals < cfg_.max_dudes_per_tree;
          }
          auto query = serialize(ir);
          if (!seen.insert(query).second) {
            ++run.duplicate_queries;
            return diag.finals < cfg_.max_dudes_per_tree;
          }
          const auto left =
              std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
          CandidateQuery c;
          try {
            c.answers = kb_->execute(query, std::min(cfg_.query_budget, left));
          } catch (const Error& e) {
            ++run.failed_queries;
            run.messages.push_back("query failed: " + std::string(e.what()));
            return diag.finals < cfg_.max_dudes_per_tree;
          }
          c.query_text = std::move(query);
          c.ir = std::move(ir);
          c.dudes_text = canonical_text(d);
          c.tree_score = pt.score.total;
          c.enum_index = static_cast<int>(run.candidates.size());
          c.result_count = c.answers.size();
          c.tree_id = pt.id;
          run.candidates.push_back(std::move(c));
          ++diag.candidates;
          return run.candidates.size() < cfg_.max_candidates &&
                 diag.finals < cfg_.max_dudes_per_tree;
        },
        cfg_.compose);
    run.trees.push_back(diag);
  }
  return run;
}

PipelineRun answer_question(const PipelineConfig& cfg, const std::vector<DepTree>& parses,
                            const std::string& question) {
  return Pipeline(cfg).answer(question, parses);
}

}  // namespace lexqa
