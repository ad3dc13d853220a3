#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lexqa/bench.hpp"
#include "lexqa/conllu.hpp"
#include "lexqa/dudes_composer.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/label_index.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/pipeline.hpp"
#include "lexqa/sparql_gen.hpp"
#include "lexqa/text.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Common {
  bool json = false;
};

std::vector<lexqa::DepTree> load_parses(const lexqa::Pipeline& p, const std::string& question,
                                        const std::string& conllu) {
  if (conllu.empty()) return p.parses_for(question);
  auto all = lexqa::read_conllu(conllu);
  std::vector<lexqa::DepTree> matching;
  const auto key = lexqa::text::normalize(question);
  for (const auto& t : all) {
    if (lexqa::text::normalize(t.text) == key) matching.push_back(t);
  }
  return matching.empty() ? all : matching;
}

ordered_json answers_json(const lexqa::AnswerSet& a) {
  if (a.is_boolean()) return a.truth;
  ordered_json out = ordered_json::array();
  for (const auto& t : a.values) out.push_back(t.to_string());
  return out;
}

int lexicon_validate(const std::string& path, const Common& c) {
  const auto lex = lexqa::load_lexicon(path);
  const auto counts = lex.frame_counts();
  if (c.json) {
    ordered_json frames = ordered_json::object();
    for (const auto& [f, n] : counts) frames[std::string(lexqa::to_string(f))] = n;
    std::cout << ordered_json{{"entries", lex.entries().size()}, {"frames", frames}}.dump(2)
              << "\n";
  } else {
    std::cout << "entries: " << lex.entries().size() << "\n";
    for (const auto& [f, n] : counts) std::cout << lexqa::to_string(f) << ": " << n << "\n";
  }
  return kOk;
}

int index_build(const std::string& labels, const std::string& out_dir, const Common& c) {
  const auto index = lexqa::LabelIndex::build(lexqa::read_label_source(labels));
  std::filesystem::create_directories(out_dir);
  const auto target = std::filesystem::path(out_dir) / "labels.tsv";
  index.save(target);
  if (c.json) {
    std::cout << ordered_json{{"labels", index.size()},
                              {"pairs", index.pair_count()},
                              {"skipped", index.skipped()},
                              {"path", target.string()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "labels: " << index.size() << "\npairs: " << index.pair_count()
              << "\nskipped: " << index.skipped() << "\nwritten: " << target.string() << "\n";
  }
  return kOk;
}

int answer(const std::string& config, const std::string& question, const std::string& conllu,
           const std::string& strategy, const Common& c) {
  const lexqa::Pipeline pipeline(lexqa::PipelineConfig::load(config));
  const auto parses = load_parses(pipeline, question, conllu);
  const auto run = pipeline.answer(question, parses);
  const auto cands =
      lexqa::filter_candidates(run.candidates, pipeline.config().max_train_results);
  auto st = strategy.empty() ? pipeline.default_strategy()
                             : lexqa::Strategy::parse(strategy, pipeline.comparators());
  if (st.kind == lexqa::Strategy::Kind::kBestScore) {
    throw lexqa::ValidationError("bestscore needs gold answers; use evaluate");
  }
  const auto chosen = lexqa::select(st, cands, question);
  if (c.json) {
    ordered_json j{{"question", question},
                   {"strategy", st.name()},
                   {"candidates", run.candidates.size()},
                   {"query", chosen ? chosen->query_text : ""},
                   {"answers", chosen ? answers_json(chosen->answers) : ordered_json::array()}};
    std::cout << j.dump(2) << "\n";
  } else if (!chosen) {
    std::cout << "no answer (" << run.candidates.size() << " candidates)\n";
  } else {
    std::cout << chosen->query_text << "\n";
    if (chosen->answers.is_boolean()) {
      std::cout << (chosen->answers.truth ? "true" : "false") << "\n";
    } else {
      for (const auto& t : chosen->answers.values) std::cout << t.to_string() << "\n";
    }
  }
  return kOk;
}

int evaluate(const std::string& config, const std::string& dataset,
             const std::vector<std::string>& strategy_specs, double budget, std::size_t workers,
             const std::string& out, const Common& c) {
  const lexqa::Pipeline pipeline(lexqa::PipelineConfig::load(config));
  const auto data = lexqa::load_dataset(dataset);
  std::vector<lexqa::Strategy> strategies;
  for (const auto& s : strategy_specs) {
    strategies.push_back(lexqa::Strategy::parse(s, pipeline.comparators()));
  }
  if (strategies.empty()) strategies.push_back(pipeline.default_strategy());
  lexqa::BenchOptions opts;
  opts.workers = workers;
  opts.total_budget = std::chrono::milliseconds(static_cast<long long>(budget * 1000));
  opts.max_train_results = pipeline.config().max_train_results;
  auto run = lexqa::run_benchmark(pipeline, data.questions, strategies, opts);
  run.warnings.insert(run.warnings.begin(), data.warnings.begin(), data.warnings.end());
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw lexqa::Error("cannot write report '" + out + "'");
    f << lexqa::report_json(run) << "\n";
  }
  if (c.json) {
    std::cout << lexqa::report_json(run) << "\n";
  } else {
    std::cout << lexqa::report_table(run);
    for (const auto& w : run.warnings) std::cerr << "warning: " << w << "\n";
  }
  return run.within_budget ? kOk : kFailure;
}

int explain(const std::string& config, const std::string& question, const std::string& conllu,
            std::size_t limit, const Common& c) {
  const lexqa::Pipeline pipeline(lexqa::PipelineConfig::load(config));
  const auto parses = load_parses(pipeline, question, conllu);
  std::vector<std::string> messages;
  const auto trees = pipeline.prepare(question, parses, &messages);
  ordered_json out{{"question", question}, {"trees", ordered_json::array()}};
  for (const auto& pt : trees) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : pt.tree.nodes) {
      ordered_json entities = ordered_json::array();
      for (const auto& m : n.entity_candidates) {
        entities.push_back(m.iri + " " + std::to_string(m.similarity));
      }
      ordered_json entries = ordered_json::array();
      for (const auto& m : n.entry_candidates) {
        entries.push_back(m.entry_id + (m.exact ? " exact" : "") +
                          (m.marker_matched ? " marker" : ""));
      }
      ordered_json nj{{"id", n.id},
                      {"phrase", n.phrase()},
                      {"head", n.head},
                      {"deprel", n.deprel},
                      {"entities", entities},
                      {"entries", entries}};
      if (n.special_mark) nj["mark"] = std::string(lexqa::to_string(*n.special_mark));
      if (n.numeric_value) nj["number"] = *n.numeric_value;
      if (n.case_marker) nj["caseMarker"] = *n.case_marker;
      nodes.push_back(std::move(nj));
    }
    ordered_json dudes = ordered_json::array();
    for (const auto& d : lexqa::first_k(pt.tree, pipeline.lexicon(), limit,
                                        pipeline.config().compose)) {
      ordered_json dj{{"dudes", lexqa::canonical_text(d)}};
      try {
        dj["query"] = lexqa::serialize(lexqa::to_query(d));
      } catch (const lexqa::QueryGenerationError& e) {
        dj["error"] = e.what();
      }
      dudes.push_back(std::move(dj));
    }
    out["trees"].push_back({{"id", pt.id},
                            {"score", pt.score.total},
                            {"exact", pt.score.exact_fraction},
                            {"relaxed", pt.score.relaxed_fraction},
                            {"ratio", pt.score.node_ratio},
                            {"trace", pt.trace.to_json_lines()},
                            {"nodes", nodes},
                            {"dudes", dudes}});
  }
  out["messages"] = messages;
  if (c.json) {
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  for (const auto& t : out["trees"]) {
    std::cout << "== " << t["id"].get<std::string>() << "  score " << t["score"].get<double>()
              << " (exact " << t["exact"].get<double>() << ", relaxed "
              << t["relaxed"].get<double>() << ", ratio " << t["ratio"].get<double>() << ")\n";
    std::cout << t["trace"].get<std::string>();
    for (const auto& n : t["nodes"]) std::cout << "  " << n.dump() << "\n";
    for (const auto& d : t["dudes"]) {
      std::cout << "  - " << d["dudes"].get<std::string>() << "\n    "
                << (d.contains("query") ? d["query"].get<std::string>()
                                        : "! " + d["error"].get<std::string>())
                << "\n";
    }
  }
  for (const auto& m : messages) std::cout << "note: " << m << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compositional question answering over RDF knowledge bases"};
  app.require_subcommand(1, 1);
  Common common;
  app.add_flag("--json", common.json, "Machine-readable JSON output");

  std::string lexicon_path;
  auto* validate = app.add_subcommand("lexicon-validate", "Validate a lexicon and count frames");
  validate->add_option("--lexicon", lexicon_path, "Lexicon JSON file")->required();

  std::string labels, out_dir;
  auto* index = app.add_subcommand("index-build", "Build and persist the label index");
  index->add_option("--labels", labels, "Label source (N-Triples or TSV)")->required();
  index->add_option("--out", out_dir, "Output directory")->required();

  std::string config, question, conllu, strategy;
  auto* ans = app.add_subcommand("answer", "Answer one question");
  ans->add_option("--config", config, "Pipeline config JSON")->required();
  ans->add_option("--question", question, "Question text")->required();
  ans->add_option("--conllu", conllu, "Pre-parsed CoNLL-U file");
  ans->add_option("--strategy", strategy, "Selection strategy");

  std::string dataset, report;
  std::vector<std::string> strategies;
  double budget = 10800;
  std::size_t workers = 12;
  auto* eval = app.add_subcommand("evaluate", "Run a benchmark dataset");
  eval->add_option("--config", config, "Pipeline config JSON")->required();
  eval->add_option("--dataset", dataset, "QALD JSON dataset")->required();
  eval->add_option("--strategy", strategies, "Strategies (bestscore, mostwins:M, accum:MODE)");
  eval->add_option("--budget", budget, "Total budget in seconds")->check(CLI::PositiveNumber);
  eval->add_option("--workers", workers, "Parallel questions")->check(CLI::PositiveNumber);
  eval->add_option("--out", report, "Write the JSON report here");

  std::size_t limit = 10;
  auto* expl = app.add_subcommand("explain", "Show merge traces, scores and DUDES");
  expl->add_option("--config", config, "Pipeline config JSON")->required();
  expl->add_option("--question", question, "Question text")->required();
  expl->add_option("--conllu", conllu, "Pre-parsed CoNLL-U file");
  expl->add_option("--limit", limit, "DUDES shown per tree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*validate) return lexicon_validate(lexicon_path, common);
    if (*index) return index_build(labels, out_dir, common);
    if (*ans) return answer(config, question, conllu, strategy, common);
    if (*eval) return evaluate(config, dataset, strategies, budget, workers, report, common);
    if (*expl) return explain(config, question, conllu, limit, common);
  } catch (const std::exception& e) {
    if (common.json) {
      std::cout << ordered_json{{"error", e.what()}}.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kFailure;
  }
  return kUsage;
}
