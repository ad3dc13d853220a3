#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexqa/comparator.hpp"
#include "lexqa/dep_tree.hpp"
#include "lexqa/dudes_composer.hpp"
#include "lexqa/kb.hpp"
#include "lexqa/label_index.hpp"
#include "lexqa/lexicon.hpp"
#include "lexqa/ner.hpp"
#include "lexqa/selector.hpp"
#include "lexqa/tree_merger.hpp"
#include "lexqa/tree_scorer.hpp"

namespace lexqa {

struct ComparatorSpec {
  std::string type = "baseline";  // "baseline" | "process"
  BaselineParams baseline;
  std::string command;
  std::chrono::milliseconds timeout{10000};
};

struct PipelineConfig {
  std::filesystem::path lexicon;
  std::filesystem::path labels;
  std::filesystem::path kb_path;
  std::string kb_endpoint;
  std::vector<std::filesystem::path> parses;  // CoNLL-U files
  std::string parse_command;  // reads questions on stdin, writes CoNLL-U
  std::filesystem::path ner_fixture;
  std::string ner_command;
  std::chrono::milliseconds ner_timeout{10000};
  std::size_t max_candidates = 512;
  std::size_t max_dudes_per_tree = 4096;
  std::chrono::milliseconds budget{60000};        // per question
  std::chrono::milliseconds query_budget{30000};  // per query
  double threshold = 0.5;
  ScoreWeights weights;
  ScoreMultipliers multipliers;
  ComposeOptions compose;
  std::vector<ComparatorSpec> comparators{ComparatorSpec{}};
  std::size_t max_train_results = 1000000000;
  std::string strategy = "mostwins:0.75";

  // Throws ValidationError on out-of-range values.
  void validate() const;

  // JSON document whose keys mirror the fields (camelCase); relative paths
  // resolve against the file's directory. Unknown keys are rejected.
  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig parse(const std::string& json_text,
                              const std::filesystem::path& base_dir = {});
};

// A merged, annotated tree ready for composition.
struct PreparedTree {
  DepTree tree;
  TreeScore score;
  MergeTrace trace;
  std::string id;
};

struct TreeDiagnostic {
  std::string tree_id;
  TreeScore score;
  std::size_t finals = 0;
  std::size_t candidates = 0;
};

struct PipelineRun {
  std::string question;
  std::size_t trees_considered = 0;
  std::vector<CandidateQuery> candidates;
  std::vector<TreeDiagnostic> trees;
  std::vector<std::string> messages;
  std::size_t pruned_dudes = 0;      // no query could be formed
  std::size_t duplicate_queries = 0;
  std::size_t failed_queries = 0;    // execution errors
  bool budget_exhausted = false;
};

class Pipeline {
 public:
  // Loads every resource named by the config.
  explicit Pipeline(PipelineConfig cfg);
  Pipeline(PipelineConfig cfg, Lexicon lex, LabelIndex index,
           std::shared_ptr<KnowledgeBase> kb, std::shared_ptr<NerProvider> ner = nullptr);

  // Thread-safe.
  PipelineRun answer(const std::string& question, const std::vector<DepTree>& parses) const;
  PipelineRun answer(const std::string& question, const std::vector<DepTree>& parses,
                     std::chrono::steady_clock::time_point deadline) const;

  // Merging, matching and scoring of every parse, best tree first.
  std::vector<PreparedTree> prepare(const std::string& question,
                                    const std::vector<DepTree>& parses,
                                    std::vector<std::string>* messages = nullptr) const;

  // Parses for a question: from the configured CoNLL-U files (matched by
  // `# text` or sent_id) or, failing that, from the parse command.
  std::vector<DepTree> parses_for(const std::string& question,
                                  const std::string& id = {}) const;

  std::vector<std::shared_ptr<Comparator>> comparators() const { return comparators_; }
  Strategy default_strategy() const;

  const PipelineConfig& config() const { return cfg_; }
  const Lexicon& lexicon() const { return lex_; }
  const LabelIndex& label_index() const { return index_; }
  KnowledgeBase& kb() const { return *kb_; }

 private:
  void init_comparators();

  PipelineConfig cfg_;
  Lexicon lex_;
  LabelIndex index_;
  std::shared_ptr<KnowledgeBase> kb_;
  std::shared_ptr<NerProvider> ner_;
  std::vector<std::shared_ptr<Comparator>> comparators_;
  std::multimap<std::string, DepTree> parse_bank_;  // normalized text or sent_id
};

PipelineRun answer_question(const PipelineConfig& cfg, const std::vector<DepTree>& parses,
                            const std::string& question);

}  // namespace lexqa
