#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexqa {

struct LabelHit {
  std::string label;  // normalized label
  std::string iri;
  double similarity = 0.0;

  friend bool operator==(const LabelHit&, const LabelHit&) = default;
};

// Prefix trie over normalized labels with Levenshtein-bounded traversal.
// Immutable after build().
class LabelIndex {
 public:
  LabelIndex();
  ~LabelIndex();
  LabelIndex(LabelIndex&&) noexcept;
  LabelIndex& operator=(LabelIndex&&) noexcept;

  // Single pass; empty (after normalization) labels are skipped and counted.
  static LabelIndex build(const std::vector<std::pair<std::string, std::string>>&
                              iri_label_pairs);

  // IRIs stored under exactly normalize(label), sorted.
  std::vector<std::string> lookup(std::string_view label) const;

  // Every (label, IRI) with similarity(query, label) >= threshold, sorted by
  // similarity desc, then label, then IRI.
  std::vector<LabelHit> search(std::string_view query, double threshold) const;

  std::size_t size() const { return label_count_; }
  std::size_t pair_count() const { return pair_count_; }
  std::size_t skipped() const { return skipped_; }

  // Every stored (normalized label, IRI) pair in label order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  // Persists the index as TSV (IRI \t label), one pair per line.
  void save(const std::filesystem::path& path) const;

  struct Node;

 private:
  std::unique_ptr<Node> root_;
  std::size_t label_count_ = 0;
  std::size_t pair_count_ = 0;
  std::size_t skipped_ = 0;
};

// Reads (IRI, label) pairs from N-Triples (rdfs:label objects only) or a
// two-column TSV. The format is detected from the first non-blank line.
std::vector<std::pair<std::string, std::string>> read_label_source(
    const std::filesystem::path& path);
std::vector<std::pair<std::string, std::string>> parse_label_source(
    std::string_view content);

}  // namespace lexqa
