#include "lexqa/label_index.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "lexqa/errors.hpp"
#include "lexqa/ntriples.hpp"
#include "lexqa/rdf.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

struct LabelIndex::Node {
  std::map<char32_t, std::unique_ptr<Node>> children;
  std::vector<std::string> iris;  // non-empty only on terminal nodes
};

LabelIndex::LabelIndex() : root_(std::make_unique<Node>()) {}
LabelIndex::~LabelIndex() = default;
LabelIndex::LabelIndex(LabelIndex&&) noexcept = default;
LabelIndex& LabelIndex::operator=(LabelIndex&&) noexcept = default;

LabelIndex LabelIndex::build(
    const std::vector<std::pair<std::string, std::string>>& iri_label_pairs) {
  LabelIndex index;
  for (const auto& [iri, label] : iri_label_pairs) {
    const auto key = text::decode_utf8(text::normalize(label));
    if (key.empty()) {
      ++index.skipped_;
      continue;
    }
    Node* node = index.root_.get();
    for (char32_t c : key) {
      auto& child = node->children[c];
      if (!child) child = std::make_unique<Node>();
      node = child.get();
    }
    if (node->iris.empty()) ++index.label_count_;
    auto pos = std::lower_bound(node->iris.begin(), node->iris.end(), iri);
    if (pos == node->iris.end() || *pos != iri) {
      node->iris.insert(pos, iri);
      ++index.pair_count_;
    }
  }
  return index;
}

std::vector<std::string> LabelIndex::lookup(std::string_view label) const {
  const auto key = text::decode_utf8(text::normalize(label));
  const Node* node = root_.get();
  for (char32_t c : key) {
    auto it = node->children.find(c);
    if (it == node->children.end()) return {};
    node = it->second.get();
  }
  return node->iris;
}

std::vector<LabelHit> LabelIndex::search(std::string_view query,
                                         double threshold) const {
  const auto q = text::decode_utf8(text::normalize(query));
  const std::size_t n = q.size();
  // Any label longer than n/t cannot reach similarity t, and no accepted
  // label can be further than (1-t)*max(n, that length) edits away.
  const double max_len = threshold > 0 ? static_cast<double>(n) / threshold + 1
                                       : std::numeric_limits<double>::infinity();
  const double max_dist =
      threshold > 0 ? (1.0 - threshold) * std::max<double>(n, max_len) + 1
                    : std::numeric_limits<double>::infinity();

  std::vector<LabelHit> hits;
  std::u32string prefix;
  // rows[d] is the edit-distance row for the prefix of length d.
  std::vector<std::vector<std::size_t>> rows(1, std::vector<std::size_t>(n + 1));
  for (std::size_t j = 0; j <= n; ++j) rows[0][j] = j;

  std::function<void(const Node&)> walk = [&](const Node& node) {
    const std::size_t depth = prefix.size();
    if (rows.size() <= depth + 1) rows.emplace_back(n + 1);
    for (const auto& [c, child] : node.children) {
      const auto& prev = rows[depth];
      auto& row = rows[depth + 1];
      row[0] = prev[0] + 1;
      std::size_t best = row[0];
      for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t cost = q[j - 1] == c ? 0 : 1;
        row[j] = std::min({prev[j] + 1, row[j - 1] + 1, prev[j - 1] + cost});
        best = std::min(best, row[j]);
      }
      prefix.push_back(c);
      if (!child->iris.empty()) {
        const double sim = text::similarity_from_distance(row[n], n, prefix.size());
        if (sim >= threshold) {
          const auto label = text::encode_utf8(prefix);
          for (const auto& iri : child->iris) hits.push_back({label, iri, sim});
        }
      }
      if (static_cast<double>(best) <= max_dist &&
          static_cast<double>(prefix.size()) < max_len) {
        walk(*child);
      }
      prefix.pop_back();
    }
  };
  walk(*root_);
  std::sort(hits.begin(), hits.end(), [](const LabelHit& a, const LabelHit& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    if (a.label != b.label) return a.label < b.label;
    return a.iri < b.iri;
  });
  return hits;
}

std::vector<std::pair<std::string, std::string>> LabelIndex::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  std::u32string prefix;
  std::function<void(const Node&)> walk = [&](const Node& node) {
    for (const auto& iri : node.iris) out.emplace_back(text::encode_utf8(prefix), iri);
    for (const auto& [c, child] : node.children) {
      prefix.push_back(c);
      walk(*child);
      prefix.pop_back();
    }
  };
  walk(*root_);
  return out;
}

void LabelIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write label index '" + path.string() + "'");
  for (const auto& [label, iri] : entries()) out << iri << '\t' << label << '\n';
}

std::vector<std::pair<std::string, std::string>> parse_label_source(
    std::string_view content) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return out;
  const bool ntriples = content[first] == '<' || content[first] == '_';
  if (ntriples) {
    for (const auto& t : parse_ntriples(content)) {
      if (t.predicate.value == ns::kRdfsLabel && t.object.is_literal() &&
          (t.subject.is_iri())) {
        out.emplace_back(t.subject.value, t.object.value);
      }
    }
    return out;
  }
  std::size_t line_no = 0;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError("label TSV line needs IRI<TAB>label", line_no);
    }
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_label_source(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open label source '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_label_source(buf.str());
}

}  // namespace lexqa
