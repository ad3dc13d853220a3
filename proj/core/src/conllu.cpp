#include "lexqa/conllu.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string field(std::string_view s) { return s == "_" ? std::string() : std::string(s); }

struct Block {
  DepTree tree;
  std::size_t first_line = 0;
  bool open = false;
};

void finish(Block& b, std::vector<DepTree>& out) {
  if (!b.open) return;
  auto& t = b.tree;
  if (t.sent_id.empty()) t.sent_id = std::to_string(out.size() + 1);
  std::sort(t.nodes.begin(), t.nodes.end(),
            [](const DepNode& a, const DepNode& c) { return a.id < c.id; });
  for (const auto& n : t.nodes) {
    if (n.head == 0) {
      t.root_id = n.id;
      break;
    }
  }
  t.original_node_count = t.nodes.size();
  if (!t.nodes.empty()) t.validate();
  if (!t.nodes.empty()) out.push_back(std::move(t));
  b = Block{};
}

void comment(Block& b, std::string_view line) {
  auto body = text::trim(line.substr(1));
  const auto eq = body.find('=');
  if (eq == std::string::npos) return;
  const auto key = text::trim(std::string_view(body).substr(0, eq));
  const auto value = text::trim(std::string_view(body).substr(eq + 1));
  if (key == "text") b.tree.text = value;
  else if (key == "parser") b.tree.parser_tag = value;
  else if (key == "sent_id") b.tree.sent_id = value;
}

}  // namespace

std::vector<DepTree> parse_conllu(std::string_view content) {
  std::vector<DepTree> out;
  Block block;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) {
      finish(block, out);
      if (nl == content.size()) break;
      continue;
    }
    if (!block.open) {
      block.open = true;
      block.first_line = line_no;
    }
    if (line.front() == '#') {
      comment(block, line);
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw FormatError("expected 10 tab-separated columns, found " +
                            std::to_string(cols.size()),
                        line_no);
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    DepNode node;
    if (!parse_int(cols[0], node.id) || node.id < 1) {
      throw FormatError("invalid token id '" + std::string(cols[0]) + "'", line_no);
    }
    if (!parse_int(cols[6], node.head) || node.head < 0) {
      throw FormatError("invalid head '" + std::string(cols[6]) + "'", line_no);
    }
    if (cols[1].empty()) throw FormatError("empty FORM column", line_no);
    node.tokens.push_back(
        Token{node.id, std::string(cols[1]), field(cols[2]), field(cols[3])});
    node.upos = field(cols[3]);
    node.deprel = field(cols[7]);
    block.tree.nodes.push_back(std::move(node));
  }
  finish(block, out);
  return out;
}

std::vector<DepTree> read_conllu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CoNLL-U file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_conllu(buf.str());
}

std::string write_conllu(const std::vector<DepTree>& trees) {
  std::ostringstream out;
  const auto col = [](const std::string& s) { return s.empty() ? std::string("_") : s; };
  for (const auto& t : trees) {
    if (!t.sent_id.empty()) out << "# sent_id = " << t.sent_id << "\n";
    if (!t.text.empty()) out << "# text = " << t.text << "\n";
    out << "# parser = " << t.parser_tag << "\n";
    for (const auto& n : t.nodes) {
      if (n.tokens.size() != 1) {
        throw ContractViolation("write_conllu needs single-token nodes");
      }
      const auto& tok = n.tokens.front();
      out << n.id << '\t' << tok.surface << '\t' << col(tok.lemma) << '\t'
          << col(n.upos) << "\t_\t_\t" << n.head << '\t' << col(n.deprel)
          << "\t_\t_\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace lexqa
