#include "lexqa/ntriples.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

std::string unescape(std::string_view s, std::size_t line_no) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i >= s.size()) throw FormatError("dangling escape", line_no);
    switch (s[i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\'': out.push_back('\''); break;
      case '\\': out.push_back('\\'); break;
      case 'u':
      case 'U': {
        const std::size_t len = s[i] == 'u' ? 4 : 8;
        if (i + len >= s.size()) {
          throw FormatError("truncated unicode escape", line_no);
        }
        const auto hex = std::string(s.substr(i + 1, len));
        char32_t cp = static_cast<char32_t>(std::stoul(hex, nullptr, 16));
        out += text::encode_utf8(std::u32string(1, cp));
        i += len;
        break;
      }
      default:
        throw FormatError(std::string("unknown escape \\") + s[i], line_no);
    }
  }
  return out;
}

}  // namespace

Term parse_term(std::string_view s, std::size_t& pos, std::size_t line_no) {
  skip_ws(s, pos);
  if (pos >= s.size()) throw FormatError("expected a term", line_no);
  if (s[pos] == '<') {
    const auto end = s.find('>', pos);
    if (end == std::string_view::npos) throw FormatError("unterminated IRI", line_no);
    Term t = Term::iri(std::string(s.substr(pos + 1, end - pos - 1)));
    pos = end + 1;
    return t;
  }
  if (s.substr(pos, 2) == "_:") {
    std::size_t end = pos + 2;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t' && s[end] != '.' &&
           s[end] != '}' && s[end] != ')') {
      ++end;
    }
    Term t = Term::blank(std::string(s.substr(pos + 2, end - pos - 2)));
    pos = end;
    return t;
  }
  if (s[pos] == '"') {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '"') {
      if (s[end] == '\\') ++end;
      ++end;
    }
    if (end >= s.size()) throw FormatError("unterminated literal", line_no);
    Term t = Term::literal(unescape(s.substr(pos + 1, end - pos - 1), line_no));
    pos = end + 1;
    if (pos < s.size() && s[pos] == '@') {
      std::size_t e = pos + 1;
      while (e < s.size() && (std::isalnum(static_cast<unsigned char>(s[e])) || s[e] == '-')) ++e;
      t.lang = std::string(s.substr(pos + 1, e - pos - 1));
      pos = e;
    } else if (s.substr(pos, 2) == "^^") {
      pos += 2;
      if (pos >= s.size() || s[pos] != '<') {
        throw FormatError("datatype must be an IRI", line_no);
      }
      t.datatype = parse_term(s, pos, line_no).value;
    }
    return t;
  }
  throw FormatError("unexpected character '" + std::string(1, s[pos]) + "'", line_no);
}

std::vector<Triple> parse_ntriples(std::string_view content) {
  std::vector<Triple> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    auto nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    std::size_t pos = 0;
    skip_ws(line, pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (pos >= line.size() || line[pos] == '#') {
      if (nl == content.size()) break;
      continue;
    }
    Triple t;
    t.subject = parse_term(line, pos, line_no);
    t.predicate = parse_term(line, pos, line_no);
    t.object = parse_term(line, pos, line_no);
    if (t.subject.is_literal()) throw FormatError("literal in subject position", line_no);
    if (!t.predicate.is_iri()) throw FormatError("predicate must be an IRI", line_no);
    skip_ws(line, pos);
    if (pos >= line.size() || line[pos] != '.') {
      throw FormatError("expected '.' at end of triple", line_no);
    }
    ++pos;
    skip_ws(line, pos);
    if (pos < line.size() && line[pos] != '#') {
      throw FormatError("trailing content after '.'", line_no);
    }
    out.push_back(std::move(t));
    if (nl == content.size()) break;
  }
  return out;
}

std::string write_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += t.subject.to_string() + " " + t.predicate.to_string() + " " +
           t.object.to_string() + " .\n";
  }
  return out;
}

}  // namespace lexqa
