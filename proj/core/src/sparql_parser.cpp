#include "lexqa/sparql_parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "lexqa/errors.hpp"
#include "lexqa/ntriples.hpp"

namespace lexqa::sparql {

namespace {

enum class Tok { kIri, kPName, kVar, kString, kNumber, kWord, kPunct, kOp, kCaret, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // IRI body, var name, word, punct/op text, number text
  std::string prefix;  // kPName
  Term literal;        // kString
  std::size_t pos = 0;
};

bool iri_char(char c) {
  return !(std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' ||
           c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`' ||
           c == '\\');
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    Token t;
    t.pos = pos_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (c == '<') {
      std::size_t e = pos_ + 1;
      while (e < s_.size() && iri_char(s_[e])) ++e;
      if (e < s_.size() && s_[e] == '>') {
        t.kind = Tok::kIri;
        t.text = std::string(s_.substr(pos_ + 1, e - pos_ - 1));
        pos_ = e + 1;
        return t;
      }
    }
    if (c == '<' || c == '>' || c == '=' || c == '!') {
      t.kind = Tok::kOp;
      if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=' && c != '=') {
        t.text = std::string(s_.substr(pos_, 2));
        pos_ += 2;
      } else {
        if (c == '!') fail("unexpected '!'");
        t.text = std::string(1, c);
        ++pos_;
      }
      return t;
    }
    if (c == '?' || c == '$') {
      std::size_t e = pos_ + 1;
      while (e < s_.size() && name_char(s_[e])) ++e;
      if (e == pos_ + 1) fail("empty variable name");
      t.kind = Tok::kVar;
      t.text = std::string(s_.substr(pos_ + 1, e - pos_ - 1));
      pos_ = e;
      return t;
    }
    if (c == '"' || c == '\'') {
      if (c == '\'') throw UnsupportedFeature("single-quoted literals are not supported");
      std::size_t e = pos_ + 1;
      while (e < s_.size() && s_[e] != '"') {
        if (s_[e] == '\\') ++e;
        ++e;
      }
      if (e >= s_.size()) fail("unterminated literal");
      std::size_t p = 0;
      t.kind = Tok::kString;
      t.literal = parse_term(s_.substr(pos_, e + 1 - pos_), p);
      pos_ = e + 1;
      if (pos_ < s_.size() && s_[pos_] == '@') {
        std::size_t l = pos_ + 1;
        while (l < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[l])) || s_[l] == '-')) {
          ++l;
        }
        t.literal.lang = std::string(s_.substr(pos_ + 1, l - pos_ - 1));
        pos_ = l;
      }
      return t;
    }
    if (c == '[') throw UnsupportedFeature("blank node syntax is not supported");
    if (c == '^' && s_.substr(pos_, 2) == "^^") {
      t.kind = Tok::kCaret;
      pos_ += 2;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-') && pos_ + 1 < s_.size() &&
         std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      std::size_t e = pos_ + 1;
      while (e < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[e])) ||
                               s_[e] == 'e' || s_[e] == 'E' ||
                               (s_[e] == '.' && e + 1 < s_.size() &&
                                std::isdigit(static_cast<unsigned char>(s_[e + 1]))) ||
                               ((s_[e] == '+' || s_[e] == '-') &&
                                (s_[e - 1] == 'e' || s_[e - 1] == 'E')))) {
        ++e;
      }
      t.kind = Tok::kNumber;
      t.text = std::string(s_.substr(pos_, e - pos_));
      pos_ = e;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':') {
      std::size_t e = pos_;
      while (e < s_.size() && name_char(s_[e])) ++e;
      if (e < s_.size() && s_[e] == ':') {
        t.kind = Tok::kPName;
        t.prefix = std::string(s_.substr(pos_, e - pos_));
        std::size_t l = e + 1;
        while (l < s_.size() && (name_char(s_[l]) || s_[l] == '.' || s_[l] == '%' ||
                                 s_[l] == ':' || s_[l] == '(' || s_[l] == ')' ||
                                 s_[l] == ',' || s_[l] == '\'')) {
          if ((s_[l] == '(' || s_[l] == ')' || s_[l] == ',') && !balanced_local(e + 1, l)) break;
          ++l;
        }
        while (l > e + 1 && s_[l - 1] == '.') --l;  // end-of-triple dot
        t.text = std::string(s_.substr(e + 1, l - e - 1));
        pos_ = l;
        return t;
      }
      t.kind = Tok::kWord;
      t.text = std::string(s_.substr(pos_, e - pos_));
      pos_ = e;
      return t;
    }
    if (std::string_view("{}().,;*").find(c) != std::string_view::npos) {
      t.kind = Tok::kPunct;
      t.text = std::string(1, c);
      ++pos_;
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("SPARQL syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  // DBpedia local names may contain balanced parentheses and commas
  // ("Mercury_(planet)"); stop at an unbalanced ')' or a ',' outside them.
  bool balanced_local(std::size_t start, std::size_t at) const {
    int depth = 0;
    for (std::size_t i = start; i < at; ++i) {
      if (s_[i] == '(') ++depth;
      if (s_[i] == ')') --depth;
    }
    if (s_[at] == '(') return true;
    return depth > 0;
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {
    prefixes_ = {{"dbo", std::string(ns::kDbo)}, {"dbr", std::string(ns::kDbr)},
                 {"dbp", std::string(ns::kDbp)}, {"rdf", std::string(ns::kRdf)},
                 {"rdfs", std::string(ns::kRdfs)}, {"xsd", std::string(ns::kXsd)},
                 {"res", std::string(ns::kDbr)}};
    advance();
  }

  Query parse() {
    Query q;
    while (is_word("PREFIX") || is_word("BASE")) {
      if (is_word("BASE")) throw UnsupportedFeature("BASE is not supported");
      advance();
      if (cur_.kind != Tok::kPName || !cur_.text.empty()) lex_.fail("expected prefix name");
      const std::string name = cur_.prefix;
      advance();
      if (cur_.kind != Tok::kIri) lex_.fail("expected prefix IRI");
      prefixes_[name] = cur_.text;
      advance();
    }
    if (is_word("SELECT")) {
      advance();
      parse_select_clause(q);
    } else if (is_word("ASK")) {
      advance();
      q.form = Query::Form::kAsk;
    } else if (is_word("CONSTRUCT") || is_word("DESCRIBE")) {
      throw UnsupportedFeature(upper(cur_.text) + " queries are not supported");
    } else {
      lex_.fail("expected SELECT or ASK");
    }
    if (is_word("FROM")) throw UnsupportedFeature("FROM is not supported");
    if (is_word("WHERE")) advance();
    parse_group(q);
    parse_modifiers(q);
    if (cur_.kind != Tok::kEnd) lex_.fail("trailing input '" + cur_.text + "'");
    if (q.form == Query::Form::kAsk && (!q.order.empty() || q.limit)) {
      // Harmless but meaningless; accepted.
    }
    return q;
  }

 private:
  void advance() { cur_ = lex_.next(); }
  bool is_word(std::string_view w) const {
    return cur_.kind == Tok::kWord && upper(cur_.text) == w;
  }
  bool is_punct(char c) const { return cur_.kind == Tok::kPunct && cur_.text[0] == c; }
  void expect_punct(char c) {
    if (!is_punct(c)) lex_.fail(std::string("expected '") + c + "'");
    advance();
  }
  std::string expect_var() {
    if (cur_.kind != Tok::kVar) lex_.fail("expected a variable");
    std::string v = cur_.text;
    advance();
    return v;
  }

  std::string resolve(const Token& t) {
    auto it = prefixes_.find(t.prefix);
    if (it == prefixes_.end()) lex_.fail("unknown prefix '" + t.prefix + "'");
    return it->second + t.text;
  }

  void parse_select_clause(Query& q) {
    if (is_word("DISTINCT")) {
      q.distinct = true;
      advance();
    } else if (is_word("REDUCED")) {
      throw UnsupportedFeature("REDUCED is not supported");
    }
    if (is_punct('*')) {
      q.select_all = true;
      advance();
      return;
    }
    while (cur_.kind == Tok::kVar || is_punct('(')) {
      if (cur_.kind == Tok::kVar) {
        q.projection.push_back(expect_var());
        continue;
      }
      advance();
      if (!is_word("COUNT")) throw UnsupportedFeature("only COUNT projections are supported");
      advance();
      expect_punct('(');
      Query::Count c;
      if (is_word("DISTINCT")) {
        c.distinct = true;
        advance();
      }
      if (is_punct('*')) {
        advance();
      } else {
        c.in = expect_var();
      }
      expect_punct(')');
      if (!is_word("AS")) lex_.fail("expected AS");
      advance();
      c.alias = expect_var();
      expect_punct(')');
      if (q.count) throw UnsupportedFeature("more than one aggregate");
      q.count = c;
    }
    if (q.count && !q.projection.empty()) {
      throw UnsupportedFeature("aggregates mixed with plain variables need GROUP BY");
    }
    if (!q.count && q.projection.empty()) lex_.fail("empty projection");
  }

  Node parse_node(bool predicate_position) {
    Node n;
    switch (cur_.kind) {
      case Tok::kVar:
        n = Node::variable(cur_.text);
        break;
      case Tok::kIri:
        n = Node::constant(Term::iri(cur_.text));
        break;
      case Tok::kPName:
        n = Node::constant(Term::iri(resolve(cur_)));
        break;
      case Tok::kString: {
        Term lit = cur_.literal;
        advance();
        if (cur_.kind == Tok::kCaret) {
          advance();
          if (cur_.kind == Tok::kIri) {
            lit.datatype = cur_.text;
          } else if (cur_.kind == Tok::kPName) {
            lit.datatype = resolve(cur_);
          } else {
            lex_.fail("expected datatype IRI");
          }
          advance();
        }
        return Node::constant(lit);
      }
      case Tok::kNumber: {
        const auto& t = cur_.text;
        const bool is_double = t.find_first_of("eE") != std::string::npos;
        const bool is_decimal = t.find('.') != std::string::npos;
        n = Node::constant(Term::literal(
            t, is_double ? ns::kXsdDouble : (is_decimal ? ns::kXsdDecimal : ns::kXsdInteger)));
        break;
      }
      case Tok::kWord:
        if (predicate_position && cur_.text == "a") {
          n = Node::constant(Term::iri(ns::kRdfType));
        } else if (cur_.text == "true" || cur_.text == "false") {
          n = Node::constant(Term::literal(cur_.text, ns::kXsdBoolean));
        } else {
          throw UnsupportedFeature("unsupported keyword '" + cur_.text + "' in pattern");
        }
        break;
      case Tok::kPunct:
        if (is_punct('[') || is_punct('(')) {
          throw UnsupportedFeature("blank node / collection syntax is not supported");
        }
        lex_.fail("expected a term");
      default:
        lex_.fail("expected a term");
    }
    advance();
    return n;
  }

  void parse_group(Query& q) {
    expect_punct('{');
    while (!is_punct('}')) {
      if (cur_.kind == Tok::kEnd) lex_.fail("unterminated group");
      if (is_word("FILTER")) {
        advance();
        parse_filter(q);
      } else if (is_word("VALUES")) {
        advance();
        parse_values(q);
      } else if (is_word("OPTIONAL") || is_word("UNION") || is_word("MINUS") ||
                 is_word("GRAPH") || is_word("BIND") || is_word("SERVICE") ||
                 is_word("SELECT")) {
        throw UnsupportedFeature(upper(cur_.text) + " is not supported");
      } else if (is_punct('{')) {
        throw UnsupportedFeature("nested groups are not supported");
      } else if (is_punct('.')) {
        advance();
      } else {
        parse_triples(q);
      }
    }
    advance();
  }

  void parse_triples(Query& q) {
    const Node s = parse_node(false);
    while (true) {
      if (cur_.kind == Tok::kOp || is_punct('(')) {
        throw UnsupportedFeature("property paths are not supported");
      }
      const Node p = parse_node(true);
      if (!p.is_var && !p.term.is_iri()) lex_.fail("predicate must be an IRI or variable");
      while (true) {
        const Node o = parse_node(false);
        q.patterns.push_back({s, p, o});
        if (!is_punct(',')) break;
        advance();
      }
      if (!is_punct(';')) break;
      advance();
      if (is_punct('.') || is_punct('}')) break;
    }
    if (is_punct('.')) advance();
  }

  void parse_filter(Query& q) {
    expect_punct('(');
    if (cur_.kind == Tok::kWord) {
      throw UnsupportedFeature("FILTER function '" + cur_.text + "' is not supported");
    }
    Filter f;
    f.lhs = parse_node(false);
    if (cur_.kind != Tok::kOp) throw UnsupportedFeature("only binary comparisons in FILTER");
    static const std::map<std::string, CmpOp> kOps = {
        {"<", CmpOp::kLt}, {"<=", CmpOp::kLe}, {">", CmpOp::kGt},
        {">=", CmpOp::kGe}, {"=", CmpOp::kEq}, {"!=", CmpOp::kNe}};
    f.op = kOps.at(cur_.text);
    advance();
    f.rhs = parse_node(false);
    if (!is_punct(')')) throw UnsupportedFeature("compound FILTER expressions are not supported");
    advance();
    q.filters.push_back(std::move(f));
  }

  void parse_values(Query& q) {
    if (is_punct('(')) throw UnsupportedFeature("multi-variable VALUES is not supported");
    Values v;
    v.var = expect_var();
    expect_punct('{');
    while (!is_punct('}')) {
      if (cur_.kind == Tok::kEnd) lex_.fail("unterminated VALUES");
      const Node n = parse_node(false);
      if (n.is_var) lex_.fail("variables are not allowed in VALUES");
      v.rows.push_back(n.term);
    }
    advance();
    q.values.push_back(std::move(v));
  }

  void parse_modifiers(Query& q) {
    if (is_word("GROUP") || is_word("HAVING")) {
      throw UnsupportedFeature(upper(cur_.text) + " is not supported");
    }
    if (is_word("ORDER")) {
      advance();
      if (!is_word("BY")) lex_.fail("expected BY");
      advance();
      while (true) {
        if (is_word("ASC") || is_word("DESC")) {
          const bool desc = is_word("DESC");
          advance();
          expect_punct('(');
          if (cur_.kind != Tok::kVar) throw UnsupportedFeature("ORDER BY expressions are not supported");
          q.order.push_back({expect_var(), desc});
          expect_punct(')');
        } else if (cur_.kind == Tok::kVar) {
          q.order.push_back({expect_var(), false});
        } else {
          break;
        }
      }
      if (q.order.empty()) lex_.fail("empty ORDER BY");
    }
    for (int i = 0; i < 2; ++i) {
      if (is_word("LIMIT") || is_word("OFFSET")) {
        const bool limit = is_word("LIMIT");
        advance();
        if (cur_.kind != Tok::kNumber) lex_.fail("expected a number");
        const auto n = static_cast<std::size_t>(std::stoull(cur_.text));
        if (limit) {
          q.limit = n;
        } else {
          q.offset = n;
        }
        advance();
      }
    }
  }

  Lexer lex_;
  Token cur_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

std::vector<std::string> Query::pattern_variables() const {
  std::vector<std::string> out;
  const auto add = [&](const Node& n) {
    if (n.is_var && std::find(out.begin(), out.end(), n.var) == out.end()) out.push_back(n.var);
  };
  for (const auto& v : values) add(Node::variable(v.var));
  for (const auto& p : patterns) {
    add(p.s);
    add(p.p);
    add(p.o);
  }
  return out;
}

Query parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace lexqa::sparql
