#include "lexqa/rdf.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace lexqa {

namespace {

constexpr std::pair<std::string_view, std::string_view> kPrefixes[] = {
    {"dbo", ns::kDbo}, {"dbr", ns::kDbr},   {"dbp", ns::kDbp},
    {"rdf", ns::kRdf}, {"rdfs", ns::kRdfs}, {"xsd", ns::kXsd},
};

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

Term Term::number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return literal(format_number(v), ns::kXsdInteger);
  }
  return literal(format_number(v), ns::kXsdDecimal);
}

std::optional<double> Term::numeric() const {
  if (!is_literal() || value.empty()) return std::nullopt;
  double out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return out;
}

std::string escape_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string Term::to_string() const {
  switch (kind) {
    case Kind::kIri:
      return "<" + value + ">";
    case Kind::kBlank:
      return "_:" + value;
    case Kind::kLiteral: {
      std::string out = "\"" + escape_literal(value) + "\"";
      if (!lang.empty()) {
        out += "@" + lang;
      } else if (!datatype.empty()) {
        out += "^^<" + datatype + ">";
      }
      return out;
    }
  }
  return {};
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value);
  h ^= std::hash<std::string>{}(t.datatype) + 0x9e3779b97f4a7c15ULL + (h << 6) +
       (h >> 2);
  h ^= std::hash<std::string>{}(t.lang) + 0x9e3779b97f4a7c15ULL + (h << 6) +
       (h >> 2);
  return h ^ static_cast<std::size_t>(t.kind);
}

bool is_absolute_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!is_alpha(iri[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = iri[i];
    if (!is_alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  if (colon + 1 == iri.size()) return false;
  for (char c : iri) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '\\' || c == '^' || c == '`') {
      return false;
    }
  }
  return true;
}

std::string expand_curie(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::string(s);
  const auto prefix = s.substr(0, colon);
  for (const auto& [p, iri] : kPrefixes) {
    if (p == prefix) return std::string(iri) + std::string(s.substr(colon + 1));
  }
  return std::string(s);
}

std::string compact_iri(std::string_view iri) {
  for (const auto& [p, base] : kPrefixes) {
    if (iri.size() > base.size() && iri.substr(0, base.size()) == base) {
      return std::string(p) + ":" + std::string(iri.substr(base.size()));
    }
  }
  return "<" + std::string(iri) + ">";
}

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace lexqa
