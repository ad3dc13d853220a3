#include "lexqa/numerize.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

namespace {

const std::map<std::string, int>& small_numbers() {
  static const std::map<std::string, int> kSmall = {
      {"zero", 0},      {"one", 1},        {"two", 2},        {"three", 3},
      {"four", 4},      {"five", 5},       {"six", 6},        {"seven", 7},
      {"eight", 8},     {"nine", 9},       {"ten", 10},       {"eleven", 11},
      {"twelve", 12},   {"thirteen", 13},  {"fourteen", 14},  {"fifteen", 15},
      {"sixteen", 16},  {"seventeen", 17}, {"eighteen", 18},  {"nineteen", 19},
      {"twenty", 20},   {"thirty", 30},    {"forty", 40},     {"fifty", 50},
      {"sixty", 60},    {"seventy", 70},   {"eighty", 80},    {"ninety", 90}};
  return kSmall;
}

const std::map<std::string, double>& scales() {
  static const std::map<std::string, double> kScales = {
      {"hundred", 1e2}, {"thousand", 1e3}, {"million", 1e6}};
  return kScales;
}

std::optional<double> parse_digits(std::string_view s) {
  std::string clean;
  for (char c : s) {
    if (c != ',') clean.push_back(c);
  }
  if (clean.empty() || !(clean[0] >= '0' && clean[0] <= '9')) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(clean.data(), clean.data() + clean.size(), v);
  if (ec != std::errc() || ptr != clean.data() + clean.size()) return std::nullopt;
  return v;
}

// Splits "twenty-five" into its parts.
std::vector<std::string> word_parts(const std::string& w) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : w) {
    if (c == '-') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

bool is_number_word(const std::string& raw) {
  const auto w = text::normalize(raw);
  if (parse_digits(w)) return true;
  for (const auto& p : word_parts(w)) {
    if (!small_numbers().count(p) && !scales().count(p)) return false;
  }
  return !w.empty();
}

bool has_letters(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

}  // namespace

std::optional<double> parse_cardinal(const std::vector<std::string>& words) {
  double total = 0;
  double current = 0;
  bool any = false;
  bool last_was_and = false;
  for (const auto& raw : words) {
    const auto w = text::normalize(raw);
    if (w == "and") {
      if (!any || last_was_and) return std::nullopt;
      last_was_and = true;
      continue;
    }
    last_was_and = false;
    if (auto d = parse_digits(w)) {
      current += *d;
      any = true;
      continue;
    }
    for (const auto& p : word_parts(w)) {
      if (auto it = small_numbers().find(p); it != small_numbers().end()) {
        current += it->second;
      } else if (auto sc = scales().find(p); sc != scales().end()) {
        if (current == 0) current = 1;
        if (sc->second == 100) {
          current *= 100;
        } else {
          total += current * sc->second;
          current = 0;
        }
      } else {
        return std::nullopt;
      }
      any = true;
    }
  }
  if (!any || last_was_and) return std::nullopt;
  const double v = total + current;
  if (v > 999'999'999) return std::nullopt;
  return v;
}

std::vector<NumberSpan> find_number_spans(const std::vector<Token>& tokens) {
  std::vector<NumberSpan> spans;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_number_word(tokens[i].surface)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size()) {
      if (is_number_word(tokens[j].surface)) {
        ++j;
      } else if (text::normalize(tokens[j].surface) == "and" &&
                 j + 1 < tokens.size() && is_number_word(tokens[j + 1].surface)) {
        j += 2;
      } else {
        break;
      }
    }
    std::vector<std::string> words;
    bool letters = false;
    for (std::size_t k = i; k < j; ++k) {
      words.push_back(tokens[k].surface);
      letters = letters || has_letters(tokens[k].surface);
    }
    if (auto v = parse_cardinal(words)) {
      spans.push_back({{tokens[i].index, tokens[j - 1].index}, *v, letters});
    }
    i = j;
  }
  return spans;
}

std::vector<DepTree> numerize_variants(const DepTree& tree) {
  if (tree.variant != TreeVariant::kOriginal) {
    throw ContractViolation("numerize_variants expects an original tree");
  }
  const auto spans = find_number_spans(tree.all_tokens());
  DepTree original = tree;
  for (const auto& s : spans) {
    if (!s.has_words && s.span.length() == 1) {
      original.at(original.node_of_token(s.span.first)).numeric_value = s.value;
    }
  }
  const bool words = std::any_of(spans.begin(), spans.end(),
                                 [](const NumberSpan& s) { return s.has_words; });
  if (!words) return {original};

  DepTree numerized = original;
  numerized.variant = TreeVariant::kNumerized;
  for (const auto& s : spans) {
    std::vector<int> ids;
    for (int t = s.span.first; t <= s.span.last; ++t) {
      const int id = numerized.node_of_token(t);
      if (id && std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    const int survivor = *std::min_element(ids.begin(), ids.end(), [&](int a, int b) {
      const int da = numerized.depth(a);
      const int db = numerized.depth(b);
      return da != db ? da < db : a < b;
    });
    for (int id : ids) {
      if (id != survivor) merge_nodes(numerized, id, survivor);
    }
    numerized.at(survivor).numeric_value = s.value;
  }
  return {original, numerized};
}

}  // namespace lexqa
