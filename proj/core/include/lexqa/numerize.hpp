#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexqa/dep_tree.hpp"

namespace lexqa {

// A maximal run of number tokens and its cardinal value.
struct NumberSpan {
  TokenSpan span;
  double value = 0;
  bool has_words = false;  // false for a lone digit token
};

// Value of an English cardinal phrase ("one hundred and one", "2 million",
// "twenty-five"); nullopt when the words do not form a cardinal.
std::optional<double> parse_cardinal(const std::vector<std::string>& words);

std::vector<NumberSpan> find_number_spans(const std::vector<Token>& tokens);

// [original] when the tree spells no number words, otherwise
// [original, numerized] where every number-word span has been collapsed into
// one node carrying numeric_value. Digit tokens get numeric_value in every
// returned tree.
std::vector<DepTree> numerize_variants(const DepTree& tree);

}  // namespace lexqa
