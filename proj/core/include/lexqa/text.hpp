#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexqa::text {

// UTF-8 <-> code points. Invalid bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

char32_t to_lower(char32_t c);

// Lowercase (ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic) and collapse
// runs of whitespace to one space, trimming both ends.
std::string normalize(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string trim(std::string_view s);

// Code-point Levenshtein distance.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - distance / max(len_a, len_b); two empty strings are identical (1.0).
double similarity_from_distance(std::size_t distance, std::size_t len_a,
                                std::size_t len_b);

// Similarity of the normalized forms of `a` and `b`.
double similarity(std::string_view a, std::string_view b);

}  // namespace lexqa::text
