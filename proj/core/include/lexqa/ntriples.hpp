#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lexqa/rdf.hpp"

namespace lexqa {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Line-based N-Triples reader; FormatError carries the line number.
std::vector<Triple> parse_ntriples(std::string_view content);

// Parses one N-Triples / SPARQL term token starting at `pos`; advances pos.
Term parse_term(std::string_view s, std::size_t& pos, std::size_t line_no = 0);

std::string write_ntriples(const std::vector<Triple>& triples);

}  // namespace lexqa
