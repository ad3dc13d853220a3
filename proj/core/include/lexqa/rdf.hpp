#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace lexqa {

namespace ns {
inline constexpr std::string_view kDbo = "http://dbpedia.org/ontology/";
inline constexpr std::string_view kDbr = "http://dbpedia.org/resource/";
inline constexpr std::string_view kDbp = "http://dbpedia.org/property/";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kRdfType = std::string(kRdf) + "type";
inline const std::string kRdfsLabel = std::string(kRdfs) + "label";
inline const std::string kXsdInteger = std::string(kXsd) + "integer";
inline const std::string kXsdDecimal = std::string(kXsd) + "decimal";
inline const std::string kXsdDouble = std::string(kXsd) + "double";
inline const std::string kXsdBoolean = std::string(kXsd) + "boolean";
}  // namespace ns

// An RDF term: IRI, literal (with optional datatype or language tag) or
// blank node.
struct Term {
  enum class Kind : unsigned char { kIri, kLiteral, kBlank };

  Kind kind = Kind::kIri;
  std::string value;
  std::string datatype;  // literals only; empty = plain / rdf:langString
  std::string lang;      // literals only

  static Term iri(std::string v) { return {Kind::kIri, std::move(v), {}, {}}; }
  static Term blank(std::string v) {
    return {Kind::kBlank, std::move(v), {}, {}};
  }
  static Term literal(std::string v, std::string datatype = {},
                      std::string lang = {}) {
    return {Kind::kLiteral, std::move(v), std::move(datatype), std::move(lang)};
  }
  // Integral values render as xsd:integer, others as xsd:decimal.
  static Term number(double v);

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_literal() const { return kind == Kind::kLiteral; }
  bool is_blank() const { return kind == Kind::kBlank; }

  // Numeric value of a literal whose lexical form parses as a number.
  std::optional<double> numeric() const;

  // N-Triples / SPARQL surface form: <iri>, "lex"@en, "lex"^^<dt>, _:b.
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// True for `scheme:rest` with a valid RFC 3987 scheme and no whitespace or
// characters forbidden inside <...>.
bool is_absolute_iri(std::string_view iri);

// Expands the well-known DBpedia/W3C prefixes (dbo:, dbr:, dbp:, rdf:,
// rdfs:, xsd:); anything else is returned unchanged.
std::string expand_curie(std::string_view s);
// Inverse of expand_curie for display; unknown namespaces stay as <iri>.
std::string compact_iri(std::string_view iri);

std::string escape_literal(std::string_view s);

// Shortest round-tripping decimal rendering ("2000000", "8848.86").
std::string format_number(double v);

}  // namespace lexqa
