#include <gtest/gtest.h>

#include "lexqa/errors.hpp"
#include "lexqa/ntriples.hpp"
#include "lexqa/rdf.hpp"

namespace lexqa {
namespace {

TEST(Term, NumberRendering) {
  EXPECT_EQ(Term::number(5), Term::literal("5", ns::kXsdInteger));
  EXPECT_EQ(Term::number(2.5).datatype, ns::kXsdDecimal);
  EXPECT_EQ(format_number(2000000), "2000000");
  EXPECT_EQ(format_number(8848.86), "8848.86");
}

TEST(Term, NumericValue) {
  EXPECT_EQ(Term::literal("42", ns::kXsdInteger).numeric(), 42.0);
  EXPECT_FALSE(Term::iri("http://ex.org/42").numeric().has_value());
  EXPECT_FALSE(Term::literal("abc").numeric().has_value());
}

TEST(Curie, ExpandAndCompact) {
  EXPECT_EQ(expand_curie("dbr:Moscow"), "http://dbpedia.org/resource/Moscow");
  EXPECT_EQ(expand_curie("dbo:leaderName"), "http://dbpedia.org/ontology/leaderName");
  EXPECT_EQ(expand_curie("foo:bar"), "foo:bar");
  EXPECT_EQ(compact_iri("http://dbpedia.org/ontology/capital"), "dbo:capital");
}

TEST(Iri, AbsoluteCheck) {
  EXPECT_TRUE(is_absolute_iri("http://dbpedia.org/resource/Moscow"));
  EXPECT_TRUE(is_absolute_iri("urn:isbn:123"));
  EXPECT_FALSE(is_absolute_iri("Moscow"));
  EXPECT_FALSE(is_absolute_iri("http://ex.org/a b"));
  EXPECT_FALSE(is_absolute_iri("1http://x"));
}

TEST(NTriples, ParsesAllTermKinds) {
  const auto triples = parse_ntriples(
      "# comment\n"
      "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n"
      "_:x <http://ex.org/p> \"say \\\"hi\\\"\\n\"@en .\n"
      "\n"
      "<http://ex.org/a> <http://ex.org/n> \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
      "<http://ex.org/a> <http://ex.org/u> \"\\u00E9\" .\n");
  ASSERT_EQ(triples.size(), 4u);
  EXPECT_TRUE(triples[1].subject.is_blank());
  EXPECT_EQ(triples[1].object.value, "say \"hi\"\n");
  EXPECT_EQ(triples[1].object.lang, "en");
  EXPECT_EQ(triples[2].object.numeric(), 5.0);
  EXPECT_EQ(triples[3].object.value, "é");
}

TEST(NTriples, RoundTrip) {
  const std::string doc =
      "<http://ex.org/a> <http://ex.org/p> \"x\\ty\"@de .\n"
      "<http://ex.org/a> <http://ex.org/q> \"1.5\"^^<http://www.w3.org/2001/XMLSchema#double> .\n"
      "_:b1 <http://ex.org/q> <http://ex.org/c> .\n";
  const auto t = parse_ntriples(doc);
  EXPECT_EQ(parse_ntriples(write_ntriples(t)), t);
}

TEST(NTriples, ErrorsCarryLineNumbers) {
  try {
    parse_ntriples("<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n"
                   "\"lit\" <http://ex.org/p> <http://ex.org/b> .\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
  EXPECT_THROW(parse_ntriples("<http://ex.org/a> <http://ex.org/p> <http://ex.org/b>\n"),
               FormatError);
  EXPECT_THROW(parse_ntriples("<http://ex.org/a> _:p <http://ex.org/b> .\n"), FormatError);
  EXPECT_THROW(parse_ntriples("<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> . x\n"),
               FormatError);
}

TEST(NTriples, ToyKnowledgeBaseLoads) {
  const auto triples = parse_ntriples(
      "<http://dbpedia.org/resource/Moscow> <http://dbpedia.org/ontology/leaderName> "
      "<http://dbpedia.org/resource/Sergey_Sobyanin> .\n");
  ASSERT_EQ(triples.size(), 1u);
  EXPECT_EQ(triples[0].object, Term::iri("http://dbpedia.org/resource/Sergey_Sobyanin"));
}

}  // namespace
}  // namespace lexqa
