#include <gtest/gtest.h>

#include "lexqa/errors.hpp"
#include "lexqa/sparql_parser.hpp"

namespace lexqa::sparql {
namespace {

TEST(SparqlParser, PrefixedSelect) {
  const auto q = parse(
      "PREFIX dbo: <http://dbpedia.org/ontology/> PREFIX res: <http://dbpedia.org/resource/> "
      "SELECT DISTINCT ?uri WHERE { res:Moscow dbo:leaderName ?uri . }");
  EXPECT_EQ(q.form, Query::Form::kSelect);
  EXPECT_TRUE(q.distinct);
  EXPECT_EQ(q.projection, std::vector<std::string>{"uri"});
  ASSERT_EQ(q.patterns.size(), 1u);
  EXPECT_EQ(q.patterns[0].s, Node::constant(Term::iri("http://dbpedia.org/resource/Moscow")));
  EXPECT_EQ(q.patterns[0].o, Node::variable("uri"));
}

TEST(SparqlParser, SemicolonCommaAndA) {
  const auto q = parse(
      "SELECT * WHERE { ?x a <http://ex.org/C> ; <http://ex.org/p> ?y , ?z . }");
  EXPECT_TRUE(q.select_all);
  ASSERT_EQ(q.patterns.size(), 3u);
  EXPECT_EQ(q.patterns[0].p,
            Node::constant(Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")));
  EXPECT_EQ(q.patterns[2].o, Node::variable("z"));
  EXPECT_EQ(q.pattern_variables(), (std::vector<std::string>{"x", "y", "z"}));
}

TEST(SparqlParser, CountFilterOrderLimit) {
  const auto q = parse(
      "SELECT (COUNT(DISTINCT ?f) AS ?c) WHERE { ?f <http://ex.org/p> ?n "
      "FILTER(?n >= 10) } ORDER BY DESC(?n) LIMIT 5 OFFSET 2");
  ASSERT_TRUE(q.count.has_value());
  EXPECT_EQ(q.count->in, "f");
  EXPECT_EQ(q.count->alias, "c");
  EXPECT_TRUE(q.count->distinct);
  ASSERT_EQ(q.filters.size(), 1u);
  EXPECT_EQ(q.filters[0].op, CmpOp::kGe);
  EXPECT_EQ(q.filters[0].rhs.term.numeric(), 10.0);
  ASSERT_EQ(q.order.size(), 1u);
  EXPECT_TRUE(q.order[0].descending);
  EXPECT_EQ(q.limit, 5u);
  EXPECT_EQ(q.offset, 2u);
}

TEST(SparqlParser, AskAndLiterals) {
  const auto q = parse(
      "ASK WHERE { <http://ex.org/a> <http://ex.org/p> \"x\\\"y\"@en . "
      "<http://ex.org/a> <http://ex.org/d> \"1954-07-17\"^^<http://www.w3.org/2001/XMLSchema#date> "
      "}");
  EXPECT_EQ(q.form, Query::Form::kAsk);
  EXPECT_EQ(q.patterns[0].o.term.value, "x\"y");
  EXPECT_EQ(q.patterns[0].o.term.lang, "en");
  EXPECT_EQ(q.patterns[1].o.term.datatype, "http://www.w3.org/2001/XMLSchema#date");
}

TEST(SparqlParser, Values) {
  const auto q = parse(
      "SELECT ?y WHERE { ?x <http://ex.org/p> ?y VALUES ?x { <http://ex.org/a> <http://ex.org/b> } }");
  ASSERT_EQ(q.values.size(), 1u);
  EXPECT_EQ(q.values[0].rows.size(), 2u);
}

TEST(SparqlParser, Errors) {
  EXPECT_THROW(parse("SELECT ?x WHERE { ?x <http://ex.org/p> }"), FormatError);
  EXPECT_THROW(parse("SELECT ?x WHERE { ?x ex:p ?y }"), FormatError);
  EXPECT_THROW(parse("SELECT ?x WHERE { ?x <http://ex.org/p> ?y OPTIONAL { ?x <http://ex.org/q> ?z } }"),
               UnsupportedFeature);
  EXPECT_THROW(parse("CONSTRUCT { ?x ?p ?o } WHERE { ?x ?p ?o }"), UnsupportedFeature);
  EXPECT_THROW(parse("SELECT ?x WHERE { ?x ?p ?o } UNION { ?x ?p ?o }"), Error);
}

}  // namespace
}  // namespace lexqa::sparql
