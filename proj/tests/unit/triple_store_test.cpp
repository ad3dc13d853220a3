#include <gtest/gtest.h>

#include <random>

#include "lexqa/errors.hpp"
#include "lexqa/sparql_parser.hpp"
#include "lexqa/triple_store.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

class ToyStore : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    store_ = new TripleStore(TripleStore::load_ntriples(oracle::toy_dir() / "kb.nt"));
  }
  static void TearDownTestSuite() { delete store_; }
  static TripleStore* store_;
};
TripleStore* ToyStore::store_ = nullptr;

const std::string kRes = "http://dbpedia.org/resource/";

TEST_F(ToyStore, Loads) { EXPECT_EQ(store_->size(), 66u); }

TEST_F(ToyStore, TwoHop) {
  const auto a = store_->execute(
      "SELECT DISTINCT ?answer WHERE { <http://dbpedia.org/resource/Russia> "
      "<http://dbpedia.org/ontology/capital> ?v0 . ?v0 <http://dbpedia.org/ontology/leaderName> "
      "?answer }");
  EXPECT_EQ(a.values, std::vector<Term>{Term::iri(kRes + "Sergey_Sobyanin")});
}

TEST_F(ToyStore, AskCountOrderFilter) {
  EXPECT_EQ(store_->execute("ASK { <http://dbpedia.org/resource/Germany> "
                            "<http://dbpedia.org/ontology/capital> "
                            "<http://dbpedia.org/resource/Berlin> }"),
            AnswerSet::boolean(true));
  EXPECT_EQ(store_->execute("ASK { <http://dbpedia.org/resource/Germany> "
                            "<http://dbpedia.org/ontology/capital> "
                            "<http://dbpedia.org/resource/Paris> }"),
            AnswerSet::boolean(false));
  const auto count = store_->execute(
      "SELECT (COUNT(DISTINCT ?f) AS ?c) WHERE { ?f <http://dbpedia.org/ontology/director> "
      "<http://dbpedia.org/resource/Stanley_Kubrick> }");
  ASSERT_EQ(count.values.size(), 1u);
  EXPECT_EQ(count.values[0].numeric(), 3.0);
  const auto top = store_->execute(
      "SELECT ?m WHERE { ?m <http://dbpedia.org/ontology/elevation> ?e } ORDER BY DESC(?e) LIMIT 1");
  EXPECT_EQ(top.values, std::vector<Term>{Term::iri(kRes + "Mount_Everest")});
  const auto big = store_->execute(
      "SELECT DISTINCT ?c WHERE { ?c <http://dbpedia.org/ontology/populationTotal> ?p "
      "FILTER(?p > 3000000) }");
  EXPECT_EQ(big.values, (std::vector<Term>{Term::iri(kRes + "Berlin"), Term::iri(kRes + "Moscow")}));
}

TEST_F(ToyStore, EmptyResultAndUnsupported) {
  EXPECT_TRUE(store_->execute("SELECT ?x WHERE { ?x <http://ex.org/none> ?y }").values.empty());
  EXPECT_THROW(store_->execute("SELECT ?x WHERE { ?x ?p ?o } GROUP BY ?x"), Error);
}

TEST(TripleStore, CompareTerms) {
  EXPECT_EQ(compare_terms(CmpOp::kGt, Term::number(5), Term::number(3)), true);
  EXPECT_EQ(compare_terms(CmpOp::kEq, Term::literal("a"), Term::literal("a")), true);
  EXPECT_FALSE(compare_terms(CmpOp::kLt, Term::literal("a"), Term::number(3)).has_value());
}

TEST(TripleStore, DuplicatesStoredOnce) {
  const Triple t{Term::iri("http://ex.org/a"), Term::iri("http://ex.org/p"),
                 Term::iri("http://ex.org/b")};
  EXPECT_EQ(TripleStore({t, t}).size(), 1u);
}

TEST(TripleStore, MatchesBruteForceEvaluator) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 40; ++round) {
    const auto triples = oracle::random_store(rng, 1 + rng() % 400);
    const TripleStore store(triples);
    const auto q = oracle::random_bgp(rng, triples);
    const auto parsed = sparql::parse(q.text);
    const auto got = oracle::normalized(
        store.solutions(parsed, std::chrono::steady_clock::now() + std::chrono::seconds(10)));
    EXPECT_EQ(got, oracle::evaluate(triples, q)) << q.text;
  }
}

TEST(TripleStore, BudgetExceeded) {
  std::mt19937_64 rng(1);
  const TripleStore store(oracle::random_store(rng, 1000));
  EXPECT_THROW(store.execute(sparql::parse("SELECT * WHERE { ?a ?b ?c . ?d ?e ?f . ?g ?h ?i }"),
                             std::chrono::milliseconds(1)),
               BudgetExceeded);
}

}  // namespace
}  // namespace lexqa
