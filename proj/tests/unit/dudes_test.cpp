#include <gtest/gtest.h>

#include <random>

#include "lexqa/dudes.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/lexicon.hpp"
#include "oracles.hpp"

namespace lexqa {
namespace {

LexicalEntry birth_name() {
  LexicalEntry e;
  e.id = "birth_name";
  e.canonical_form = "birth name";
  e.frame = Frame::kNounPP;
  e.reference = "http://dbpedia.org/ontology/birthName";
  e.marker = "of";
  return e;
}

const Term kMerkel = Term::iri("http://dbpedia.org/resource/Angela_Merkel");

TEST(Dudes, EntityDudesShape) {
  VarFactory vars;
  const auto d = entity_dudes(vars, kMerkel);
  ASSERT_TRUE(d.main.has_value());
  EXPECT_EQ(d.universe, std::vector<Var>{*d.main});
  EXPECT_EQ(d.conditions, (std::vector<Condition>{Equality{*d.main, kMerkel}}));
  EXPECT_TRUE(d.pairs.empty());
  EXPECT_NO_THROW(d.validate());
}

TEST(Dudes, PropertyDudesShape) {
  VarFactory vars;
  const auto d = property_dudes(vars, birth_name());
  ASSERT_EQ(d.pairs.size(), 2u);
  const Var x = d.pairs[0].v;
  const Var y = d.pairs[1].v;
  EXPECT_EQ(d.pairs[0].marker, "of");
  EXPECT_FALSE(d.pairs[1].marker.has_value());
  EXPECT_EQ(d.main, y);
  EXPECT_EQ(d.conditions,
            (std::vector<Condition>{PropertyAtom{"http://dbpedia.org/ontology/birthName", x, y}}));
  const auto marked = property_dudes(vars, birth_name(), MainSide::kMarked);
  EXPECT_EQ(marked.main, marked.pairs[0].v);
}

TEST(Dudes, ObjectOfPropertySwapsArguments) {
  VarFactory vars;
  auto e = birth_name();
  e.subj_arg = SubjArg::kObjectOfProperty;
  const auto d = property_dudes(vars, e);
  const auto& atom = std::get<PropertyAtom>(d.conditions[0]);
  EXPECT_EQ(atom.subj, Operand(d.pairs[1].v));
  EXPECT_EQ(atom.obj, Operand(d.pairs[0].v));
}

TEST(Dudes, FigureTwoComposition) {
  VarFactory vars;
  const auto merkel = entity_dudes(vars, kMerkel);
  const auto name = property_dudes(vars, birth_name());
  const auto c = compose(merkel, name, name.pairs[0]);
  EXPECT_NO_THROW(c.validate());
  const Var z = *merkel.main;
  const Var y = name.pairs[1].v;
  EXPECT_EQ(c.main, y);
  EXPECT_EQ(c.universe, (std::vector<Var>{z, y}));
  ASSERT_EQ(c.conditions.size(), 2u);
  EXPECT_EQ(c.conditions[0],
            Condition(PropertyAtom{"http://dbpedia.org/ontology/birthName", z, y}));
  EXPECT_EQ(c.conditions[1], Condition(Equality{z, kMerkel}));
  EXPECT_EQ(c.pairs, (std::vector<SelectionPair>{{y, std::nullopt}}));
  EXPECT_EQ(canonical_text(c),
            "main=v0 U={v0,v1} C={dbo:birthName(v1,v0); v1=dbr:Angela_Merkel} S=[(v0,e)]");
}

TEST(Dudes, ComposeContracts) {
  VarFactory vars;
  const auto a = entity_dudes(vars, kMerkel);
  const auto p = property_dudes(vars, birth_name());
  EXPECT_THROW(compose(a, p, SelectionPair{Var{999}, std::nullopt}), ContractViolation);
  EXPECT_THROW(compose(ask_dudes(), p, p.pairs[0]), ContractViolation);
  EXPECT_THROW(compose(p, p, p.pairs[0]), ContractViolation);
}

TEST(Dudes, ComposeMatchesSetOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    int next = 1;
    const auto d2 = oracle::random_dudes(rng, next, false, true);
    const auto d1 = oracle::random_dudes(rng, next, true, false);
    const auto& p = d2.pairs[rng() % d2.pairs.size()];
    const auto c = compose(d1, d2, p);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(oracle::sets_of(c), oracle::compose_sets(d1, d2, p)) << i;
  }
}

TEST(Dudes, CanonicalTextIgnoresVariableIds) {
  VarFactory a(1);
  VarFactory b(100);
  const auto m1 = entity_dudes(a, kMerkel);
  const auto n1 = property_dudes(a, birth_name());
  const auto n2 = property_dudes(b, birth_name());
  const auto m2 = entity_dudes(b, kMerkel);
  EXPECT_EQ(canonical_text(compose(m1, n1, n1.pairs[0])),
            canonical_text(compose(m2, n2, n2.pairs[0])));
}

TEST(Dudes, SuperlativeNeedsDegree) {
  VarFactory vars;
  LexicalEntry e;
  e.id = "highest";
  e.frame = Frame::kAdjectiveSuperlative;
  e.reference = "http://dbpedia.org/ontology/elevation";
  EXPECT_THROW(superlative_dudes(vars, e), ValidationError);
  e.degree = Degree::kMax;
  const auto d = superlative_dudes(vars, e);
  EXPECT_EQ(d.conditions.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<Ordering>(d.conditions[1]));
  EXPECT_THROW(property_dudes(vars, e), ContractViolation);
}

TEST(Dudes, ValidateCatchesStrayVariables) {
  Dudes d{Var{1}, {Var{1}}, {Equality{Var{2}, kMerkel}}, {}};
  EXPECT_THROW(d.validate(), ContractViolation);
  Dudes unsorted{std::nullopt, {Var{2}, Var{1}}, {}, {}};
  EXPECT_THROW(unsorted.validate(), ContractViolation);
}

TEST(Dudes, SubstituteAndVars) {
  const Condition c = Comparison{CmpOp::kGt, Var{1}, Var{2}};
  EXPECT_EQ(vars_of(c), (std::vector<Var>{Var{1}, Var{2}}));
  EXPECT_EQ(substitute(c, Var{2}, Var{5}), Condition(Comparison{CmpOp::kGt, Var{1}, Var{5}}));
  EXPECT_EQ(to_string(Condition(Comparison{CmpOp::kLt, Var{3}, 2e6})), "v3<2000000");
}

}  // namespace
}  // namespace lexqa
