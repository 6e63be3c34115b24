#include <gtest/gtest.h>

#include "qexplain/error.hpp"
#include "test_util.hpp"

using namespace qexplain;
using namespace qexplain::testing;

namespace {

ConjunctNeg single(std::string_view text) { return parse_query(text).disjuncts().front(); }

} // namespace

TEST(ParseQuery, FishButNotMeat)
{
    const auto q = q_fish();
    ASSERT_EQ(q.disjuncts().size(), 1U);
    const auto& lits = q.disjuncts()[0].literals();
    ASSERT_EQ(lits.size(), 2U);
    EXPECT_EQ(lits[0], Literal::positive("I", {Term::var("x"), Term::constant("fish")}));
    EXPECT_EQ(lits[1], Literal::negated("I", {Term::var("x"), Term::constant("meat")}));
}

TEST(ParseQuery, Inequality)
{
    const auto q = parse_query("exists x,y. R(x,y), x != y, !R(y,x)");
    const auto& lits = q.disjuncts()[0].literals();
    ASSERT_EQ(lits.size(), 3U);
    EXPECT_EQ(lits[1], Literal::inequality(Term::var("x"), Term::var("y")));
}

TEST(ParseQuery, SafetyViolation)
{
    try {
        parse_query("exists y. !R(y,y)");
        FAIL();
    } catch (const SemanticError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("y"), std::string::npos);
        EXPECT_NE(what.find("!R(y,y)"), std::string::npos);
    }
    EXPECT_THROW(parse_query("exists x,y. A(x), x != y"), SemanticError);
    EXPECT_THROW(parse_query("exists x,y. A(x)"), SemanticError);
    EXPECT_THROW(parse_query("exists x. A(x), !B(y)"), SemanticError); // undeclared
}

TEST(ParseQuery, SyntaxErrors)
{
    EXPECT_THROW(parse_query(""), ParseError);
    EXPECT_THROW(parse_query("exists x A(x)"), ParseError);
    EXPECT_THROW(parse_query("exists x. A(x"), ParseError);
    EXPECT_THROW(parse_query("exists X. A(X)"), ParseError);
    EXPECT_THROW(parse_query("exists x. A(x) |"), ParseError);
    EXPECT_THROW(parse_query(R"(exists x. A("a b"))"), ParseError);
    try {
        parse_query("exists x.\n  A(x) & B(x)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2U);
        EXPECT_EQ(e.column(), 8U);
    }
}

TEST(ParseQuery, ArityMismatchAcrossDisjuncts)
{
    EXPECT_THROW(parse_query("exists x. A(x) | exists x,y. A(x,y)"), SemanticError);
}

TEST(ParseQuery, GroundDisjunct)
{
    const auto q = parse_query(R"(exists . A("c"), !B("c"))");
    EXPECT_TRUE(q.disjuncts()[0].variables().empty());
}

TEST(ParseQuery, RoundTrip)
{
    for (const auto* text : {R"(exists x. I(x,"fish"), !I(x,"meat"))",
                             "exists x,y. R(x,y), x != y, !R(y,x)",
                             R"(exists x. I(x,"meat"), I(x,"wine") | exists x. I(x,"fish"), !I(x,"wine"))",
                             R"(exists . A("c"))"}) {
        const auto q = parse_query(text);
        EXPECT_EQ(parse_query(q.str()), q) << text;
    }
    InstanceGenerator gen(7);
    for (int i = 0; i < 200; ++i) {
        const auto q = gen.next().q;
        EXPECT_EQ(parse_query(q.str()), q) << q.str();
    }
}

TEST(SignTransform, Examples)
{
    const auto qs = sign_transform(q_fish());
    const auto& lits = qs.disjuncts()[0].literals();
    EXPECT_EQ(lits[0], Literal::positive("+I", {Term::var("x"), Term::constant("fish")}));
    EXPECT_EQ(lits[1], Literal::positive("-I", {Term::var("x"), Term::constant("meat")}));
    EXPECT_TRUE(is_signed_query(qs));
    EXPECT_FALSE(is_signed_query(q_fish()));

    const auto pos = sign_transform(parse_query("exists x. A(x), B(x)"));
    for (const auto& l : pos.disjuncts()[0].literals())
        EXPECT_EQ(l.relation->name.front(), '+');

    const auto ineq = sign_transform(parse_query("exists x,y. R(x,y), x != y, !R(y,x)"));
    EXPECT_EQ(ineq.disjuncts()[0].literals()[1].kind, Literal::Kind::inequality);
    EXPECT_EQ(ineq.disjuncts()[0].literals()[2].relation->name, "-R");
    EXPECT_FALSE(ineq.has_negation());
}

TEST(NegRels, Examples)
{
    EXPECT_EQ(neg_rels(q_fish()), (std::set<RelationSymbol>{{"I", 2}}));
    EXPECT_TRUE(neg_rels(parse_query("exists x. A(x)")).empty());
    EXPECT_EQ(neg_rels(parse_query("exists x. A(x), !B(x) | exists x. B(x), C(x)")),
              (std::set<RelationSymbol>{{"B", 1}}));
}

TEST(NegativeArity, Examples)
{
    EXPECT_EQ(negative_arity(q_fish()), 2U);
    EXPECT_EQ(negative_arity(parse_query("exists x. A(x)")), 0U);
    EXPECT_EQ(negative_arity(parse_query("exists x,y,z,u. R(x,y,y), R(y,z,u), !R(u,x,x)")), 3U);
}

TEST(Mergeable, Examples)
{
    EXPECT_TRUE(mergeable_pairs(single(R"(exists x,y. R("a",x), R("b",y))")).empty());
    EXPECT_EQ(mergeable_pairs(single("exists x,y. R(x,y), R(y,x)")),
              (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
    EXPECT_TRUE(mergeable_pairs(single("exists x. A(x), R(x,x)")).empty());
}

TEST(Mergeable, WitnessDatabaseMapsBothAtomsToOneFact)
{
    // R(x,y) and R(y,x) both land on R(c,c) in {R(c,c)}.
    const auto q = parse_query("exists x,y. R(x,y), R(y,x)");
    const auto matches = satisfying_assignments(q, facts_of({"R(c,c)"}), nullptr);
    ASSERT_EQ(matches.size(), 1U);
    EXPECT_EQ(matches[0].assignment.at("x"), matches[0].assignment.at("y"));
}

TEST(SelfJoinWidth, Examples)
{
    EXPECT_EQ(self_join_width(single(R"(exists x,y. R("a",x), R("b",y))")), 0U);
    EXPECT_EQ(self_join_width(single("exists x,y. R(x,y), R(y,x)")), 2U);
    EXPECT_EQ(self_join_width(single("exists x,y. A(x), R(x,y), !B(y)")), 0U);
}

TEST(SelfJoinWidth, SelfJoinFreeImpliesZero)
{
    InstanceGenerator gen(11);
    for (int i = 0; i < 300; ++i) {
        const auto in = gen.next();
        for (const auto& d : in.q.disjuncts())
            if (is_self_join_free(d, false)) {
                EXPECT_TRUE(mergeable_pairs(d).empty());
                EXPECT_EQ(self_join_width(d), 0U);
            }
    }
}

TEST(Guarded, Examples)
{
    EXPECT_TRUE(is_guarded(q_fish().disjuncts()[0]));
    EXPECT_FALSE(is_guarded(single("exists x,y. A(x), B(y), !R(x,y)")));
    EXPECT_TRUE(is_guarded(single("exists x. A(x), B(x)")));
}

TEST(NegPath, Examples)
{
    EXPECT_TRUE(has_non_hierarchical_neg_path(single("exists x,y. R(x), !S(x,y), T(y)")));
    EXPECT_FALSE(has_non_hierarchical_neg_path(single("exists x,y. A(x), R(x,y), !B(y)")));
    EXPECT_FALSE(has_non_hierarchical_neg_path(single("exists x. A(x)")));
    // Path through a positive atom is hidden when that atom's relation is negated elsewhere.
    EXPECT_FALSE(has_non_hierarchical_neg_path(single("exists x,y. R(x), S(x,y), T(y), !T(x)")));
}

TEST(Analyze, FishQuery)
{
    const auto a = analyze(q_fish());
    EXPECT_TRUE(a.guarded);
    EXPECT_EQ(a.negative_arity, 2U);
    ASSERT_TRUE(a.has_non_hierarchical_neg_path);
    EXPECT_FALSE(*a.has_non_hierarchical_neg_path);
    EXPECT_TRUE(a.self_join_free);
    EXPECT_FALSE(a.self_join_free_with_negations);
    EXPECT_EQ(a.self_join_width, 0U);
}

TEST(Analyze, UnionHasNoNegPathVerdict)
{
    EXPECT_FALSE(analyze(q2()).has_non_hierarchical_neg_path.has_value());
}
