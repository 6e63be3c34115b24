#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qexplain/relational.hpp"

namespace qexplain {

struct Term {
    enum class Kind { variable, constant };

    Kind kind = Kind::variable;
    std::string symbol;

    static Term var(std::string name) { return {Kind::variable, std::move(name)}; }
    static Term constant(std::string name) { return {Kind::constant, std::move(name)}; }

    bool is_variable() const { return kind == Kind::variable; }
    auto operator<=>(const Term&) const = default;
    std::string str() const;
};

struct Literal {
    enum class Kind { positive_atom, negated_atom, inequality };

    Kind kind = Kind::positive_atom;
    std::optional<RelationSymbol> relation; // unset for inequalities
    std::vector<Term> terms;

    static Literal positive(std::string relation, std::vector<Term> terms);
    static Literal negated(std::string relation, std::vector<Term> terms);
    static Literal inequality(Term lhs, Term rhs);

    bool is_atom() const { return kind != Kind::inequality; }
    std::set<std::string> variables() const;
    bool operator==(const Literal&) const = default;
    std::string str() const;
};

/// One CQ with negated atoms and inequalities. Construction enforces safe
/// negation: every variable occurs in some positive atom.
class ConjunctNeg {
public:
    ConjunctNeg(std::vector<std::string> variables, std::vector<Literal> literals);

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<Literal>& literals() const noexcept { return literals_; }

    std::vector<Literal> positive_atoms() const;
    std::vector<Literal> negated_atoms() const;
    std::vector<Literal> inequalities() const;
    std::size_t atom_count() const;

    bool operator==(const ConjunctNeg&) const = default;
    std::string str() const;

private:
    std::vector<std::string> variables_;
    std::vector<Literal> literals_;
};

/// Boolean union of CQs with negation. Relation arities must agree across
/// all disjuncts.
class Query {
public:
    explicit Query(std::vector<ConjunctNeg> disjuncts);

    const std::vector<ConjunctNeg>& disjuncts() const noexcept { return disjuncts_; }

    /// Largest number of atoms (positive and negated) in a disjunct.
    std::size_t max_atom_count() const;
    /// Largest number of positive atoms in a disjunct.
    std::size_t max_positive_atom_count() const;
    bool has_negation() const;

    bool operator==(const Query&) const = default;
    /// Prints in the input grammar; parse_query(q.str()) == q.
    std::string str() const;

private:
    std::vector<ConjunctNeg> disjuncts_;
};

/// query     := disjunct { "|" disjunct }
/// disjunct  := "exists" [var {"," var}] "." literal { "," literal }
/// literal   := ["!"] NAME "(" term {"," term} ")" | term "!=" term
/// term      := VAR | '"' CONST '"'
Query parse_query(std::string_view text);

std::set<RelationSymbol> query_relations(const Query& q);

/// Negated atoms become atoms over "-R", positive atoms over "+R";
/// inequalities are kept. The result has no negation.
Query sign_transform(const Query& q);
/// True when every relation is signed ("+R"/"-R") and nothing is negated.
bool is_signed_query(const Query& q);

std::set<RelationSymbol> neg_rels(const Query& q);
std::size_t negative_arity(const Query& q);

/// Pairs (i, j), i < j, of positive-atom ordinals whose atoms can be mapped to
/// the same fact by two independent homomorphisms.
std::vector<std::pair<std::size_t, std::size_t>> mergeable_pairs(const ConjunctNeg& cq);

/// Number of distinct terms occurring in individually mergeable atoms.
std::size_t self_join_width(const ConjunctNeg& cq);

/// Every negated atom has a positive atom containing all of its variables.
bool is_guarded(const ConjunctNeg& cq);

bool has_non_hierarchical_neg_path(const ConjunctNeg& cq);

/// No relation name repeats among positive atoms (first) or among all atoms
/// including negated ones (second).
bool is_self_join_free(const ConjunctNeg& cq, bool count_negated_atoms);

struct DisjunctAnalysis {
    bool self_join_free = true;                 // positive atoms only
    bool self_join_free_with_negations = true;  // negated atoms counted too
    std::vector<std::pair<std::size_t, std::size_t>> mergeable_pairs;
    std::size_t self_join_width = 0;
    bool guarded = true;
    bool non_hierarchical_neg_path = false;
};

struct QueryAnalysis {
    std::vector<DisjunctAnalysis> disjuncts;
    bool self_join_free = true;
    bool self_join_free_with_negations = true;
    std::size_t self_join_width = 0; // max over disjuncts
    bool guarded = true;
    std::size_t negative_arity = 0;
    std::set<RelationSymbol> negated_relations;
    /// Only defined for single-disjunct queries.
    std::optional<bool> has_non_hierarchical_neg_path;
};

QueryAnalysis analyze(const Query& q);

} // namespace qexplain
