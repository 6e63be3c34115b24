#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qexplain/query.hpp"
#include "qexplain/relational.hpp"

namespace qexplain {

using Assignment = std::map<std::string, Constant>;

struct Match {
    std::size_t disjunct = 0;
    Assignment assignment;

    bool operator==(const Match&) const = default;
};

/// Assignments sending the positive atoms of some disjunct into `facts`,
/// with inequalities holding and negated atoms absent from `context` (and
/// over its active domain).
/// A context is required when q has negated atoms.
std::vector<Match> satisfying_assignments(const Query& q, std::span<const Fact> facts, const Database* context);

/// Same over signed facts; q must already be sign-transformed.
std::vector<Match> satisfying_assignments(const Query& signed_query, std::span<const SignedFact> facts);

/// Plain satisfaction: negated atoms are checked against `facts` itself and
/// range over its active domain, or over `domain` when given.
bool satisfies(const Query& q, std::span<const Fact> facts);
bool satisfies(const Query& q, std::span<const Fact> facts, const std::set<Constant>& domain);
inline bool satisfies(const Database& db, const Query& q) { return satisfies(q, db.facts()); }

/// Satisfaction of a sign-transformed query by a set of signed facts.
bool satisfies_signed(const Query& signed_query, std::span<const SignedFact> facts);

enum class SupportKind { signed_support, positive, d_monotone, entailment_bounded };

std::string to_string(SupportKind kind);

/// A support under one of the four semantics. Plain-fact kinds store their
/// facts as positive signed facts.
struct SupportSet {
    SupportKind kind = SupportKind::signed_support;
    std::vector<SignedFact> elements; // canonical order
    bool minimal = false;

    std::vector<Fact> facts() const;
    bool contains(const SignedFact& sf) const;
    bool contains(const Fact& f) const;
    std::size_t size() const { return elements.size(); }
    /// "{+R(a,b), -A(b)}" for signed supports, "{R(a,b)}" otherwise.
    std::string str() const;

    bool operator==(const SupportSet&) const = default;
};

/// S must be a subset of the completion of db (schema extended with q's
/// relations); throws SemanticError otherwise.
bool is_signed_support(std::span<const SignedFact> S, const Query& q, const Database& db);

/// Every subset-minimal signed support, found among subsets of the
/// restricted signed database of size at most the largest atom count.
std::vector<SupportSet> minimal_signed_supports(const Query& q, const Database& db,
                                                std::size_t signed_cap = kDefaultSignedCap);

/// S must be a subset of db.
bool is_positive_support(std::span<const Fact> S, const Query& q, const Database& db);
std::vector<SupportSet> minimal_positive_supports(const Query& q, const Database& db);

inline constexpr std::size_t kDefaultMonotoneCap = 20;

/// Every S' with S ⊆ S' ⊆ db satisfies q. Exponential in |db \ S|.
bool is_d_monotone_support(std::span<const Fact> S, const Query& q, const Database& db,
                           std::size_t cap = kDefaultMonotoneCap);
/// Exponential in |db|, which must not exceed the cap.
std::vector<SupportSet> minimal_d_monotone_supports(const Query& q, const Database& db,
                                                    std::size_t cap = kDefaultMonotoneCap);

inline constexpr std::size_t kDefaultEntailmentCap = 24;

/// Bounded entailment: every database D' whose facts are over `domain` and
/// the relations of q and S, with pos(S) ⊆ D' and D' ∩ neg(S) = ∅,
/// satisfies q. The cap bounds the number of possible facts over the domain.
bool entailment_supports_bounded(std::span<const SignedFact> S, const Query& q, const std::set<Constant>& domain,
                                 std::size_t cap = kDefaultEntailmentCap);

struct GuardedReduction {
    Query q_plus;          // positive atoms plus inequalities no single atom guards
    Database d_prime;      // facts some positive atom maps onto
    Database d_double_prime; // those passing their per-fact negation check
};

/// Requires a guarded conjunct without mergeable atoms. Minimal positive
/// supports of the conjunct in db coincide with the minimal supports of
/// q_plus in d_double_prime.
GuardedReduction guarded_reduction(const ConjunctNeg& q, const Database& db);

} // namespace qexplain
