#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qexplain/query.hpp"
#include "qexplain/relational.hpp"

namespace qexplain {

/// Whether adding a fact to some sub-database flips the query from false to
/// true (positive impact) and/or from true to false (negative impact).
enum class Impact { none, positive_only, negative_only, both, skipped };

std::string to_string(Impact impact);

/// In some minimal signed support. Throws if sf is not in the completion.
bool signed_relevant(const SignedFact& sf, const Query& q, const Database& db);

/// In some minimal positive support. Throws if f is not in db.
bool positive_relevant(const Fact& f, const Query& q, const Database& db);

inline constexpr std::size_t kDefaultImpactCap = 20;

/// Exhaustive over sub-databases of db \ {f}; |db| must not exceed the cap.
Impact impact_relevant(const Fact& f, const Query& q, const Database& db, std::size_t cap = kDefaultImpactCap);

struct RelevanceVerdict {
    SignedFact fact;        // plain facts of db appear as their + signing
    bool plain = false;     // a fact of db, rather than a negative signed fact
    bool signed_relevant = false;
    std::optional<bool> positive_relevant; // plain facts only
    std::optional<Impact> impact;          // plain facts only
};

/// One verdict per fact of db, then one per negative fact of the restricted
/// signed database. Impact is reported as skipped when db exceeds the cap.
std::vector<RelevanceVerdict> relevance_report(const Query& q, const Database& db,
                                               std::size_t impact_cap = kDefaultImpactCap,
                                               std::size_t signed_cap = kDefaultSignedCap);

} // namespace qexplain
