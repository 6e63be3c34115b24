#include "qexplain/relevance.hpp"

#include <algorithm>
#include <cstdint>

#include "evaluator.hpp"
#include "qexplain/error.hpp"
#include "qexplain/support.hpp"

namespace qexplain {

std::string to_string(Impact impact)
{
    switch (impact) {
    case Impact::none: return "none";
    case Impact::positive_only: return "positive";
    case Impact::negative_only: return "negative";
    case Impact::both: return "both";
    case Impact::skipped: return "skipped";
    }
    return "?";
}

namespace {

bool member_of_any(const std::vector<SupportSet>& supports, const SignedFact& sf)
{
    return std::any_of(supports.begin(), supports.end(), [&](const SupportSet& s) { return s.contains(sf); });
}

Impact classify(bool positive, bool negative)
{
    if (positive && negative)
        return Impact::both;
    if (positive)
        return Impact::positive_only;
    return negative ? Impact::negative_only : Impact::none;
}

} // namespace

bool signed_relevant(const SignedFact& sf, const Query& q, const Database& db)
{
    if (!in_signed_database(sf, extend_schema(db, q)))
        throw SemanticError("signed fact " + sf.str() + " is not in the signed database");
    return member_of_any(minimal_signed_supports(q, db), sf);
}

bool positive_relevant(const Fact& f, const Query& q, const Database& db)
{
    if (!db.contains(f))
        throw SemanticError("fact " + f.str() + " is not in the database");
    return member_of_any(minimal_positive_supports(q, db), SignedFact::plus(f));
}

Impact impact_relevant(const Fact& f, const Query& q, const Database& db, std::size_t cap)
{
    const auto target = db.index_of(f);
    if (!target)
        throw SemanticError("fact " + f.str() + " is not in the database");
    if (db.size() > cap || db.size() > 31)
        throw CapExceeded("impact relevance over " + std::to_string(db.size()) + " facts", db.size(),
                          std::min<std::size_t>(cap, 31));

    const auto witnesses = detail::compile_witnesses(q, db.facts(), detail::NegationMode::self);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
    for (const auto& w : witnesses) {
        std::uint32_t pos = 0;
        std::uint32_t neg = 0;
        for (auto i : w.positive)
            pos |= 1U << i;
        for (auto i : w.negative)
            neg |= 1U << i;
        masks.emplace_back(pos, neg);
    }
    auto sat = [&](std::uint32_t s) {
        return std::any_of(masks.begin(), masks.end(),
                           [s](const auto& m) { return (m.first & ~s) == 0 && (m.second & s) == 0; });
    };

    const std::uint32_t bit = 1U << *target;
    const std::uint32_t full = (db.size() == 32 ? ~0U : (1U << db.size()) - 1) & ~bit;
    bool positive = false;
    bool negative = false;
    // Iterate over all submasks of `full`, i.e. sub-databases without f.
    for (std::uint32_t s = full;; s = (s - 1) & full) {
        const bool before = sat(s);
        const bool after = sat(s | bit);
        positive = positive || (!before && after);
        negative = negative || (before && !after);
        if (s == 0 || (positive && negative))
            break;
    }
    return classify(positive, negative);
}

std::vector<RelevanceVerdict> relevance_report(const Query& q, const Database& db, std::size_t impact_cap,
                                               std::size_t signed_cap)
{
    const auto signed_supports = minimal_signed_supports(q, db, signed_cap);
    const auto positive_supports = minimal_positive_supports(q, db);
    const bool impact_feasible = db.size() <= impact_cap && db.size() <= 31;

    std::vector<RelevanceVerdict> out;
    for (const auto& f : db.facts()) {
        RelevanceVerdict v;
        v.fact = SignedFact::plus(f);
        v.plain = true;
        v.signed_relevant = member_of_any(signed_supports, v.fact);
        v.positive_relevant = member_of_any(positive_supports, v.fact);
        v.impact = impact_feasible ? impact_relevant(f, q, db, impact_cap) : Impact::skipped;
        out.push_back(std::move(v));
    }
    for (const auto& sf : signed_database_restricted(db, q, signed_cap).negatives()) {
        RelevanceVerdict v;
        v.fact = sf;
        v.signed_relevant = member_of_any(signed_supports, sf);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace qexplain
