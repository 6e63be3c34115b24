#pragma once

// Property checks over one random instance. Each returns the list of
// violations found, empty when the property holds.

#include <sstream>
#include <string>
#include <vector>

#include "qexplain/relevance.hpp"
#include "qexplain/shapley.hpp"
#include "qexplain/support.hpp"
#include "test_util.hpp"

namespace qexplain::testing {

using Violations = std::vector<std::string>;

inline std::string describe(const Instance& in)
{
    std::ostringstream os;
    os << in.q.str() << " on {";
    for (std::size_t i = 0; i < in.db.size(); ++i)
        os << (i ? ", " : "") << in.db.facts()[i].str();
    os << "}";
    return os.str();
}

inline constexpr WealthKind kWealthKinds[] = {WealthKind::drastic_direct, WealthKind::signed_drastic,
                                              WealthKind::positive_drastic, WealthKind::ms_signed,
                                              WealthKind::mps_positive};

struct ShapleyCheckStats {
    std::size_t scores = 0;
    std::size_t permutation_checked = 0;
    std::size_t closed_form_checked = 0;
};

/// Permutation, subset and closed-form routes agree; efficiency and the
/// null-player axiom hold. Players beyond the permutation cap are compared
/// on the game restricted to non-null players.
inline Violations check_shapley_routes(const Instance& in, ShapleyCheckStats& stats)
{
    Violations out;
    for (auto kind : kWealthKinds) {
        const Wealth w(kind, in.q, in.db);
        if (w.size() > kDefaultSubsetCap)
            continue;
        const auto game = Game::tabulate(w);
        const auto values = shapley_subset_all(game);

        const auto active = w.non_null_players();
        const auto reduced = Game::tabulate(w, active);
        const bool permute_full = w.size() <= kDefaultPermutationCap;
        const bool permute_reduced = reduced.size() <= kDefaultPermutationCap;

        Rational sum(0);
        for (std::size_t p = 0; p < w.size(); ++p) {
            const auto& player = w.players()[p];
            const auto tag = [&] { return to_string(kind) + " " + player.str() + " in " + describe(in); };
            ++stats.scores;
            sum += values[p];

            std::optional<Rational> perm;
            if (permute_full) {
                perm = shapley_permutation(game, p).value;
            } else if (permute_reduced) {
                const auto pos = reduced.position_of(p);
                perm = pos ? shapley_permutation(reduced, *pos).value : Rational(0);
            }
            if (perm) {
                ++stats.permutation_checked;
                if (*perm != values[p])
                    out.push_back("permutation " + perm->str() + " != subset " + values[p].str() + ": " + tag());
            }
            if (kind == WealthKind::ms_signed || kind == WealthKind::mps_positive) {
                const auto mode = kind == WealthKind::ms_signed ? SupportMode::signed_mode : SupportMode::positive;
                const auto closed = wsms_closed_form(in.q, in.db, player, WeightFunction::reciprocal(), mode);
                const auto targeted = ms_shapley(in.q, in.db, player, mode).value;
                ++stats.closed_form_checked;
                if (closed != values[p] || targeted != values[p])
                    out.push_back("closed form " + closed.str() + "/" + targeted.str() + " != subset " +
                                  values[p].str() + ": " + tag());
            }
            const bool null_player = !std::binary_search(active.begin(), active.end(), p);
            if (null_player && values[p] != Rational(0))
                out.push_back("null player scored " + values[p].str() + ": " + tag());
            if (const auto pos = reduced.position_of(p); pos && shapley_subset(reduced, *pos) != values[p])
                out.push_back("null-player reduction changed the score: " + tag());
        }
        std::vector<std::size_t> all(w.size());
        std::iota(all.begin(), all.end(), 0);
        const Rational grand(w.value(all) - w.value({}));
        if (sum != grand)
            out.push_back("efficiency: sum " + sum.str() + " != " + grand.str() + " for " + to_string(kind) + " in " +
                          describe(in));
    }
    return out;
}

inline Violations check_satisfaction_equivalence(const Instance& in)
{
    const auto completion = signed_database(extend_schema(in.db, in.q));
    if (satisfies(in.db, in.q) != satisfies_signed(sign_transform(in.q), completion.signed_facts))
        return {"D |= q differs from D± |= q±: " + describe(in)};
    return {};
}

inline Violations check_score_relevance(const Instance& in)
{
    Violations out;
    for (const auto& sf : signed_database_restricted(in.db, in.q).signed_facts) {
        const bool scored = ms_shapley(in.q, in.db, sf, SupportMode::signed_mode).value != Rational(0);
        if (scored != signed_relevant(sf, in.q, in.db))
            out.push_back("ms-signed score vs signed relevance of " + sf.str() + ": " + describe(in));
    }
    for (const auto& f : in.db.facts()) {
        const bool scored = ms_shapley(in.q, in.db, SignedFact::plus(f), SupportMode::positive).value != Rational(0);
        if (scored != positive_relevant(f, in.q, in.db))
            out.push_back("mps score vs positive relevance of " + f.str() + ": " + describe(in));
    }
    return out;
}

inline Violations check_positive_implies_monotone(const Instance& in)
{
    Violations out;
    const auto& facts = in.db.facts();
    for (std::uint32_t m = 0; m < (1U << facts.size()); ++m) {
        std::vector<Fact> s;
        for (std::size_t i = 0; i < facts.size(); ++i)
            if (m >> i & 1U)
                s.push_back(facts[i]);
        if (is_positive_support(s, in.q, in.db) && !is_d_monotone_support(s, in.q, in.db))
            out.push_back("positive support not D-monotone: " + describe(in));
    }
    return out;
}

inline Violations check_positive_relevance_implies_signed(const Instance& in)
{
    Violations out;
    for (const auto& f : in.db.facts())
        if (positive_relevant(f, in.q, in.db) && !signed_relevant(SignedFact::plus(f), in.q, in.db))
            out.push_back(f.str() + " positive- but not signed-relevant: " + describe(in));
    return out;
}

/// CQ¬ without mergeable atoms: dropping negative facts maps the minimal
/// signed supports one-to-one onto the minimal positive supports.
inline bool bijection_applies(const Query& q)
{
    return q.disjuncts().size() == 1 && mergeable_pairs(q.disjuncts()[0]).empty();
}

inline Violations check_bijection(const Instance& in)
{
    if (!bijection_applies(in.q))
        return {};
    std::vector<std::vector<SignedFact>> images;
    for (const auto& s : minimal_signed_supports(in.q, in.db)) {
        std::vector<SignedFact> pos;
        for (const auto& e : s.elements)
            if (e.sign == Sign::positive)
                pos.push_back(e);
        images.push_back(std::move(pos));
    }
    std::sort(images.begin(), images.end());
    const auto positive = elements_of(minimal_positive_supports(in.q, in.db));
    if (images != positive)
        return {"signed/positive minimal supports not in bijection: " + describe(in)};
    return {};
}

inline bool guarded_reduction_applies(const Query& q)
{
    return q.disjuncts().size() == 1 && is_guarded(q.disjuncts()[0]) && mergeable_pairs(q.disjuncts()[0]).empty();
}

inline Violations check_guarded_reduction(const Instance& in)
{
    if (!guarded_reduction_applies(in.q))
        return {};
    const auto r = guarded_reduction(in.q.disjuncts()[0], in.db);
    const auto& dpp = r.d_double_prime.facts();
    const auto reduced = brute_minimal<Fact>(dpp, [&](const std::vector<Fact>& s) { return satisfies(r.q_plus, s); });
    std::vector<std::vector<Fact>> direct;
    for (const auto& s : minimal_positive_supports(in.q, in.db))
        direct.push_back(s.facts());
    std::sort(direct.begin(), direct.end());
    if (reduced != direct)
        return {"guarded reduction disagrees with minimal positive supports: " + describe(in)};
    return {};
}

} // namespace qexplain::testing
