#include "qexplain/shapley.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "evaluator.hpp"
#include "qexplain/error.hpp"
#include "qexplain/support.hpp"

namespace qexplain {

std::string to_string(WealthKind kind)
{
    switch (kind) {
    case WealthKind::drastic_direct: return "drastic";
    case WealthKind::signed_drastic: return "signed-drastic";
    case WealthKind::positive_drastic: return "positive-drastic";
    case WealthKind::ms_signed: return "ms-signed";
    case WealthKind::mps_positive: return "mps";
    }
    return "?";
}

bool is_signed_kind(WealthKind kind) { return kind == WealthKind::signed_drastic || kind == WealthKind::ms_signed; }

bool is_monotone_kind(WealthKind kind) { return kind != WealthKind::drastic_direct; }

namespace {

bool is_count_kind(WealthKind kind) { return kind == WealthKind::ms_signed || kind == WealthKind::mps_positive; }

std::vector<SignedFact> default_players(WealthKind kind, const Query& q, const Database& db, std::size_t cap)
{
    if (is_signed_kind(kind))
        return signed_database_restricted(db, q, cap).signed_facts;
    std::vector<SignedFact> out;
    for (const auto& f : db.facts())
        out.push_back(SignedFact::plus(f));
    return out;
}

} // namespace

Wealth::Wealth(WealthKind kind, const Query& q, const Database& db, std::size_t signed_cap)
    : Wealth(kind, q, db, default_players(kind, q, db, signed_cap))
{
}

Wealth Wealth::over_full_completion(WealthKind kind, const Query& q, const Database& db, std::size_t signed_cap)
{
    if (!is_signed_kind(kind))
        return Wealth(kind, q, db, signed_cap);
    return Wealth(kind, q, db, signed_database(extend_schema(db, q), signed_cap).signed_facts);
}

Wealth::Wealth(WealthKind kind, const Query& q, const Database& db, std::vector<SignedFact> players)
    : kind_(kind), players_(std::move(players))
{
    // Evaluation universe, sorted, with a map back to player positions.
    std::vector<std::pair<Fact, std::size_t>> keyed;
    for (std::size_t i = 0; i < players_.size(); ++i)
        keyed.emplace_back(is_signed_kind(kind) ? encode_signed(players_[i]) : players_[i].fact, i);
    std::sort(keyed.begin(), keyed.end());
    std::vector<Fact> universe;
    std::vector<std::size_t> back;
    for (auto& [f, i] : keyed) {
        universe.push_back(std::move(f));
        back.push_back(i);
    }

    std::vector<detail::Witness> raw;
    switch (kind) {
    case WealthKind::drastic_direct:
        raw = detail::compile_witnesses(q, universe, detail::NegationMode::self);
        break;
    case WealthKind::positive_drastic:
    case WealthKind::mps_positive:
        raw = detail::compile_witnesses(q, universe, detail::NegationMode::context, &db);
        break;
    case WealthKind::signed_drastic:
    case WealthKind::ms_signed:
        raw = detail::compile_witnesses(sign_transform(q), universe, detail::NegationMode::none);
        break;
    }
    for (const auto& w : raw) {
        Witness mine;
        for (auto i : w.positive)
            mine.positive.push_back(back[i]);
        for (auto i : w.negative)
            mine.negative.push_back(back[i]);
        std::sort(mine.positive.begin(), mine.positive.end());
        std::sort(mine.negative.begin(), mine.negative.end());
        witnesses_.push_back(std::move(mine));
    }

    if (is_monotone_kind(kind)) {
        std::vector<std::vector<std::size_t>> images;
        for (const auto& w : witnesses_)
            images.push_back(w.positive);
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        for (const auto& a : images) {
            const bool has_smaller = std::any_of(images.begin(), images.end(), [&](const auto& b) {
                return b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
            });
            if (!has_smaller)
                minimal_.push_back(a);
        }
    }
}

std::optional<std::size_t> Wealth::index_of(const SignedFact& player) const
{
    auto it = std::lower_bound(players_.begin(), players_.end(), player);
    if (it == players_.end() || *it != player)
        return std::nullopt;
    return static_cast<std::size_t>(it - players_.begin());
}

std::optional<std::size_t> Wealth::index_of(const Fact& player) const { return index_of(SignedFact::plus(player)); }

bool Wealth::satisfied(const std::vector<char>& members) const
{
    return std::any_of(witnesses_.begin(), witnesses_.end(), [&](const Witness& w) {
        return std::all_of(w.positive.begin(), w.positive.end(), [&](std::size_t i) { return members[i] != 0; }) &&
               std::none_of(w.negative.begin(), w.negative.end(), [&](std::size_t i) { return members[i] != 0; });
    });
}

std::int64_t Wealth::value(std::span<const std::size_t> subset) const
{
    std::vector<char> members(players_.size(), 0);
    for (auto i : subset) {
        if (i >= players_.size())
            throw SemanticError("player index out of range");
        members[i] = 1;
    }
    if (!is_count_kind(kind_))
        return satisfied(members) ? 1 : 0;
    return std::count_if(minimal_.begin(), minimal_.end(), [&](const auto& s) {
        return std::all_of(s.begin(), s.end(), [&](std::size_t i) { return members[i] != 0; });
    });
}

std::vector<std::size_t> Wealth::non_null_players() const
{
    std::vector<std::size_t> out;
    if (is_monotone_kind(kind_)) {
        for (const auto& s : minimal_)
            out.insert(out.end(), s.begin(), s.end());
    } else {
        for (const auto& w : witnesses_) {
            out.insert(out.end(), w.positive.begin(), w.positive.end());
            out.insert(out.end(), w.negative.begin(), w.negative.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational wealth(WealthKind kind, const Query& q, const Database& db, std::span<const SignedFact> subset)
{
    const Wealth w(kind, q, db);
    std::vector<std::size_t> indices;
    for (const auto& sf : subset) {
        auto i = w.index_of(sf);
        if (!i)
            throw SemanticError(sf.str() + " is not a player of the " + to_string(kind) + " wealth function");
        indices.push_back(*i);
    }
    return Rational(w.value(indices));
}

Game Game::tabulate(const Wealth& wealth, std::size_t cap)
{
    std::vector<std::size_t> all(wealth.size());
    std::iota(all.begin(), all.end(), 0);
    return tabulate(wealth, std::move(all), cap);
}

Game Game::tabulate(const Wealth& wealth, std::vector<std::size_t> players, std::size_t cap)
{
    std::sort(players.begin(), players.end());
    players.erase(std::unique(players.begin(), players.end()), players.end());
    const std::size_t n = players.size();
    if (n > cap || n > 30)
        throw CapExceeded("tabulating " + std::to_string(n) + " players", n, std::min<std::size_t>(cap, 30));

    // Witnesses as masks over the sub-game; those needing an absent player never fire.
    std::vector<std::int64_t> position(wealth.size(), -1);
    for (std::size_t i = 0; i < n; ++i)
        position[players[i]] = static_cast<std::int64_t>(i);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
    for (const auto& w : wealth.witnesses_) {
        std::uint32_t pos = 0;
        std::uint32_t neg = 0;
        bool feasible = true;
        for (auto i : w.positive) {
            if (position[i] < 0)
                feasible = false;
            else
                pos |= 1U << position[i];
        }
        for (auto i : w.negative)
            if (position[i] >= 0)
                neg |= 1U << position[i];
        if (feasible)
            masks.emplace_back(pos, neg);
    }

    const std::size_t count = std::size_t{1} << n;
    std::vector<std::int64_t> values(count);
    for (std::size_t s = 0; s < count; ++s) {
        const auto c = static_cast<std::uint32_t>(s);
        values[s] = std::any_of(masks.begin(), masks.end(), [c](const auto& m) {
            return (m.first & ~c) == 0 && (m.second & c) == 0;
        });
    }

    if (is_count_kind(wealth.kind())) {
        // Monotone: a satisfying coalition is minimal iff no single removal satisfies.
        std::vector<std::int64_t> minimal(count, 0);
        for (std::size_t s = 0; s < count; ++s) {
            if (!values[s])
                continue;
            bool is_minimal = true;
            for (std::size_t b = 0; is_minimal && b < n; ++b)
                if (s >> b & 1U)
                    is_minimal = values[s & ~(std::size_t{1} << b)] == 0;
            minimal[s] = is_minimal;
        }
        // values[s] := number of minimal coalitions contained in s.
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t s = 0; s < count; ++s)
                if (s >> b & 1U)
                    minimal[s] += minimal[s & ~(std::size_t{1} << b)];
        values = std::move(minimal);
    }

    Game g;
    g.players_ = std::move(players);
    g.values_ = std::move(values);
    return g;
}

std::optional<std::size_t> Game::position_of(std::size_t wealth_index) const
{
    auto it = std::lower_bound(players_.begin(), players_.end(), wealth_index);
    if (it == players_.end() || *it != wealth_index)
        return std::nullopt;
    return static_cast<std::size_t>(it - players_.begin());
}

PermutationResult shapley_permutation(const Game& game, std::size_t position, std::size_t cap)
{
    const std::size_t n = game.size();
    if (n > cap)
        throw CapExceeded("permutation Shapley over " + std::to_string(n) + " players", n, cap);
    if (position >= n)
        throw SemanticError("target is not a player of the game");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    PermutationResult out;
    std::int64_t total = 0;
    do {
        std::uint32_t prefix = 0;
        for (auto p : order) {
            if (p == position)
                break;
            prefix |= 1U << p;
        }
        const std::int64_t marginal = game.value(prefix | (1U << position)) - game.value(prefix);
        total += marginal;
        ++out.orderings;
        if (marginal > 0)
            ++out.positive_impact;
        else if (marginal < 0)
            ++out.negative_impact;
    } while (std::next_permutation(order.begin(), order.end()));
    out.value = Rational(total) / factorial(static_cast<unsigned>(n));
    return out;
}

Rational shapley_subset(const Game& game, std::size_t position)
{
    const std::size_t n = game.size();
    if (position >= n)
        throw SemanticError("target is not a player of the game");
    const std::uint32_t bit = 1U << position;
    std::vector<std::int64_t> by_size(n, 0);
    for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
        const auto c = static_cast<std::uint32_t>(s);
        if (c & bit)
            continue;
        by_size[static_cast<std::size_t>(std::popcount(c))] += game.value(c | bit) - game.value(c);
    }
    Rational out;
    const Rational n_fact = factorial(static_cast<unsigned>(n));
    for (std::size_t k = 0; k < n; ++k)
        if (by_size[k] != 0)
            out += Rational(by_size[k]) * factorial(static_cast<unsigned>(k)) *
                   factorial(static_cast<unsigned>(n - 1 - k)) / n_fact;
    return out;
}

std::vector<Rational> shapley_subset_all(const Game& game)
{
    std::vector<Rational> out;
    out.reserve(game.size());
    for (std::size_t i = 0; i < game.size(); ++i)
        out.push_back(shapley_subset(game, i));
    return out;
}

namespace {

std::size_t require_player(const Wealth& wealth, const SignedFact& target)
{
    auto i = wealth.index_of(target);
    if (!i)
        throw SemanticError(target.str() + " is not a player of the " + to_string(wealth.kind()) +
                            " wealth function");
    return *i;
}

} // namespace

PermutationResult shapley_permutation(const Wealth& wealth, const SignedFact& target, std::size_t cap)
{
    const auto index = require_player(wealth, target);
    if (wealth.size() > cap)
        throw CapExceeded("permutation Shapley over " + std::to_string(wealth.size()) + " players", wealth.size(), cap);
    const Game game = Game::tabulate(wealth, cap);
    return shapley_permutation(game, index, cap);
}

Rational shapley_subset(const Wealth& wealth, const SignedFact& target, std::size_t cap)
{
    const auto index = require_player(wealth, target);
    return shapley_subset(Game::tabulate(wealth, cap), index);
}

WeightFunction WeightFunction::reciprocal()
{
    return {"reciprocal", [](std::size_t k) { return Rational(1, static_cast<std::int64_t>(k)); }};
}

WeightFunction WeightFunction::constant()
{
    return {"constant", [](std::size_t) { return Rational(1); }};
}

Rational wsms_closed_form(const Query& q, const Database& db, const SignedFact& target, const WeightFunction& w,
                          SupportMode mode)
{
    const auto supports = mode == SupportMode::signed_mode ? minimal_signed_supports(q, db)
                                                           : minimal_positive_supports(q, db);
    const SignedFact key = mode == SupportMode::signed_mode ? target : SignedFact::plus(target.fact);
    Rational out;
    for (const auto& s : supports)
        if (s.contains(key))
            out += w(s.size());
    return out;
}

namespace {

template <class Visit>
void combinations(std::size_t n, std::size_t k, Visit&& visit)
{
    std::vector<std::size_t> pick(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            visit(pick);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace

MsScore ms_shapley(const Query& q, const Database& db, const SignedFact& target, SupportMode mode,
                   const WeightFunction& w, std::size_t signed_cap)
{
    MsScore out;
    std::vector<SignedFact> universe;
    std::vector<Literal> atoms;
    std::size_t bound = 0;
    std::optional<Query> signed_query;
    SignedFact key = target;

    if (mode == SupportMode::signed_mode) {
        universe = signed_database_restricted(db, q, signed_cap).signed_facts;
        signed_query = sign_transform(q);
        bound = signed_query->max_atom_count();
        for (const auto& d : signed_query->disjuncts())
            for (const auto& a : d.positive_atoms())
                atoms.push_back(a);
    } else {
        key = SignedFact::plus(target.fact);
        for (const auto& f : db.facts())
            universe.push_back(SignedFact::plus(f));
        bound = q.max_positive_atom_count();
        for (const auto& d : q.disjuncts())
            for (const auto& a : d.positive_atoms())
                atoms.push_back(a);
    }
    if (!std::binary_search(universe.begin(), universe.end(), key))
        return out;

    auto evaluated = [&](const SignedFact& sf) {
        return mode == SupportMode::signed_mode ? encode_signed(sf) : sf.fact;
    };
    auto matchable = [&](const SignedFact& sf) {
        const Fact f = evaluated(sf);
        return std::any_of(atoms.begin(), atoms.end(), [&](const Literal& a) { return detail::atom_matches(a, f); });
    };
    if (!matchable(key))
        return out;

    std::vector<SignedFact> others;
    for (const auto& sf : universe)
        if (sf != key && matchable(sf))
            others.push_back(sf);

    auto is_support = [&](const std::vector<SignedFact>& s) {
        if (mode == SupportMode::signed_mode)
            return satisfies_signed(*signed_query, s);
        std::vector<Fact> plain;
        for (const auto& sf : s)
            plain.push_back(sf.fact);
        return is_positive_support(plain, q, db);
    };

    for (std::size_t extra = 0; extra < bound; ++extra) {
        combinations(others.size(), extra, [&](const std::vector<std::size_t>& pick) {
            std::vector<SignedFact> s{key};
            for (auto i : pick)
                s.push_back(others[i]);
            if (!is_support(s))
                return;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                auto smaller = s;
                smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
                if (!smaller.empty() && is_support(smaller))
                    return;
            }
            out.value += w(s.size());
            ++out.size_histogram[s.size()];
        });
    }
    return out;
}

} // namespace qexplain
