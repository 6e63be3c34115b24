#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qexplain/query.hpp"
#include "qexplain/rational.hpp"
#include "qexplain/relational.hpp"

namespace qexplain {

enum class WealthKind {
    drastic_direct,   // 1 iff the subset itself satisfies q (non-monotone)
    signed_drastic,   // 1 iff the signed subset satisfies the signed query
    positive_drastic, // 1 iff the subset contains a positive support
    ms_signed,        // number of minimal signed supports inside the subset
    mps_positive,     // number of minimal positive supports inside the subset
};

std::string to_string(WealthKind kind);
bool is_signed_kind(WealthKind kind);
bool is_monotone_kind(WealthKind kind);

/// A wealth function closed over a query and database, together with its
/// player set: the facts of the database, or the restricted signed
/// database for signed kinds. Plain players are stored as + signings.
class Wealth {
public:
    Wealth(WealthKind kind, const Query& q, const Database& db, std::size_t signed_cap = kDefaultSignedCap);

    /// Signed kinds over the full completion rather than its restriction.
    static Wealth over_full_completion(WealthKind kind, const Query& q, const Database& db,
                                       std::size_t signed_cap = kDefaultSignedCap);

    WealthKind kind() const noexcept { return kind_; }
    const std::vector<SignedFact>& players() const noexcept { return players_; }
    std::size_t size() const noexcept { return players_.size(); }

    std::optional<std::size_t> index_of(const SignedFact& player) const;
    std::optional<std::size_t> index_of(const Fact& player) const;

    /// Value on the subset of players with the given indices.
    std::int64_t value(std::span<const std::size_t> subset) const;

    /// Players that can change the value of some coalition. Everyone else is
    /// a null player.
    std::vector<std::size_t> non_null_players() const;

    /// Whether the subset satisfies the underlying support condition (used
    /// for tabulation; for count kinds this is "contains some support").
    bool satisfied(const std::vector<char>& members) const;

private:
    friend class Game;

    Wealth(WealthKind kind, const Query& q, const Database& db, std::vector<SignedFact> players);

    struct Witness {
        std::vector<std::size_t> positive;
        std::vector<std::size_t> negative;
    };

    WealthKind kind_;
    std::vector<SignedFact> players_;
    std::vector<Witness> witnesses_;
    std::vector<std::vector<std::size_t>> minimal_; // inclusion-minimal positive images
};

/// Wealth of an explicit subset; every element must be a player of the kind.
/// For plain kinds pass + signings.
Rational wealth(WealthKind kind, const Query& q, const Database& db, std::span<const SignedFact> subset);

inline constexpr std::size_t kDefaultPermutationCap = 8;
inline constexpr std::size_t kDefaultSubsetCap = 20;

/// A wealth function tabulated on every coalition of a set of at most
/// 2^cap players. Count kinds are tabulated from scratch: satisfaction per
/// coalition, minimality by single removal, then a subset-sum transform.
class Game {
public:
    static Game tabulate(const Wealth& wealth, std::size_t cap = kDefaultSubsetCap);
    /// Sub-game on the given players (indices into wealth.players()); the
    /// others are absent from every coalition.
    static Game tabulate(const Wealth& wealth, std::vector<std::size_t> players, std::size_t cap = kDefaultSubsetCap);

    std::size_t size() const noexcept { return players_.size(); }
    /// Indices into the wealth's player list.
    const std::vector<std::size_t>& players() const noexcept { return players_; }
    std::optional<std::size_t> position_of(std::size_t wealth_index) const;
    std::int64_t value(std::uint32_t coalition) const { return values_[coalition]; }

private:
    std::vector<std::size_t> players_;
    std::vector<std::int64_t> values_;
};

struct PermutationResult {
    Rational value;
    std::uint64_t orderings = 0;
    std::uint64_t positive_impact = 0; // orderings with a positive marginal
    std::uint64_t negative_impact = 0; // orderings with a negative marginal
};

/// Average marginal contribution over all orderings of the game's players.
PermutationResult shapley_permutation(const Game& game, std::size_t position,
                                      std::size_t cap = kDefaultPermutationCap);
/// Coefficient form: sum over coalitions S without the target of
/// |S|!(n-1-|S|)!/n! times the marginal contribution.
Rational shapley_subset(const Game& game, std::size_t position);
std::vector<Rational> shapley_subset_all(const Game& game);

PermutationResult shapley_permutation(const Wealth& wealth, const SignedFact& target,
                                      std::size_t cap = kDefaultPermutationCap);
Rational shapley_subset(const Wealth& wealth, const SignedFact& target, std::size_t cap = kDefaultSubsetCap);

/// Weight of a minimal support as a function of its size.
struct WeightFunction {
    std::string name;
    std::function<Rational(std::size_t)> weight;

    Rational operator()(std::size_t size) const { return weight(size); }

    static WeightFunction reciprocal();
    static WeightFunction constant();
};

enum class SupportMode { signed_mode, positive };

/// Sum of w(|S|) over the minimal supports of the mode containing target.
/// In positive mode the target's sign is ignored.
Rational wsms_closed_form(const Query& q, const Database& db, const SignedFact& target, const WeightFunction& w,
                          SupportMode mode);

struct MsScore {
    Rational value;
    std::map<std::size_t, std::size_t> size_histogram; // support size -> count
};

/// Scores one target by searching only the candidate subsets that contain
/// it. Agrees with wsms_closed_form; reciprocal weight gives the MS-Shapley
/// (signed mode) or MPS-Shapley (positive mode) value.
MsScore ms_shapley(const Query& q, const Database& db, const SignedFact& target, SupportMode mode,
                   const WeightFunction& w = WeightFunction::reciprocal(), std::size_t signed_cap = kDefaultSignedCap);

} // namespace qexplain
