#pragma once

// Backtracking evaluation of CQs with negation over small in-memory fact
// sets. Shared by the support engine and the wealth functions.

#include <functional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qexplain/query.hpp"
#include "qexplain/relational.hpp"

namespace qexplain::detail {

using Binding = std::vector<const Constant*>;

/// Non-owning index of facts by relation name. The facts must outlive it.
class FactIndex {
public:
    FactIndex() = default;
    explicit FactIndex(std::span<const Fact> facts);
    explicit FactIndex(std::vector<const Fact*> facts);

    const std::vector<const Fact*>& of(const std::string& relation) const;
    bool contains(const Fact& fact) const;
    std::size_t size() const { return sorted_.size(); }

private:
    void build();

    std::vector<const Fact*> sorted_;
    std::unordered_map<std::string, std::vector<const Fact*>> by_relation_;
};

/// Returns true when a fact is present; used to falsify negated atoms.
using PresenceTest = std::function<bool(const Fact&)>;

/// Called with the variable binding and the facts matched by each positive
/// atom (in atom order). Return false to stop the search.
using MatchVisitor = std::function<bool(const Binding&, const std::vector<const Fact*>&)>;

class CompiledConjunct {
public:
    explicit CompiledConjunct(const ConjunctNeg& cq);
    CompiledConjunct(const CompiledConjunct&) = delete;
    CompiledConjunct& operator=(const CompiledConjunct&) = delete;
    CompiledConjunct(CompiledConjunct&&) = default;

    /// Enumerates assignments sending positive atoms into `facts`. Negated
    /// atoms are checked with `present` when set and ignored otherwise.
    /// Returns false if the visitor stopped the search.
    bool search(const FactIndex& facts, const PresenceTest& present, const MatchVisitor& visit) const;

    Fact ground(const Literal& atom, const Binding& binding) const;
    const ConjunctNeg& source() const noexcept { return source_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    std::size_t variable_index(const std::string& name) const;

private:
    struct Slot {
        bool is_variable;
        std::size_t index; // into the binding, or into constants_
    };
    struct CompiledLiteral {
        const Literal* literal;
        std::vector<Slot> slots;
    };

    bool extend(std::size_t depth, const FactIndex& facts, const PresenceTest& present, const MatchVisitor& visit,
                Binding& binding, std::vector<const Fact*>& images) const;
    bool checks_hold(std::size_t depth, const PresenceTest& present, const Binding& binding) const;
    Fact ground(const CompiledLiteral& lit, const Binding& binding) const;

    ConjunctNeg source_;
    std::vector<std::string> variables_;
    std::vector<Constant> constants_;
    std::vector<CompiledLiteral> positives_;
    // checks_[k]: negated atoms and inequalities whose variables are all bound
    // once positive atoms 0..k are matched.
    std::vector<std::vector<CompiledLiteral>> checks_;
};

std::set<Constant> domain_of(std::span<const Fact> facts);
bool over_domain(const Fact& fact, const std::set<Constant>& domain);

/// Presence test for negated atoms under the closed world of db: a fact is
/// blocking when it is in db or mentions a constant outside adom(db).
PresenceTest closed_world(const Database& db);

/// Does the atom (under no prior binding) map onto the fact?
bool atom_matches(const Literal& atom, const Fact& fact);

/// A satisfying assignment over a fixed universe of facts, recorded as
/// indices into that universe.
struct Witness {
    std::vector<std::size_t> positive; // images of positive atoms (sorted, unique)
    std::vector<std::size_t> negative; // images of negated atoms that are in the universe
};

enum class NegationMode {
    none,    // query has no negated atoms to care about (signed queries)
    context, // negated atoms must be absent from a fixed context database
    self,    // negated atoms must be absent from the evaluated subset itself
};

// Negated atoms only range over the active domain: an assignment grounding a
// negated atom outside it is not a match. The domain is that of the context
// in context mode and of the universe in self mode.

/// All distinct witnesses of q over `universe`. In `context` mode the
/// negated atoms are checked against `context` during the search.
std::vector<Witness> compile_witnesses(const Query& q, const std::vector<Fact>& universe, NegationMode mode,
                                       const Database* context = nullptr);

} // namespace qexplain::detail
