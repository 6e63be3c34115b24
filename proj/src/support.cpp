#include "qexplain/support.hpp"

#include <algorithm>
#include <cstdint>

#include "evaluator.hpp"
#include "qexplain/error.hpp"

namespace qexplain {

using detail::Binding;
using detail::CompiledConjunct;
using detail::FactIndex;
using detail::PresenceTest;

namespace {

std::vector<Match> collect(const Query& q, const FactIndex& index, const PresenceTest& present)
{
    std::vector<Match> out;
    for (std::size_t i = 0; i < q.disjuncts().size(); ++i) {
        const CompiledConjunct cq(q.disjuncts()[i]);
        cq.search(index, present, [&](const Binding& binding, const std::vector<const Fact*>&) {
            Match m{i, {}};
            for (std::size_t v = 0; v < binding.size(); ++v)
                m.assignment.emplace(cq.variables()[v], *binding[v]);
            out.push_back(std::move(m));
            return true;
        });
    }
    return out;
}

bool any_match(const Query& q, const FactIndex& index, const PresenceTest& present)
{
    for (const auto& d : q.disjuncts()) {
        const CompiledConjunct cq(d);
        bool found = false;
        cq.search(index, present, [&](const Binding&, const std::vector<const Fact*>&) {
            found = true;
            return false;
        });
        if (found)
            return true;
    }
    return false;
}

std::vector<Fact> encode_all(std::span<const SignedFact> facts)
{
    std::vector<Fact> out;
    out.reserve(facts.size());
    for (const auto& sf : facts)
        out.push_back(encode_signed(sf));
    return out;
}

void require_signed(const Query& q)
{
    if (!is_signed_query(q))
        throw SemanticError("signed facts can only be evaluated against a sign-transformed query");
}

void require_subset(std::span<const Fact> S, const Database& db)
{
    for (const auto& f : S)
        if (!db.contains(f))
            throw SemanticError("fact " + f.str() + " is not in the database");
}

// Visits k-subsets of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit)
{
    if (k > n)
        return;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i)
        pick[i] = i;
    while (true) {
        visit(pick);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

// Minimal sets of an upward-closed predicate over candidates, searched by
// increasing size up to max_size. Supersets of a found set are skipped.
template <class Test>
std::vector<std::vector<std::size_t>> minimal_sets(std::size_t n, std::size_t max_size, Test&& test)
{
    std::vector<std::vector<std::size_t>> found;
    for (std::size_t k = 1; k <= max_size; ++k) {
        for_each_combination(n, k, [&](const std::vector<std::size_t>& pick) {
            for (const auto& f : found)
                if (std::includes(pick.begin(), pick.end(), f.begin(), f.end()))
                    return;
            if (test(pick))
                found.push_back(pick);
        });
    }
    return found;
}

// Candidates: elements some atom of the query can map onto.
std::vector<Fact> matchable(const std::vector<Fact>& universe, const std::vector<Literal>& atoms)
{
    std::vector<Fact> out;
    for (const auto& f : universe)
        if (std::any_of(atoms.begin(), atoms.end(), [&](const Literal& a) { return detail::atom_matches(a, f); }))
            out.push_back(f);
    return out;
}

std::vector<Literal> all_positive_atoms(const Query& q)
{
    std::vector<Literal> out;
    for (const auto& d : q.disjuncts()) {
        auto atoms = d.positive_atoms();
        out.insert(out.end(), atoms.begin(), atoms.end());
    }
    return out;
}

void sort_supports(std::vector<SupportSet>& supports)
{
    std::sort(supports.begin(), supports.end(),
              [](const SupportSet& a, const SupportSet& b) { return a.elements < b.elements; });
}

} // namespace

std::vector<Match> satisfying_assignments(const Query& q, std::span<const Fact> facts, const Database* context)
{
    if (q.has_negation() && context == nullptr)
        throw SemanticError("query has negated atoms: a context database is required");
    PresenceTest present;
    if (context)
        present = detail::closed_world(*context);
    return collect(q, FactIndex(facts), present);
}

std::vector<Match> satisfying_assignments(const Query& signed_query, std::span<const SignedFact> facts)
{
    require_signed(signed_query);
    const auto encoded = encode_all(facts);
    return collect(signed_query, FactIndex(std::span<const Fact>(encoded)), {});
}

bool satisfies(const Query& q, std::span<const Fact> facts)
{
    return satisfies(q, facts, detail::domain_of(facts));
}

bool satisfies(const Query& q, std::span<const Fact> facts, const std::set<Constant>& domain)
{
    const FactIndex index(facts);
    return any_match(q, index, [&](const Fact& f) { return !detail::over_domain(f, domain) || index.contains(f); });
}

bool satisfies_signed(const Query& signed_query, std::span<const SignedFact> facts)
{
    require_signed(signed_query);
    const auto encoded = encode_all(facts);
    return any_match(signed_query, FactIndex(std::span<const Fact>(encoded)), {});
}

std::string to_string(SupportKind kind)
{
    switch (kind) {
    case SupportKind::signed_support: return "signed";
    case SupportKind::positive: return "positive";
    case SupportKind::d_monotone: return "dmonotone";
    case SupportKind::entailment_bounded: return "entailment";
    }
    return "?";
}

std::vector<Fact> SupportSet::facts() const
{
    std::vector<Fact> out;
    for (const auto& sf : elements)
        out.push_back(sf.fact);
    return out;
}

bool SupportSet::contains(const SignedFact& sf) const
{
    return std::binary_search(elements.begin(), elements.end(), sf);
}

bool SupportSet::contains(const Fact& f) const { return contains(SignedFact::plus(f)); }

std::string SupportSet::str() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i)
            out += ", ";
        out += kind == SupportKind::signed_support || kind == SupportKind::entailment_bounded ? elements[i].str()
                                                                                             : elements[i].fact.str();
    }
    return out + "}";
}

bool is_signed_support(std::span<const SignedFact> S, const Query& q, const Database& db)
{
    const Database extended = extend_schema(db, q);
    for (const auto& sf : S)
        if (!in_signed_database(sf, extended))
            throw SemanticError("signed fact " + sf.str() + " is not in the signed database");
    return satisfies_signed(sign_transform(q), S);
}

std::vector<SupportSet> minimal_signed_supports(const Query& q, const Database& db, std::size_t signed_cap)
{
    const SignedDatabase sdb = signed_database_restricted(db, q, signed_cap);
    const Query qs = sign_transform(q);
    const auto candidates = matchable(encode_all(sdb.signed_facts), all_positive_atoms(qs));

    auto holds = [&](const std::vector<std::size_t>& pick) {
        std::vector<const Fact*> chosen;
        for (auto i : pick)
            chosen.push_back(&candidates[i]);
        return any_match(qs, FactIndex(std::move(chosen)), {});
    };

    std::vector<SupportSet> out;
    for (const auto& pick : minimal_sets(candidates.size(), qs.max_atom_count(), holds)) {
        // Monotone predicate: minimal iff no single removal still satisfies.
        for (std::size_t drop = 0; drop < pick.size(); ++drop) {
            auto smaller = pick;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
            if (!smaller.empty() && holds(smaller))
                throw std::logic_error("non-minimal signed support produced");
        }
        SupportSet s{SupportKind::signed_support, {}, true};
        for (auto i : pick)
            s.elements.push_back(decode_signed(candidates[i]));
        std::sort(s.elements.begin(), s.elements.end());
        out.push_back(std::move(s));
    }
    sort_supports(out);
    return out;
}

bool is_positive_support(std::span<const Fact> S, const Query& q, const Database& db)
{
    require_subset(S, db);
    return any_match(q, FactIndex(S), detail::closed_world(db));
}

std::vector<SupportSet> minimal_positive_supports(const Query& q, const Database& db)
{
    const auto candidates = matchable(db.facts(), all_positive_atoms(q));
    const auto present = detail::closed_world(db);
    auto holds = [&](const std::vector<std::size_t>& pick) {
        std::vector<const Fact*> chosen;
        for (auto i : pick)
            chosen.push_back(&candidates[i]);
        return any_match(q, FactIndex(std::move(chosen)), present);
    };

    std::vector<SupportSet> out;
    for (const auto& pick : minimal_sets(candidates.size(), q.max_positive_atom_count(), holds)) {
        SupportSet s{SupportKind::positive, {}, true};
        for (auto i : pick)
            s.elements.push_back(SignedFact::plus(candidates[i]));
        out.push_back(std::move(s));
    }
    sort_supports(out);
    return out;
}

bool is_d_monotone_support(std::span<const Fact> S, const Query& q, const Database& db, std::size_t cap)
{
    require_subset(S, db);
    std::vector<Fact> rest;
    for (const auto& f : db.facts())
        if (std::find(S.begin(), S.end(), f) == S.end())
            rest.push_back(f);
    if (rest.size() > cap)
        throw CapExceeded("D-monotone check over " + std::to_string(rest.size()) + " remaining facts", rest.size(),
                          cap);

    const auto domain = active_domain(db);
    std::vector<Fact> superset;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
        superset.assign(S.begin(), S.end());
        for (std::size_t i = 0; i < rest.size(); ++i)
            if (mask >> i & 1U)
                superset.push_back(rest[i]);
        if (!satisfies(q, superset, domain))
            return false;
    }
    return true;
}

std::vector<SupportSet> minimal_d_monotone_supports(const Query& q, const Database& db, std::size_t cap)
{
    const std::size_t n = db.size();
    if (n > cap || n > 30)
        throw CapExceeded("D-monotone enumeration over " + std::to_string(n) + " facts", n, std::min<std::size_t>(cap, 30));

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

    const std::uint32_t full = n == 32 ? ~0U : (1U << n) - 1;
    std::vector<char> monotone(std::size_t{1} << n);
    for (std::uint32_t s = 0;; ++s) {
        monotone[s] = std::any_of(masks.begin(), masks.end(), [s](const auto& m) {
            return (m.first & ~s) == 0 && (m.second & s) == 0;
        });
        if (s == full)
            break;
    }
    // monotone[s] := every superset of s satisfies q.
    for (std::size_t bit = 0; bit < n; ++bit)
        for (std::uint32_t s = 0; s <= full; ++s) {
            if (!(s >> bit & 1U))
                monotone[s] = monotone[s] && monotone[s | (1U << bit)];
            if (s == full)
                break;
        }

    std::vector<SupportSet> out;
    for (std::uint32_t s = 0;; ++s) {
        bool minimal = monotone[s];
        for (std::size_t bit = 0; minimal && bit < n; ++bit)
            if (s >> bit & 1U)
                minimal = !monotone[s & ~(1U << bit)];
        if (minimal) {
            SupportSet set{SupportKind::d_monotone, {}, true};
            for (std::size_t bit = 0; bit < n; ++bit)
                if (s >> bit & 1U)
                    set.elements.push_back(SignedFact::plus(db.facts()[bit]));
            out.push_back(std::move(set));
        }
        if (s == full)
            break;
    }
    sort_supports(out);
    return out;
}

namespace {

// Searches for a database that contains all forced-true facts, none of the
// forced-false ones, and falsifies q. Free facts are decided in order; a
// branch is closed as soon as the decided facts alone satisfy q.
class CountermodelSearch {
public:
    CountermodelSearch(const Query& q, std::vector<Fact> free, std::vector<Fact> forced_true,
                       std::vector<Fact> forced_false)
        : q_(q), free_(std::move(free)), truth_(free_.size(), 0), forced_true_(std::move(forced_true)),
          forced_false_(std::move(forced_false))
    {
        std::sort(forced_false_.begin(), forced_false_.end());
        for (const auto& d : q_.disjuncts())
            compiled_.emplace_back(d);
    }

    bool exists() { return search(0); }

private:
    // q holds through facts known true, with every negated atom known false.
    bool certainly_true(std::size_t decided) const
    {
        std::vector<const Fact*> known;
        for (const auto& f : forced_true_)
            known.push_back(&f);
        for (std::size_t i = 0; i < decided; ++i)
            if (truth_[i] == 1)
                known.push_back(&free_[i]);
        const FactIndex index(std::move(known));
        auto possibly_present = [&](const Fact& f) {
            if (std::binary_search(forced_false_.begin(), forced_false_.end(), f))
                return false;
            for (std::size_t i = 0; i < decided; ++i)
                if (truth_[i] == 0 && free_[i] == f)
                    return false;
            return true;
        };
        for (const auto& cq : compiled_) {
            bool found = false;
            cq.search(index, possibly_present, [&](const Binding&, const std::vector<const Fact*>&) {
                found = true;
                return false;
            });
            if (found)
                return true;
        }
        return false;
    }

    bool search(std::size_t depth)
    {
        if (certainly_true(depth))
            return false;
        if (depth == free_.size())
            return true; // every fact decided and q does not hold
        for (char value : {char{1}, char{0}}) {
            truth_[depth] = value;
            if (search(depth + 1))
                return true;
        }
        return false;
    }

    const Query& q_;
    std::vector<Fact> free_;
    std::vector<char> truth_;
    std::vector<Fact> forced_true_;
    std::vector<Fact> forced_false_;
    std::vector<CompiledConjunct> compiled_;
};

} // namespace

bool entailment_supports_bounded(std::span<const SignedFact> S, const Query& q, const std::set<Constant>& domain,
                                 std::size_t cap)
{
    std::vector<Fact> pos;
    std::vector<Fact> neg;
    for (const auto& sf : S)
        (sf.sign == Sign::positive ? pos : neg).push_back(sf.fact);
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    for (const auto& f : pos)
        if (std::binary_search(neg.begin(), neg.end(), f))
            return true; // no database is consistent with S

    // Relations in order of first use in q, then those only in S.
    std::vector<RelationSymbol> relations;
    for (const auto& d : q.disjuncts())
        for (const auto& lit : d.literals())
            if (lit.relation && std::find(relations.begin(), relations.end(), *lit.relation) == relations.end())
                relations.push_back(*lit.relation);
    for (const auto& sf : S)
        if (std::find(relations.begin(), relations.end(), sf.fact.relation) == relations.end())
            relations.push_back(sf.fact.relation);

    const std::vector<Constant> consts(domain.begin(), domain.end());
    std::size_t total = 0;
    for (const auto& rel : relations) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < rel.arity && count <= cap; ++i)
            count *= consts.size();
        total += count;
        if (total > cap)
            throw CapExceeded("bounded entailment over the domain", total, cap);
    }

    std::vector<Fact> free;
    for (const auto& rel : relations) {
        if (consts.empty())
            break;
        std::vector<std::size_t> odometer(rel.arity, 0);
        while (true) {
            Fact f;
            f.relation = rel;
            for (auto i : odometer)
                f.tuple.push_back(consts[i]);
            if (!std::binary_search(pos.begin(), pos.end(), f) && !std::binary_search(neg.begin(), neg.end(), f))
                free.push_back(std::move(f));
            std::size_t p = rel.arity;
            while (p > 0 && ++odometer[p - 1] == consts.size())
                odometer[--p] = 0;
            if (p == 0)
                break;
        }
    }

    CountermodelSearch search(q, std::move(free), std::move(pos), std::move(neg));
    return !search.exists();
}

GuardedReduction guarded_reduction(const ConjunctNeg& q, const Database& db)
{
    if (!is_guarded(q))
        throw SemanticError("guarded reduction needs every negated atom to be guarded");
    if (!mergeable_pairs(q).empty())
        throw SemanticError("guarded reduction needs a conjunct without mergeable atoms");

    const auto positives = q.positive_atoms();
    auto guard_of = [&](const Literal& lit) -> std::optional<std::size_t> {
        const auto needed = lit.variables();
        for (std::size_t i = 0; i < positives.size(); ++i) {
            const auto vars = positives[i].variables();
            if (std::includes(vars.begin(), vars.end(), needed.begin(), needed.end()))
                return i;
        }
        return std::nullopt;
    };

    // Negations and guarded inequalities are attached to their guard atom;
    // inequalities spanning several atoms stay in the positive query.
    std::vector<std::vector<Literal>> attached(positives.size());
    std::vector<Literal> plus_literals = positives;
    for (const auto& lit : q.literals()) {
        if (lit.kind == Literal::Kind::positive_atom)
            continue;
        if (auto g = guard_of(lit))
            attached[*g].push_back(lit);
        else
            plus_literals.push_back(lit); // only unguarded inequalities reach here
    }
    Query q_plus({ConjunctNeg(q.variables(), plus_literals)});

    std::vector<Fact> prime;
    std::vector<Fact> double_prime;
    for (const auto& beta : db.facts()) {
        std::optional<std::size_t> hat;
        for (std::size_t i = 0; i < positives.size() && !hat; ++i)
            if (detail::atom_matches(positives[i], beta))
                hat = i;
        if (!hat)
            continue;
        prime.push_back(beta);

        // q_beta: the guard atom together with its attached literals, evaluated on db.
        std::vector<std::string> vars;
        for (const auto& v : positives[*hat].variables())
            vars.push_back(v);
        std::vector<Literal> literals{positives[*hat]};
        literals.insert(literals.end(), attached[*hat].begin(), attached[*hat].end());
        const Query q_beta({ConjunctNeg(vars, literals)});
        const std::vector<Fact> single{beta};
        if (!satisfying_assignments(q_beta, single, &db).empty())
            double_prime.push_back(beta);
    }
    return {std::move(q_plus), db.with_facts(std::move(prime)), db.with_facts(std::move(double_prime))};
}

} // namespace qexplain
