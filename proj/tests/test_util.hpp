#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// enumerate every subset or ordering and only rely on plain satisfaction.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qexplain/query.hpp"
#include "qexplain/rational.hpp"
#include "qexplain/relational.hpp"
#include "qexplain/shapley.hpp"
#include "qexplain/support.hpp"

namespace qexplain {

inline void PrintTo(const Fact& f, std::ostream* os) { *os << f.str(); }
inline void PrintTo(const SignedFact& f, std::ostream* os) { *os << f.str(); }
inline void PrintTo(const Rational& r, std::ostream* os) { *os << r.str(); }

} // namespace qexplain

namespace qexplain::testing {

inline Database db_of(std::string_view text) { return parse_database(text); }
inline Fact fact(std::string_view text) { return parse_fact(text); }
inline SignedFact sfact(std::string_view text) { return parse_signed_fact(text); }

inline std::vector<Fact> facts_of(std::initializer_list<std::string_view> texts)
{
    std::vector<Fact> out;
    for (auto t : texts)
        out.push_back(parse_fact(t));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<SignedFact> sfacts_of(std::initializer_list<std::string_view> texts)
{
    std::vector<SignedFact> out;
    for (auto t : texts)
        out.push_back(parse_signed_fact(t));
    std::sort(out.begin(), out.end());
    return out;
}

// Recipe database and queries.
inline Database recipe_db()
{
    return db_of("I(mp,wine)\nI(mp,meat)\nI(mp,fish)\nI(mm,wine)\nI(mm,fish)\n");
}
inline Query q_fish() { return parse_query(R"(exists x. I(x,"fish"), !I(x,"meat"))"); }
inline Query q2()
{
    return parse_query(R"(exists x. I(x,"meat"), I(x,"wine") | exists x. I(x,"fish"), !I(x,"wine"))");
}

// Triangle instance whose minimal signed supports are S1 and S2.
inline Database triangle_db() { return db_of("E(a,b)\nE(b,a)\nE(b,c)\nE(c,c)\n"); }
inline Query triangle_q() { return parse_query("exists x,y,z. E(x,y), E(y,z), !E(z,x), x != z"); }

// A(x), R(x,y), not A(y)
inline Query chain_q() { return parse_query("exists x,y. A(x), R(x,y), !A(y)"); }

// A(c_i) for i < n and R(c_i, c_{i+1}) for i < n.
inline Database entailment_chain(int n)
{
    std::string text;
    for (int i = 0; i < n; ++i) {
        text += "A(c" + std::to_string(i) + ")\n";
        text += "R(c" + std::to_string(i) + ",c" + std::to_string(i + 1) + ")\n";
    }
    return db_of(text);
}

inline std::vector<SignedFact> entailment_chain_support(int n)
{
    std::vector<SignedFact> out{SignedFact::plus(Fact("A", {"c0"})),
                                SignedFact::minus(Fact("A", {std::string("c") + std::to_string(n)}))};
    // Fact's initializer_list ctor takes string_views, so build R facts by parsing.
    for (int i = 0; i < n; ++i)
        out.push_back(SignedFact::plus(
            parse_fact("R(c" + std::to_string(i) + ",c" + std::to_string(i + 1) + ")")));
    std::sort(out.begin(), out.end());
    return out;
}

// R(c_i, c_{i+1}) for i < n, A(c_i) for i <= n, B(c_n).
inline Database monotone_chain(int n)
{
    std::string text;
    for (int i = 0; i < n; ++i)
        text += "R(c" + std::to_string(i) + ",c" + std::to_string(i + 1) + ")\n";
    for (int i = 0; i <= n; ++i)
        text += "A(c" + std::to_string(i) + ")\n";
    text += "B(c" + std::to_string(n) + ")\n";
    return db_of(text);
}
inline Query monotone_chain_q()
{
    return parse_query("exists x,y. A(x), R(x,y), !A(y) | exists x. A(x), B(x)");
}

// ---------------------------------------------------------------------------
// Oracles

/// Number of tuples of each relation over the active domain, by nested loops.
inline std::size_t count_completion(const Database& db)
{
    const auto adom = active_domain(db);
    std::size_t total = 0;
    for (const auto& rel : db.schema().relations()) {
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < rel.arity; ++i)
            tuples *= adom.size();
        total += adom.empty() ? 0 : tuples;
    }
    return total;
}

/// Subset-minimal sets of `universe` satisfying `holds`, checked against
/// every proper subset. |universe| must be small.
template <class T>
std::vector<std::vector<T>> brute_minimal(const std::vector<T>& universe,
                                          const std::function<bool(const std::vector<T>&)>& holds)
{
    const std::size_t n = universe.size();
    std::vector<char> sat(std::size_t{1} << n);
    auto members = [&](std::uint32_t mask) {
        std::vector<T> out;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1U)
                out.push_back(universe[i]);
        return out;
    };
    for (std::uint32_t m = 0; m < (1U << n); ++m)
        sat[m] = holds(members(m));
    std::vector<std::vector<T>> out;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        if (!sat[m])
            continue;
        bool minimal = true;
        for (std::uint32_t sub = (m - 1) & m; minimal; sub = (sub - 1) & m) {
            if (sub != m && sat[sub])
                minimal = false;
            if (sub == 0)
                break;
        }
        if (minimal)
            out.push_back(members(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Shapley value by enumerating orderings and evaluating the wealth
/// function directly on each prefix.
inline Rational naive_shapley(const Wealth& w, std::size_t target)
{
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::int64_t total = 0;
    std::int64_t count = 0;
    do {
        std::vector<std::size_t> prefix;
        for (auto p : order) {
            if (p == target)
                break;
            prefix.push_back(p);
        }
        const auto before = w.value(prefix);
        prefix.push_back(target);
        total += w.value(prefix) - before;
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return Rational(total, count);
}

inline std::vector<std::vector<SignedFact>> elements_of(const std::vector<SupportSet>& supports)
{
    std::vector<std::vector<SignedFact>> out;
    for (const auto& s : supports)
        out.push_back(s.elements);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Random instances: |db| <= 6, <= 2 disjuncts, <= 3 literals each, arity <= 2.

struct Instance {
    Database db;
    Query q;
};

class InstanceGenerator {
public:
    explicit InstanceGenerator(std::uint32_t seed) : rng_(seed) {}

    Instance next()
    {
        const bool wide = pick(5) < 2;
        const std::vector<std::string> consts = wide ? std::vector<std::string>{"a", "b", "c"}
                                                     : std::vector<std::string>{"a", "b"};
        while (true) {
            try {
                Query q = random_query(consts);
                Database db = random_db(consts);
                return {std::move(db), std::move(q)};
            } catch (const std::exception&) {
                // unsafe draw; try again
            }
        }
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

private:
    struct Rel {
        const char* name;
        std::size_t arity;
    };
    static constexpr Rel kRelations[] = {{"A", 1}, {"B", 1}, {"R", 2}};

    Term random_term(const std::vector<std::string>& vars, const std::vector<std::string>& consts)
    {
        if (pick(6) == 0)
            return Term::constant(consts[pick(consts.size())]);
        return Term::var(vars[pick(vars.size())]);
    }

    Literal random_atom(bool negated, const std::vector<std::string>& vars, const std::vector<std::string>& consts)
    {
        const auto& rel = kRelations[pick(3)];
        std::vector<Term> terms;
        for (std::size_t i = 0; i < rel.arity; ++i)
            terms.push_back(random_term(vars, consts));
        return negated ? Literal::negated(rel.name, terms) : Literal::positive(rel.name, terms);
    }

    ConjunctNeg random_conjunct(const std::vector<std::string>& consts)
    {
        const std::vector<std::string> pool{"x", "y", "z"};
        const std::size_t total = 1 + pick(3);
        const std::size_t positives = 1 + pick(total);
        std::vector<Literal> literals;
        for (std::size_t i = 0; i < positives; ++i)
            literals.push_back(random_atom(false, pool, consts));
        std::vector<std::string> bound;
        for (const auto& l : literals)
            for (const auto& v : l.variables())
                if (std::find(bound.begin(), bound.end(), v) == bound.end())
                    bound.push_back(v);
        std::sort(bound.begin(), bound.end());
        for (std::size_t i = positives; i < total; ++i) {
            if (!bound.empty() && pick(4) == 0) {
                literals.push_back(Literal::inequality(Term::var(bound[pick(bound.size())]),
                                                       random_term(bound, consts)));
            } else if (!bound.empty()) {
                literals.push_back(random_atom(true, bound, consts));
            } else {
                const auto& rel = kRelations[pick(2)];
                literals.push_back(Literal::negated(rel.name, {Term::constant(consts[pick(consts.size())])}));
            }
        }
        return ConjunctNeg(bound, literals);
    }

    Query random_query(const std::vector<std::string>& consts)
    {
        std::vector<ConjunctNeg> disjuncts;
        const std::size_t n = 1 + pick(2);
        for (std::size_t i = 0; i < n; ++i)
            disjuncts.push_back(random_conjunct(consts));
        return Query(std::move(disjuncts));
    }

    Database random_db(const std::vector<std::string>& consts)
    {
        std::vector<Fact> facts;
        const std::size_t n = pick(7);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& rel = kRelations[pick(3)];
            std::vector<Constant> tuple;
            for (std::size_t k = 0; k < rel.arity; ++k)
                tuple.push_back(Constant{consts[pick(consts.size())]});
            facts.emplace_back(RelationSymbol{rel.name, rel.arity}, std::move(tuple));
        }
        return Database::from_facts(std::move(facts));
    }

    std::mt19937 rng_;
};

} // namespace qexplain::testing
