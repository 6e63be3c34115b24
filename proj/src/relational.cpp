#include "qexplain/relational.hpp"

#include <algorithm>
#include <limits>

#include "qexplain/error.hpp"
#include "qexplain/query.hpp"

namespace qexplain {

void Schema::add(const RelationSymbol& relation)
{
    if (relation.arity == 0)
        throw SemanticError("relation " + relation.name + " must have positive arity");
    auto [it, inserted] = arities_.emplace(relation.name, relation.arity);
    if (!inserted && it->second != relation.arity)
        throw SemanticError("arity conflict for relation " + relation.name + ": " +
                            std::to_string(it->second) + " vs " + std::to_string(relation.arity));
}

std::optional<std::size_t> Schema::arity_of(std::string_view name) const
{
    auto it = arities_.find(name);
    if (it == arities_.end())
        return std::nullopt;
    return it->second;
}

bool Schema::contains(const RelationSymbol& relation) const
{
    auto arity = arity_of(relation.name);
    return arity && *arity == relation.arity;
}

std::vector<RelationSymbol> Schema::relations() const
{
    std::vector<RelationSymbol> out;
    out.reserve(arities_.size());
    for (const auto& [name, arity] : arities_)
        out.push_back({name, arity});
    return out;
}

Fact::Fact(RelationSymbol relation_, std::vector<Constant> tuple_)
    : relation(std::move(relation_)), tuple(std::move(tuple_))
{
    if (tuple.size() != relation.arity)
        throw SemanticError("fact over " + relation.str() + " has " + std::to_string(tuple.size()) +
                            " arguments");
}

Fact::Fact(std::string relation_, std::initializer_list<std::string_view> constants)
{
    relation = {std::move(relation_), constants.size()};
    for (auto c : constants)
        tuple.push_back(Constant{std::string(c)});
}

std::string Fact::str() const
{
    std::string out = relation.name + "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i)
            out += ",";
        out += tuple[i].symbol;
    }
    return out + ")";
}

std::strong_ordering SignedFact::operator<=>(const SignedFact& other) const
{
    if (auto c = fact <=> other.fact; c != 0)
        return c;
    return static_cast<int>(sign) <=> static_cast<int>(other.sign);
}

std::string SignedFact::str() const { return (sign == Sign::positive ? "+" : "-") + fact.str(); }

Database::Database(Schema schema, std::vector<Fact> facts) : schema_(std::move(schema)), facts_(std::move(facts))
{
    for (const auto& f : facts_)
        if (!schema_.contains(f.relation))
            throw SemanticError("fact " + f.str() + " uses relation " + f.relation.str() +
                                " which is not in the schema");
    std::sort(facts_.begin(), facts_.end());
    facts_.erase(std::unique(facts_.begin(), facts_.end()), facts_.end());
}

Database Database::from_facts(std::vector<Fact> facts)
{
    Schema schema;
    for (const auto& f : facts)
        schema.add(f.relation);
    return Database(std::move(schema), std::move(facts));
}

bool Database::contains(const Fact& fact) const
{
    return std::binary_search(facts_.begin(), facts_.end(), fact);
}

std::optional<std::size_t> Database::index_of(const Fact& fact) const
{
    auto it = std::lower_bound(facts_.begin(), facts_.end(), fact);
    if (it == facts_.end() || *it != fact)
        return std::nullopt;
    return static_cast<std::size_t>(it - facts_.begin());
}

Database Database::with_facts(std::vector<Fact> facts) const
{
    for (const auto& f : facts)
        if (!contains(f))
            throw SemanticError("fact " + f.str() + " is not in the database");
    return Database(schema_, std::move(facts));
}

std::set<Constant> active_domain(const Database& db)
{
    std::set<Constant> out;
    for (const auto& f : db.facts())
        out.insert(f.tuple.begin(), f.tuple.end());
    return out;
}

bool SignedDatabase::contains(const SignedFact& sf) const
{
    return std::binary_search(signed_facts.begin(), signed_facts.end(), sf);
}

std::vector<SignedFact> SignedDatabase::positives() const
{
    std::vector<SignedFact> out;
    std::copy_if(signed_facts.begin(), signed_facts.end(), std::back_inserter(out),
                 [](const SignedFact& sf) { return sf.sign == Sign::positive; });
    return out;
}

std::vector<SignedFact> SignedDatabase::negatives() const
{
    std::vector<SignedFact> out;
    std::copy_if(signed_facts.begin(), signed_facts.end(), std::back_inserter(out),
                 [](const SignedFact& sf) { return sf.sign == Sign::negative; });
    return out;
}

namespace {

std::size_t saturating_power(std::size_t base, std::size_t exponent)
{
    std::size_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base)
            return std::numeric_limits<std::size_t>::max();
        out *= base;
    }
    return out;
}

std::size_t saturating_add(std::size_t a, std::size_t b)
{
    return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

// Appends the completion of one relation over the domain: + for present
// tuples, - for absent ones, in lexicographic tuple order.
void complete_relation(const Database& db, const RelationSymbol& rel, const std::vector<Constant>& domain,
                       bool with_negatives, std::vector<SignedFact>& out)
{
    if (domain.empty())
        return;
    std::vector<std::size_t> odometer(rel.arity, 0);
    while (true) {
        Fact f;
        f.relation = rel;
        f.tuple.reserve(rel.arity);
        for (auto i : odometer)
            f.tuple.push_back(domain[i]);
        if (db.contains(f))
            out.push_back(SignedFact::plus(std::move(f)));
        else if (with_negatives)
            out.push_back(SignedFact::minus(std::move(f)));

        std::size_t pos = rel.arity;
        while (pos > 0 && ++odometer[pos - 1] == domain.size())
            odometer[--pos] = 0;
        if (pos == 0)
            break;
    }
}

SignedDatabase build_signed(const Database& base, const Schema& schema,
                            const std::optional<std::set<std::string>>& negated, std::size_t cap)
{
    const auto adom = active_domain(base);
    const std::vector<Constant> domain(adom.begin(), adom.end());

    std::size_t total = base.size();
    for (const auto& rel : schema.relations()) {
        if (negated && !negated->contains(rel.name))
            continue;
        std::size_t present = std::count_if(base.facts().begin(), base.facts().end(),
                                            [&](const Fact& f) { return f.relation == rel; });
        total = saturating_add(total, saturating_power(domain.size(), rel.arity) - present);
    }
    if (total > cap)
        throw CapExceeded("signed database", total, cap);

    SignedDatabase out{base, {}, negated};
    out.signed_facts.reserve(total);
    for (const auto& rel : schema.relations()) {
        const bool with_negatives = !negated || negated->contains(rel.name);
        complete_relation(base, rel, domain, with_negatives, out.signed_facts);
    }
    std::sort(out.signed_facts.begin(), out.signed_facts.end());
    return out;
}

} // namespace

SignedDatabase signed_database(const Database& db, std::size_t cap)
{
    return build_signed(db, db.schema(), std::nullopt, cap);
}

Database extend_schema(const Database& db, const Query& q)
{
    Schema schema = db.schema();
    for (const auto& rel : query_relations(q)) {
        auto arity = schema.arity_of(rel.name);
        if (arity && *arity != rel.arity)
            throw SemanticError("query uses " + rel.str() + " but the database declares " + rel.name + "/" +
                                std::to_string(*arity));
        schema.add(rel);
    }
    return Database(std::move(schema), db.facts());
}

SignedDatabase signed_database_restricted(const Database& db, const Query& q, std::size_t cap)
{
    std::set<std::string> negated;
    for (const auto& rel : neg_rels(q))
        negated.insert(rel.name);
    Database base = extend_schema(db, q);
    return build_signed(base, base.schema(), negated, cap);
}

bool in_signed_database(const SignedFact& sf, const Database& db)
{
    if (!db.schema().contains(sf.fact.relation))
        return false;
    if (sf.sign == Sign::positive)
        return db.contains(sf.fact);
    if (db.contains(sf.fact))
        return false;
    const auto adom = active_domain(db);
    return std::all_of(sf.fact.tuple.begin(), sf.fact.tuple.end(), [&](const Constant& c) { return adom.contains(c); });
}

Fact encode_signed(const SignedFact& sf)
{
    Fact out = sf.fact;
    out.relation.name.insert(out.relation.name.begin(), sf.sign == Sign::positive ? '+' : '-');
    return out;
}

SignedFact decode_signed(const Fact& encoded)
{
    const auto& name = encoded.relation.name;
    if (name.size() < 2 || (name[0] != '+' && name[0] != '-'))
        throw SemanticError("fact " + encoded.str() + " is not over a signed relation");
    Fact plain = encoded;
    plain.relation.name.erase(0, 1);
    return {name[0] == '+' ? Sign::positive : Sign::negative, std::move(plain)};
}

} // namespace qexplain
