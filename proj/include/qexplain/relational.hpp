#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qexplain {

class Query;

struct RelationSymbol {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const RelationSymbol&) const = default;
    std::string str() const { return name + "/" + std::to_string(arity); }
};

/// Finite set of relation symbols keyed by name.
class Schema {
public:
    Schema() = default;

    /// Adds a relation; re-adding with the same arity is a no-op, a different
    /// arity throws SemanticError.
    void add(const RelationSymbol& relation);
    std::optional<std::size_t> arity_of(std::string_view name) const;
    bool contains(const RelationSymbol& relation) const;
    std::vector<RelationSymbol> relations() const;
    std::size_t size() const { return arities_.size(); }
    bool empty() const { return arities_.empty(); }

    bool operator==(const Schema&) const = default;

private:
    std::map<std::string, std::size_t, std::less<>> arities_;
};

struct Constant {
    std::string symbol;

    auto operator<=>(const Constant&) const = default;
};

/// A ground atom. Ordered by relation name, then tuple.
struct Fact {
    RelationSymbol relation;
    std::vector<Constant> tuple;

    Fact() = default;
    Fact(RelationSymbol relation, std::vector<Constant> tuple);
    /// Convenience: Fact("R", {"a", "b"}).
    Fact(std::string relation, std::initializer_list<std::string_view> constants);

    auto operator<=>(const Fact&) const = default;
    std::string str() const;
};

enum class Sign { positive, negative };

struct SignedFact {
    Sign sign = Sign::positive;
    Fact fact;

    static SignedFact plus(Fact f) { return {Sign::positive, std::move(f)}; }
    static SignedFact minus(Fact f) { return {Sign::negative, std::move(f)}; }

    /// Ordered by fact first so that both signings of a tuple sit together.
    std::strong_ordering operator<=>(const SignedFact& other) const;
    bool operator==(const SignedFact&) const = default;
    std::string str() const;
};

/// Immutable finite set of facts over a schema, stored in canonical order.
class Database {
public:
    Database() = default;
    /// Every fact's relation must be in the schema; duplicates are dropped.
    Database(Schema schema, std::vector<Fact> facts);
    /// Schema inferred from the facts.
    static Database from_facts(std::vector<Fact> facts);

    const Schema& schema() const noexcept { return schema_; }
    const std::vector<Fact>& facts() const noexcept { return facts_; }
    std::size_t size() const noexcept { return facts_.size(); }
    bool empty() const noexcept { return facts_.empty(); }
    bool contains(const Fact& fact) const;
    /// Position of the fact in canonical order.
    std::optional<std::size_t> index_of(const Fact& fact) const;

    /// Same schema, facts restricted to the given subset (must be facts of this db).
    Database with_facts(std::vector<Fact> facts) const;

    bool operator==(const Database&) const = default;

private:
    Schema schema_;
    std::vector<Fact> facts_;
};

std::set<Constant> active_domain(const Database& db);

inline constexpr std::size_t kDefaultSignedCap = 1'000'000;

/// The completion of a database with negative facts over its active domain.
struct SignedDatabase {
    Database base;
    std::vector<SignedFact> signed_facts; // canonical order
    std::optional<std::set<std::string>> restricted_to;

    bool contains(const SignedFact& sf) const;
    std::vector<SignedFact> positives() const;
    std::vector<SignedFact> negatives() const;
    std::size_t size() const noexcept { return signed_facts.size(); }
};

SignedDatabase signed_database(const Database& db, std::size_t cap = kDefaultSignedCap);

/// Negative facts only over the relations negated in q. Relations of q that
/// are missing from the schema are added with an empty extension.
SignedDatabase signed_database_restricted(const Database& db, const Query& q,
                                          std::size_t cap = kDefaultSignedCap);

/// The database with the relations of q added to its schema (empty
/// extension when absent). Throws SemanticError on an arity mismatch.
Database extend_schema(const Database& db, const Query& q);

/// Is the signed fact an element of the full completion of db?
bool in_signed_database(const SignedFact& sf, const Database& db);

/// Signed facts are evaluated as plain facts over relations named "+R" and "-R".
Fact encode_signed(const SignedFact& sf);
SignedFact decode_signed(const Fact& encoded);

// Facts file format: one `Rel(c1,...,cn)` per entry, `#` comments, optional
// `@relation Rel/n` headers declaring relations ahead of (or without) facts.
Database parse_database(std::string_view text);
Database load_database(const std::filesystem::path& path);

Fact parse_fact(std::string_view text);
/// Accepts "+R(..)", "-R(..)" or a bare "R(..)" (read as positive).
SignedFact parse_signed_fact(std::string_view text);

} // namespace qexplain
