#include <algorithm>
#include <cctype>

#include "qexplain/error.hpp"
#include "qexplain/query.hpp"

namespace qexplain {

std::string Term::str() const { return is_variable() ? symbol : "\"" + symbol + "\""; }

Literal Literal::positive(std::string relation, std::vector<Term> terms)
{
    const auto arity = terms.size();
    return {Kind::positive_atom, RelationSymbol{std::move(relation), arity}, std::move(terms)};
}

Literal Literal::negated(std::string relation, std::vector<Term> terms)
{
    const auto arity = terms.size();
    return {Kind::negated_atom, RelationSymbol{std::move(relation), arity}, std::move(terms)};
}

Literal Literal::inequality(Term lhs, Term rhs) { return {Kind::inequality, std::nullopt, {std::move(lhs), std::move(rhs)}}; }

std::set<std::string> Literal::variables() const
{
    std::set<std::string> out;
    for (const auto& t : terms)
        if (t.is_variable())
            out.insert(t.symbol);
    return out;
}

std::string Literal::str() const
{
    if (kind == Kind::inequality)
        return terms[0].str() + " != " + terms[1].str();
    std::string out = kind == Kind::negated_atom ? "!" : "";
    out += relation->name + "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i)
            out += ",";
        out += terms[i].str();
    }
    return out + ")";
}

ConjunctNeg::ConjunctNeg(std::vector<std::string> variables, std::vector<Literal> literals)
    : variables_(std::move(variables)), literals_(std::move(literals))
{
    if (literals_.empty())
        throw SemanticError("a conjunct needs at least one literal");

    std::set<std::string> declared(variables_.begin(), variables_.end());
    if (declared.size() != variables_.size())
        throw SemanticError("variable declared twice in 'exists " + str() + "'");

    std::set<std::string> guarded;
    bool has_positive = false;
    for (const auto& lit : literals_) {
        if (lit.kind == Literal::Kind::inequality) {
            if (lit.relation || lit.terms.size() != 2)
                throw SemanticError("inequality must have exactly two terms");
        } else {
            if (!lit.relation || lit.relation->arity != lit.terms.size() || lit.terms.empty())
                throw SemanticError("atom " + lit.str() + " does not match its relation arity");
        }
        for (const auto& v : lit.variables())
            if (!declared.contains(v))
                throw SemanticError("variable " + v + " in " + lit.str() + " is not declared by 'exists'");
        if (lit.kind == Literal::Kind::positive_atom) {
            has_positive = true;
            auto vars = lit.variables();
            guarded.insert(vars.begin(), vars.end());
        }
    }
    if (!has_positive)
        throw SemanticError("unsafe conjunct: no positive atom in " + str());
    for (const auto& lit : literals_)
        for (const auto& v : lit.variables())
            if (!guarded.contains(v))
                throw SemanticError("unsafe variable " + v + " in " + lit.str() +
                                    ": it does not occur in any positive atom");
    for (const auto& v : variables_)
        if (!guarded.contains(v))
            throw SemanticError("unsafe variable " + v + ": it does not occur in any positive atom");
}

namespace {

std::vector<Literal> of_kind(const std::vector<Literal>& literals, Literal::Kind kind)
{
    std::vector<Literal> out;
    std::copy_if(literals.begin(), literals.end(), std::back_inserter(out),
                 [kind](const Literal& l) { return l.kind == kind; });
    return out;
}

} // namespace

std::vector<Literal> ConjunctNeg::positive_atoms() const { return of_kind(literals_, Literal::Kind::positive_atom); }
std::vector<Literal> ConjunctNeg::negated_atoms() const { return of_kind(literals_, Literal::Kind::negated_atom); }
std::vector<Literal> ConjunctNeg::inequalities() const { return of_kind(literals_, Literal::Kind::inequality); }

std::size_t ConjunctNeg::atom_count() const
{
    return std::count_if(literals_.begin(), literals_.end(), [](const Literal& l) { return l.is_atom(); });
}

std::string ConjunctNeg::str() const
{
    std::string out = "exists ";
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (i)
            out += ",";
        out += variables_[i];
    }
    out += ". ";
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (i)
            out += ", ";
        out += literals_[i].str();
    }
    return out;
}

Query::Query(std::vector<ConjunctNeg> disjuncts) : disjuncts_(std::move(disjuncts))
{
    if (disjuncts_.empty())
        throw SemanticError("a query needs at least one disjunct");
    Schema schema;
    for (const auto& d : disjuncts_)
        for (const auto& lit : d.literals())
            if (lit.relation)
                schema.add(*lit.relation);
}

std::size_t Query::max_atom_count() const
{
    std::size_t n = 0;
    for (const auto& d : disjuncts_)
        n = std::max(n, d.atom_count());
    return n;
}

std::size_t Query::max_positive_atom_count() const
{
    std::size_t n = 0;
    for (const auto& d : disjuncts_)
        n = std::max(n, d.positive_atoms().size());
    return n;
}

bool Query::has_negation() const
{
    return std::any_of(disjuncts_.begin(), disjuncts_.end(), [](const ConjunctNeg& d) {
        return !d.negated_atoms().empty();
    });
}

std::string Query::str() const
{
    std::string out;
    for (std::size_t i = 0; i < disjuncts_.size(); ++i) {
        if (i)
            out += " | ";
        out += disjuncts_[i].str();
    }
    return out;
}

std::set<RelationSymbol> query_relations(const Query& q)
{
    std::set<RelationSymbol> out;
    for (const auto& d : q.disjuncts())
        for (const auto& lit : d.literals())
            if (lit.relation)
                out.insert(*lit.relation);
    return out;
}

Query sign_transform(const Query& q)
{
    std::vector<ConjunctNeg> disjuncts;
    for (const auto& d : q.disjuncts()) {
        std::vector<Literal> literals;
        for (auto lit : d.literals()) {
            if (lit.is_atom()) {
                lit.relation->name.insert(lit.relation->name.begin(),
                                          lit.kind == Literal::Kind::negated_atom ? '-' : '+');
                lit.kind = Literal::Kind::positive_atom;
            }
            literals.push_back(std::move(lit));
        }
        disjuncts.emplace_back(d.variables(), std::move(literals));
    }
    return Query(std::move(disjuncts));
}

bool is_signed_query(const Query& q)
{
    for (const auto& d : q.disjuncts())
        for (const auto& lit : d.literals()) {
            if (lit.kind == Literal::Kind::negated_atom)
                return false;
            if (lit.relation && lit.relation->name.front() != '+' && lit.relation->name.front() != '-')
                return false;
        }
    return true;
}

std::set<RelationSymbol> neg_rels(const Query& q)
{
    std::set<RelationSymbol> out;
    for (const auto& d : q.disjuncts())
        for (const auto& lit : d.literals())
            if (lit.kind == Literal::Kind::negated_atom)
                out.insert(*lit.relation);
    return out;
}

std::size_t negative_arity(const Query& q)
{
    std::size_t n = 0;
    for (const auto& rel : neg_rels(q))
        n = std::max(n, rel.arity);
    return n;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { ident, string, lparen, rparen, comma, dot, bar, bang, neq, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        const std::size_t l = line;
        const std::size_t k = col;
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::ident, std::string(text.substr(i, j - i)), l, k});
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            if (j >= text.size() || text[j] != '"')
                throw ParseError("unterminated or invalid constant", l, k);
            if (j == i + 1)
                throw ParseError("empty constant", l, k);
            out.push_back({Tok::string, std::string(text.substr(i + 1, j - i - 1)), l, k});
            advance(j + 1 - i);
            continue;
        }
        if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({Tok::neq, "!=", l, k});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case ',': kind = Tok::comma; break;
        case '.': kind = Tok::dot; break;
        case '|': kind = Tok::bar; break;
        case '!': kind = Tok::bang; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", l, k);
        }
        out.push_back({kind, std::string(1, c), l, k});
        advance(1);
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

bool is_var_name(const std::string& s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }
bool is_rel_name(const std::string& s) { return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0])); }

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Query query()
    {
        std::vector<ConjunctNeg> disjuncts;
        disjuncts.push_back(disjunct());
        while (accept(Tok::bar))
            disjuncts.push_back(disjunct());
        if (peek().kind != Tok::end)
            fail("expected '|' or end of query");
        return Query(std::move(disjuncts));
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool accept(Tok kind)
    {
        if (peek().kind != kind)
            return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok kind, const char* what)
    {
        if (peek().kind != kind)
            fail(std::string("expected ") + what);
        return toks_[pos_++];
    }
    [[noreturn]] void fail(const std::string& message) const
    {
        const auto& t = peek();
        throw ParseError(message + (t.kind == Tok::end ? " at end of input" : " near '" + t.text + "'"), t.line,
                         t.column);
    }

    ConjunctNeg disjunct()
    {
        const auto& kw = expect(Tok::ident, "'exists'");
        if (kw.text != "exists") {
            --pos_;
            fail("expected 'exists'");
        }
        std::vector<std::string> vars;
        if (peek().kind != Tok::dot) {
            do {
                const auto& v = expect(Tok::ident, "a variable");
                if (!is_var_name(v.text)) {
                    --pos_;
                    fail("variables must start with a lowercase letter");
                }
                vars.push_back(v.text);
            } while (accept(Tok::comma));
        }
        expect(Tok::dot, "'.' after the variable list");
        std::vector<Literal> literals;
        literals.push_back(literal());
        while (accept(Tok::comma))
            literals.push_back(literal());
        return ConjunctNeg(std::move(vars), std::move(literals));
    }

    Literal literal()
    {
        if (accept(Tok::bang)) {
            auto [name, terms] = atom();
            return Literal::negated(std::move(name), std::move(terms));
        }
        if (peek().kind == Tok::ident && peek(1).kind == Tok::lparen) {
            auto [name, terms] = atom();
            return Literal::positive(std::move(name), std::move(terms));
        }
        Term lhs = term();
        expect(Tok::neq, "'!=' or an atom");
        Term rhs = term();
        return Literal::inequality(std::move(lhs), std::move(rhs));
    }

    std::pair<std::string, std::vector<Term>> atom()
    {
        const auto& name = expect(Tok::ident, "a relation name");
        if (!is_rel_name(name.text)) {
            --pos_;
            fail("relation names must start with a letter");
        }
        expect(Tok::lparen, "'('");
        std::vector<Term> terms;
        terms.push_back(term());
        while (accept(Tok::comma))
            terms.push_back(term());
        expect(Tok::rparen, "')'");
        return {name.text, std::move(terms)};
    }

    Term term()
    {
        if (peek().kind == Tok::string)
            return Term::constant(toks_[pos_++].text);
        const auto& t = expect(Tok::ident, "a term");
        if (!is_var_name(t.text)) {
            --pos_;
            fail("expected a variable (lowercase) or a quoted constant");
        }
        return Term::var(t.text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Query parse_query(std::string_view text) { return Parser(tokenize(text)).query(); }

} // namespace qexplain
