#include <cctype>
#include <fstream>
#include <sstream>

#include "qexplain/error.hpp"
#include "qexplain/relational.hpp"

namespace qexplain {

namespace {

bool is_constant_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over one line of input; columns are 1-based in errors.
class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool done()
    {
        skip_space();
        return pos_ >= text_.size();
    }
    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::string name()
    {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            while (pos_ < text_.size() && is_constant_char(text_[pos_]))
                ++pos_;
        if (start == pos_)
            fail("expected a relation name");
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string constant()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_constant_char(text_[pos_]))
            ++pos_;
        if (start == pos_)
            fail("expected a constant");
        return std::string(text_.substr(start, pos_ - start));
    }
    std::size_t number()
    {
        auto digits = constant();
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail("expected an arity");
        return std::stoul(digits);
    }
    bool peek(char c)
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, pos_ + 1); }

    Fact fact()
    {
        std::string rel = name();
        expect('(');
        std::vector<Constant> tuple;
        do
            tuple.push_back(Constant{constant()});
        while (accept(','));
        expect(')');
        const std::size_t arity = tuple.size();
        return Fact(RelationSymbol{std::move(rel), arity}, std::move(tuple));
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

} // namespace

Database parse_database(std::string_view text)
{
    Schema declared;
    Schema observed;
    std::vector<Fact> facts;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        LineCursor cur(line, line_no);
        if (cur.accept('@')) {
            if (cur.name() != "relation")
                cur.fail("unknown directive");
            RelationSymbol rel;
            rel.name = cur.name();
            cur.expect('/');
            rel.arity = cur.number();
            if (rel.arity == 0)
                cur.fail("arity must be positive");
            try {
                declared.add(rel);
            } catch (const SemanticError& e) {
                throw SemanticError("line " + std::to_string(line_no) + ": " + e.what());
            }
            if (!cur.done())
                cur.fail("trailing input after @relation header");
            continue;
        }
        while (!cur.done()) {
            Fact f = cur.fact();
            cur.accept('.');
            auto declared_arity = declared.arity_of(f.relation.name);
            try {
                if (declared_arity && *declared_arity != f.relation.arity)
                    throw SemanticError("arity conflict for relation " + f.relation.name + ": declared " +
                                        std::to_string(*declared_arity) + ", used with " +
                                        std::to_string(f.relation.arity));
                observed.add(f.relation);
            } catch (const SemanticError& e) {
                throw SemanticError("line " + std::to_string(line_no) + ": " + e.what());
            }
            facts.push_back(std::move(f));
        }
        if (end == text.size())
            break;
    }
    for (const auto& rel : observed.relations())
        declared.add(rel);
    return Database(std::move(declared), std::move(facts));
}

Database load_database(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open facts file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_database(buffer.str());
}

Fact parse_fact(std::string_view text)
{
    LineCursor cur(text, 1);
    Fact f = cur.fact();
    if (!cur.done())
        cur.fail("trailing input after fact");
    return f;
}

SignedFact parse_signed_fact(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    Sign sign = Sign::positive;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '+' ? Sign::positive : Sign::negative;
        ++i;
    }
    return {sign, parse_fact(text.substr(i))};
}

} // namespace qexplain
