#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qexplain {

/// Malformed input text (facts file, query, fact literal). Carries a
/// 1-based line and column when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a semantic rule: unsafe variables,
/// arity conflicts, facts outside the database, unsupported combinations.
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size cap would be exceeded by an exact computation.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::size_t requested, std::size_t cap);

    std::size_t requested() const noexcept { return requested_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t requested_;
    std::size_t cap_;
};

} // namespace qexplain
