#include "qexplain/error.hpp"

namespace qexplain {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column)
{
    if (line == 0)
        return message;
    std::string out = "line " + std::to_string(line);
    if (column != 0)
        out += ", column " + std::to_string(column);
    return out + ": " + message;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(located(message, line, column)), line_(line), column_(column)
{
}

CapExceeded::CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
    : std::runtime_error(what + " requires " + std::to_string(requested) + " but the cap is " +
                         std::to_string(cap)),
      requested_(requested), cap_(cap)
{
}

} // namespace qexplain
