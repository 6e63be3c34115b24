#include "qexplain/rational.hpp"

#include <stdexcept>

#include "qexplain/error.hpp"

namespace qexplain {

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
{
    if (denominator == 0)
        throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(const std::string& text)
{
    mpq_class v;
    if (text.empty() || v.set_str(text, 10) != 0)
        throw ParseError("not a rational number: '" + text + "'");
    if (v.get_den() == 0)
        throw ParseError("rational with zero denominator: '" + text + "'");
    return Rational(std::move(v));
}

std::string Rational::numerator() const { return value_.get_num().get_str(); }
std::string Rational::denominator() const { return value_.get_den().get_str(); }
bool Rational::is_integer() const { return value_.get_den() == 1; }
int Rational::sign() const { return sgn(value_); }

std::string Rational::str() const
{
    if (is_integer())
        return numerator();
    return numerator() + "/" + denominator();
}

Rational& Rational::operator+=(const Rational& other)
{
    value_ += other.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other)
{
    value_ -= other.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& other)
{
    value_ *= other.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& other)
{
    if (other.value_ == 0)
        throw std::domain_error("rational division by zero");
    value_ /= other.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

} // namespace qexplain
