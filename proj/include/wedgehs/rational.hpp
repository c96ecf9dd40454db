#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "wedgehs/errors.hpp"

namespace wedgehs {

/// Arbitrary-precision integer. Series coefficients grow exponentially with
/// the truncation order, so fixed-width types are not an option here.
using Integer = boost::multiprecision::cpp_int;

/// Exact rational number over Integer.
///
/// Canonical form invariants: denominator > 0, gcd(|num|, den) == 1, and
/// zero is always 0/1. Every constructor and operator re-establishes them.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}

    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0)
            throw division_by_zero("rational with zero denominator");
        normalize();
    }

    const Integer& numerator() const { return num_; }
    const Integer& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational inverse() const {
        if (num_ == 0)
            throw division_by_zero("inverse of zero");
        return Rational(den_, num_);
    }

    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw division_by_zero();
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Renders "p/q", or just "p" when q == 1.
    std::string str() const {
        if (den_ == 1)
            return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "p" or "p/q" with optional leading sign on either part.
    static Rational from_string(std::string_view s);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Integer g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_;
    Integer den_;
};

namespace detail {

inline Integer parse_integer(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw parse_error("invalid rational literal '" + std::string(whole) + "'");
    for (char c : s)
        if (c < '0' || c > '9')
            throw parse_error("invalid rational literal '" + std::string(whole) + "'");
    Integer v{std::string(s)};
    return neg ? Integer(-v) : v;
}

} // namespace detail

inline Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(s, s));
    Integer num = detail::parse_integer(s.substr(0, slash), s);
    Integer den = detail::parse_integer(s.substr(slash + 1), s);
    if (den == 0)
        throw parse_error("zero denominator in rational literal '" + std::string(s) + "'");
    return Rational(std::move(num), std::move(den));
}

/// n! as an exact integer.
inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i)
        r *= i;
    return r;
}

} // namespace wedgehs
