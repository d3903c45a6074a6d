#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "startt/error.hpp"

namespace startt {

// Exact fraction in lowest terms, nonnegative. All heights, rotation numbers
// and Farey vertices live in [0, 1/2], so int64 is far more than enough.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) internal_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Rational mediant(const Rational& a, const Rational& b) {
    return Rational(a.num + b.num, a.den + b.den);
}

// Parses "m/n" (also bare integers as m/1).
Rational parse_rational(const std::string& text);

} // namespace startt
