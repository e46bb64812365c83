#pragma once

/// Exact integer and rational types shared by every module, plus the
/// canonical text form used in reports ("25/2", "300", "-7").

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace g2fib {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    return Rational(num, den);
}

inline bool is_integral(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

/// Integer-valued rationals print without a denominator.
inline std::string to_fraction_string(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Inverse of to_fraction_string. Accepts "p" or "p/q" with q > 0.
inline Rational parse_fraction(std::string_view text) {
    auto parse_int = [](std::string_view s) -> Integer {
        if (s.empty()) throw std::invalid_argument("empty integer");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("bad integer");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer");
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const Integer den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("non-positive denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace g2fib
