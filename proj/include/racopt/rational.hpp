// rational.hpp -- exact big-integer/big-rational arithmetic and number rendering

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace racopt {

/// Arbitrary-precision integer; all counts and sums in the library are exact.
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always canonical: lowest terms, positive
/// denominator, exact comparisons. No floating point enters any computation;
/// decimal strings are produced only at the presentation layer.
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for a non-negative integer exponent.
inline BigInt int_pow(BigInt base, std::uint64_t exp) {
    BigInt result = 1;
    while (exp > 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Renders "p/q" with the denominator always spelled out: "3/4", "1/1", "0/1".
inline std::string fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

// Compares |p/q| with 10^e (p, q > 0).
inline int compare_with_pow10(const BigInt& p, const BigInt& q, long e) {
    const BigInt lhs = e >= 0 ? p : p * int_pow(10, static_cast<std::uint64_t>(-e));
    const BigInt rhs = e >= 0 ? q * int_pow(10, static_cast<std::uint64_t>(e)) : q;
    return lhs.compare(rhs);
}

}  // namespace detail

/// Plain decimal rendering with `digits` significant digits, round-half-even
/// at the cut, trailing zeros trimmed down to one fractional digit:
/// 3/4 -> "0.75", 1/1 -> "1.0", 2/3 -> "0.666666666667" (12 digits).
/// The exact "p/q" form remains the authoritative representation.
inline std::string decimal_string(const Rational& value, unsigned digits = 12) {
    if (digits == 0) throw std::invalid_argument("decimal_string: digits must be >= 1");
    if (value == 0) return "0.0";

    const std::string sign = value < 0 ? "-" : "";
    const BigInt p = abs(numerator(value));
    const BigInt q = denominator(value);

    // Exponent e with 10^e <= |value| < 10^(e+1).
    long e = static_cast<long>(p.str().size()) - static_cast<long>(q.str().size());
    while (detail::compare_with_pow10(p, q, e) < 0) --e;
    while (detail::compare_with_pow10(p, q, e + 1) >= 0) ++e;

    // Scale into [10^(digits-1), 10^digits) and round half to even.
    const long k = static_cast<long>(digits) - 1 - e;
    const BigInt scaled_num = k >= 0 ? p * int_pow(10, static_cast<std::uint64_t>(k)) : p;
    const BigInt scaled_den = k >= 0 ? q : q * int_pow(10, static_cast<std::uint64_t>(-k));
    BigInt whole = scaled_num / scaled_den;
    const BigInt twice_rem = (scaled_num % scaled_den) * 2;
    const int half = twice_rem.compare(scaled_den);
    if (half > 0 || (half == 0 && (whole & 1) == 1)) ++whole;
    if (whole == int_pow(10, digits)) {
        whole = int_pow(10, digits - 1);
        ++e;
    }

    std::string s = whole.str();  // exactly `digits` characters
    std::string out;
    if (e >= 0) {
        const std::size_t int_len = static_cast<std::size_t>(e) + 1;
        if (int_len >= s.size()) {
            out = s + std::string(int_len - s.size(), '0') + ".0";
        } else {
            std::string frac = s.substr(int_len);
            while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
            if (frac == "0") frac.clear();
            out = s.substr(0, int_len) + "." + (frac.empty() ? "0" : frac);
        }
    } else {
        std::string frac = std::string(static_cast<std::size_t>(-e) - 1, '0') + s;
        while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
        out = "0." + frac;
    }
    return sign + out;
}

}  // namespace racopt
