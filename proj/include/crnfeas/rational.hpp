#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "crnfeas/errors.hpp"

namespace crnfeas {

/// Exact rational scalar used throughout the combinatorial pipeline.
/// Arbitrary-precision, always kept in canonical reduced form by the backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

using RatVector = std::vector<Rational>;

inline int sign(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

/// Renders q as "p" or "p/q"; lossless and reparseable by parse_rational.
inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/" + denominator(q).str();
    }
    return s;
}

/// Parses "p", "p/q" or a decimal string ("0.5", "-1.25") into an exact
/// rational. Decimals are converted exactly, never through floating point.
/// Returns false on malformed input.
inline bool try_parse_rational(const std::string& text, Rational& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = (text[pos] == '-');
        ++pos;
    }
    if (pos >= text.size()) return false;

    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

    Integer int_part = 0;
    std::size_t digits = 0;
    while (pos < text.size() && is_digit(text[pos])) {
        int_part = int_part * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
    }

    if (pos < text.size() && text[pos] == '/') {
        if (digits == 0) return false;
        ++pos;
        Integer den = 0;
        std::size_t den_digits = 0;
        while (pos < text.size() && is_digit(text[pos])) {
            den = den * 10 + (text[pos] - '0');
            ++pos;
            ++den_digits;
        }
        if (den_digits == 0 || pos != text.size() || den == 0) return false;
        out = Rational(int_part, den);
    } else if (pos < text.size() && text[pos] == '.') {
        ++pos;
        Integer frac = 0;
        Integer scale = 1;
        std::size_t frac_digits = 0;
        while (pos < text.size() && is_digit(text[pos])) {
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            ++pos;
            ++frac_digits;
        }
        if ((digits == 0 && frac_digits == 0) || pos != text.size()) return false;
        out = Rational(int_part * scale + frac, scale);
    } else {
        if (digits == 0 || pos != text.size()) return false;
        out = Rational(int_part);
    }

    if (negative) out = -out;
    return true;
}

inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (!try_parse_rational(text, q)) {
        throw Error("malformed rational literal: '" + text + "'");
    }
    return q;
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace crnfeas
