#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace partitio {

using rational = boost::rational<std::int64_t>;

// Printed tables round in a stated direction in the last displayed digit.
enum class Rounding { nearest, up, down };

namespace detail {

inline std::int64_t pow10_i(int d) {
    std::int64_t p = 1;
    for (int i = 0; i < d; ++i) p *= 10;
    return p;
}

inline std::string place_point(std::int64_t scaled, int digits) {
    const bool negative = scaled < 0;
    std::string body = std::to_string(negative ? -scaled : scaled);
    if (digits > 0) {
        if (static_cast<int>(body.size()) <= digits) body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
    }
    return negative ? "-" + body : body;
}

}  // namespace detail

inline std::string fixed_digits(double x, int digits, Rounding mode) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    const long double scaled = static_cast<long double>(x) * detail::pow10_i(digits);
    long double r = 0;
    switch (mode) {
        case Rounding::up: r = std::ceil(scaled); break;
        case Rounding::down: r = std::floor(scaled); break;
        case Rounding::nearest: r = std::round(scaled); break;
    }
    return detail::place_point(static_cast<std::int64_t>(r), digits);
}

inline std::string fixed_digits(const rational& x, int digits, Rounding mode) {
    const __int128 num = static_cast<__int128>(x.numerator()) * detail::pow10_i(digits);
    const __int128 den = x.denominator();
    __int128 q = num / den, rem = num % den;
    if (rem != 0) {
        if (rem < 0) {
            q -= 1;
            rem += den;
        }
        if (mode == Rounding::up || (mode == Rounding::nearest && 2 * rem >= den)) q += 1;
    }
    return detail::place_point(static_cast<std::int64_t>(q), digits);
}

// Parses a plain decimal literal such as "0.1926" or "3.50" exactly.
inline rational parse_decimal(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty decimal literal");
    bool negative = false;
    if (s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    std::int64_t num = 0, den = 1;
    bool seen_point = false, seen_digit = false;
    for (char ch : s) {
        if (ch == '.' && !seen_point) {
            seen_point = true;
        } else if (ch >= '0' && ch <= '9') {
            num = num * 10 + (ch - '0');
            if (seen_point) den *= 10;
            seen_digit = true;
        } else {
            throw std::invalid_argument("bad decimal literal: " + std::string(s));
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + std::string(s));
    return rational(negative ? -num : num, den);
}

inline double to_double(const rational& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

}  // namespace partitio
