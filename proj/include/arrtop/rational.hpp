#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "arrtop/errors.hpp"

namespace arrtop {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

inline std::string to_string(const Integer& value) { return value.str(); }

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& value)
{
    const Integer num = boost::multiprecision::numerator(value);
    const Integer den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

/// Parses "p", "-p", "p/q" or a plain decimal "1.25".
inline Rational parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view s) -> Integer {
        if (s.empty())
            throw SchemaError("empty integer in rational '" + std::string(text) + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size())
            throw SchemaError("malformed rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw SchemaError("malformed rational '" + std::string(text) + "'");
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_int(text.substr(0, slash));
        Integer den = parse_int(text.substr(slash + 1));
        if (den == 0)
            throw SchemaError("zero denominator in rational '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
        std::size_t decimals = text.size() - dot - 1;
        Integer num = parse_int(digits);
        Integer den = 1;
        for (std::size_t i = 0; i < decimals; ++i)
            den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_int(text));
}

inline Integer floor_of(const Rational& value)
{
    const Integer num = boost::multiprecision::numerator(value);
    const Integer den = boost::multiprecision::denominator(value);
    Integer q = num / den;
    if (num < 0 && q * den != num)
        q -= 1;
    return q;
}

inline Integer ceil_of(const Rational& value) { return -floor_of(-value); }

inline int sign_of(const Rational& value) { return value > 0 ? 1 : (value < 0 ? -1 : 0); }

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

/// Rank of a list of rational row vectors (Gaussian elimination).
inline std::size_t rank_of(std::vector<RationalVector> rows)
{
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0)
                continue;
            Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace arrtop
