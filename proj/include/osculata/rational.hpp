#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "osculata/error.hpp"

namespace osculata {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational; always normalized (positive denominator, lowest terms, 0 == 0/1).
using Rational = boost::multiprecision::cpp_rational;

using RatVector = std::vector<Rational>;

/// Canonical "num/den" rendering used by every serialized report.
inline std::string to_string(const Rational& q)
{
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

/// Short form for human-facing text: integers print without "/1".
inline std::string to_display(const Rational& q)
{
    if (boost::multiprecision::denominator(q) == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return to_string(q);
}

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

} // namespace detail

/// Accepts "n", "-n", "n/d" and "-n/d" with d > 0.
inline Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den =
        slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) {
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    BigInt d{std::string(den)};
    if (d == 0) {
        throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    BigInt n{std::string(num)};
    Rational q{n, d};
    return negative ? Rational{-q} : q;
}

/// Binomial coefficient C(n, k) as an exact integer; zero when k > n.
inline BigInt binomial(std::uint32_t n, std::uint32_t k)
{
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

inline BigInt factorial(std::uint32_t n)
{
    BigInt result = 1;
    for (std::uint32_t i = 2; i <= n; ++i) result *= i;
    return result;
}

} // namespace osculata
