#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace girard {

using BigInt = boost::multiprecision::cpp_int;

/// Exact scalar: arbitrary-precision rational, kept canonical by the backend
/// (denominator > 0, gcd(|num|, den) = 1).
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "num/den" form, e.g. "-3/7", "5/1".
inline std::string to_ratio_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace detail {

inline bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace detail

/// Parses "num/den" or a bare integer "num".
/// Throws std::invalid_argument on malformed text or a zero denominator.
inline Rational parse_ratio_string(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!detail::is_integer_token(text)) {
            throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
        }
        return Rational(BigInt(std::string(text)));
    }
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    if (!detail::is_integer_token(num) || !detail::is_integer_token(den)) {
        throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
    }
    BigInt d{std::string(den)};
    if (d == 0) {
        throw std::invalid_argument("zero denominator in rational: \"" + std::string(text) + "\"");
    }
    return Rational(BigInt(std::string(num)), d);
}

}  // namespace girard
