#pragma once

#include <cmath>
#include <complex>

#include "girard/rational.hpp"

namespace girard {

/// Traits for the scalar kinds the algebra is generic over: exact rationals,
/// 64-bit floats, and complex 64-bit floats. `magnitude_type` is the type of
/// absolute values (rationals stay rational, complex collapses to double).
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    using magnitude_type = Rational;
    static Rational from_int(long long v) { return Rational(v); }
    static bool finite(const Rational&) { return true; }
    static Rational magnitude(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    using magnitude_type = double;
    static double from_int(long long v) { return static_cast<double>(v); }
    static bool finite(double v) { return std::isfinite(v); }
    static double magnitude(double v) { return std::abs(v); }
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool is_exact = false;
    using magnitude_type = double;
    static std::complex<double> from_int(long long v) {
        return std::complex<double>(static_cast<double>(v), 0.0);
    }
    static bool finite(const std::complex<double>& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
    static double magnitude(const std::complex<double>& v) { return std::abs(v); }
};

template <typename S>
concept Scalar = requires { scalar_traits<S>::is_exact; };

}  // namespace girard
