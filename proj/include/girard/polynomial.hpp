#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "girard/scalar.hpp"

namespace girard {

/// Dense univariate polynomial, coefficients indexed low-to-high:
/// coeffs[i] multiplies X^i. The coefficient list is never empty.
template <Scalar S>
struct Polynomial {
    std::vector<S> coeffs{S{}};

    Polynomial() = default;
    explicit Polynomial(std::vector<S> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.push_back(S{});
    }

    static Polynomial constant(const S& c) { return Polynomial(std::vector<S>{c}); }

    std::size_t degree() const { return coeffs.size() - 1; }

    S coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : S{}; }

    /// Horner evaluation.
    S evaluate(const S& x) const {
        S acc = coeffs.back();
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
            acc = acc * x + coeffs[i];
        }
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs.size() == 1) return Polynomial();
        std::vector<S> d(coeffs.size() - 1);
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            d[i - 1] = coeffs[i] * scalar_traits<S>::from_int(static_cast<long long>(i));
        }
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<S> out(std::max(a.coeffs.size(), b.coeffs.size()), S{});
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(out));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<S> out(std::max(a.coeffs.size(), b.coeffs.size()), S{});
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<S> out(a.coeffs.size() + b.coeffs.size() - 1, S{});
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
                out[i + j] += a.coeffs[i] * b.coeffs[j];
            }
        }
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Polynomial& a, const S& c) {
        std::vector<S> out = a.coeffs;
        for (S& v : out) v *= c;
        return Polynomial(std::move(out));
    }

    bool operator==(const Polynomial&) const = default;
};

}  // namespace girard
