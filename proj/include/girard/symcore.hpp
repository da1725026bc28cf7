#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "girard/rational.hpp"
#include "girard/scalar.hpp"

namespace girard::symcore {

/// Power sums: values[j-1] holds p_j = sum_i x_i^j, j = 1..K.
template <Scalar S>
struct PowerSums {
    std::vector<S> values;
};

/// Elementary symmetric polynomials: values[k-1] holds sigma_k, k = 1..K.
/// `var_count` is the number of underlying variables when known; entries with
/// k > var_count are exactly zero.
template <Scalar S>
struct ElemSyms {
    std::vector<S> values;
    std::optional<std::size_t> var_count;
};

namespace detail {

template <Scalar S>
void require_finite(const std::vector<S>& v, const char* what) {
    if constexpr (!scalar_traits<S>::is_exact) {
        for (const S& e : v) {
            if (!scalar_traits<S>::finite(e)) {
                throw std::invalid_argument(std::string("non-finite ") + what);
            }
        }
    }
}

}  // namespace detail

/// p_j = sum_i x_i^j for j = 1..count, powers built by iterated
/// multiplication per element.
template <Scalar S>
PowerSums<S> evaluate_power_sums(const std::vector<S>& x, std::size_t count) {
    if (count < 1) throw std::invalid_argument("power sum order must be at least 1");
    if (x.empty()) throw std::invalid_argument("empty variable vector");
    detail::require_finite(x, "variable");
    std::vector<S> p(count, S{});
    for (const S& xi : x) {
        S running = xi;
        for (std::size_t j = 0; j < count; ++j) {
            p[j] += running;
            if (j + 1 < count) running *= xi;
        }
    }
    return PowerSums<S>{std::move(p)};
}

/// sigma_1..sigma_count via the truncated product recurrence: processing one
/// variable at a time updates the coefficient list of prod_i (1 + x_i t) up
/// to degree `count`. O(n * count); sigma_k = 0 exactly for k > n.
template <Scalar S>
ElemSyms<S> evaluate_elementary(const std::vector<S>& x, std::size_t count) {
    if (count < 1) throw std::invalid_argument("elementary order must be at least 1");
    if (x.empty()) throw std::invalid_argument("empty variable vector");
    detail::require_finite(x, "variable");
    std::vector<S> e(count + 1, S{});
    e[0] = scalar_traits<S>::from_int(1);
    std::size_t processed = 0;
    for (const S& xi : x) {
        ++processed;
        const std::size_t top = processed < count ? processed : count;
        for (std::size_t j = top; j >= 1; --j) {
            e[j] += xi * e[j - 1];
        }
    }
    return ElemSyms<S>{std::vector<S>(e.begin() + 1, e.end()), x.size()};
}

/// Newton-Girard, power sums to elementaries:
/// k sigma_k = sum_{j=1}^k (-1)^{j-1} sigma_{k-j} p_j, sigma_0 = 1.
/// Exact mode divides by the integer k exactly.
template <Scalar S>
ElemSyms<S> elementary_from_power_sums(const PowerSums<S>& p) {
    if (p.values.empty()) throw std::invalid_argument("empty power sum list");
    detail::require_finite(p.values, "power sum");
    const std::size_t count = p.values.size();
    std::vector<S> sigma(count + 1, S{});
    sigma[0] = scalar_traits<S>::from_int(1);
    for (std::size_t k = 1; k <= count; ++k) {
        S acc{};
        for (std::size_t j = 1; j <= k; ++j) {
            const S term = sigma[k - j] * p.values[j - 1];
            if (j % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        sigma[k] = acc / scalar_traits<S>::from_int(static_cast<long long>(k));
    }
    return ElemSyms<S>{std::vector<S>(sigma.begin() + 1, sigma.end()), std::nullopt};
}

/// Newton-Girard, elementaries to power sums:
/// p_m = sigma_1 p_{m-1} - sigma_2 p_{m-2} + ... + (-1)^{m-1} m sigma_m.
/// sigma's beyond the stored length count as zero; exact inverse of
/// elementary_from_power_sums.
template <Scalar S>
PowerSums<S> power_sums_from_elementary(const ElemSyms<S>& e, std::size_t count) {
    if (count < 1) throw std::invalid_argument("power sum order must be at least 1");
    if (e.values.empty()) throw std::invalid_argument("empty elementary list");
    detail::require_finite(e.values, "elementary value");
    const auto sigma = [&e](std::size_t i) -> S {
        return i <= e.values.size() ? e.values[i - 1] : S{};
    };
    std::vector<S> p(count, S{});
    for (std::size_t m = 1; m <= count; ++m) {
        S acc{};
        for (std::size_t j = 1; j < m; ++j) {
            const S term = sigma(j) * p[m - j - 1];
            if (j % 2 == 1) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        const S last = sigma(m) * scalar_traits<S>::from_int(static_cast<long long>(m));
        if (m % 2 == 1) {
            acc += last;
        } else {
            acc -= last;
        }
        p[m - 1] = acc;
    }
    return PowerSums<S>{std::move(p)};
}

/// Residual of the normalized identity
///   k sigma_k / S1^k  -  sum_{j=1}^k (-1)^{j-1} [sigma_{k-j}/S1^{k-j}] [p_j/S1^j],
/// which is an algebraic identity in the variables: exactly zero in exact
/// mode for every input with S1 != 0.
template <Scalar S>
S normalized_identity_residual(const std::vector<S>& x, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const PowerSums<S> p = evaluate_power_sums(x, k);
    const ElemSyms<S> e = evaluate_elementary(x, k);
    const S s1 = p.values[0];
    if (s1 == S{}) throw std::domain_error("zero first power sum");

    std::vector<S> s1pow(k + 1);
    s1pow[0] = scalar_traits<S>::from_int(1);
    for (std::size_t i = 1; i <= k; ++i) s1pow[i] = s1pow[i - 1] * s1;

    const auto sigma = [&e](std::size_t i) -> S {
        if (i == 0) return scalar_traits<S>::from_int(1);
        return i <= e.values.size() ? e.values[i - 1] : S{};
    };

    S lhs = scalar_traits<S>::from_int(static_cast<long long>(k)) * sigma(k) / s1pow[k];
    S rhs{};
    for (std::size_t j = 1; j <= k; ++j) {
        const S term = (sigma(k - j) / s1pow[k - j]) * (p.values[j - 1] / s1pow[j]);
        if (j % 2 == 1) {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    return lhs - rhs;
}

/// Both sides of the limiting form of the normalized identity, as exact
/// rationals:
///   LHS = 1/(k-1)!
///   RHS = sum_{j=1}^k (-1)^{j-1} 2^j / ((k-j)! (j+1))
/// No equality is asserted: the sides agree at k = 1 and differ from k = 2
/// on, and callers are expected to compare and report. Factorials are exact
/// integers, tabulated once per call.
inline std::pair<Rational, Rational> limiting_identity_sides(std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    std::vector<BigInt> fact(k + 1);
    fact[0] = 1;
    for (std::size_t i = 1; i <= k; ++i) fact[i] = fact[i - 1] * BigInt(i);

    const Rational lhs = Rational(BigInt(1), fact[k - 1]);
    Rational rhs = 0;
    BigInt pow2 = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        pow2 *= 2;
        const Rational term(pow2, fact[k - j] * BigInt(j + 1));
        if (j % 2 == 1) {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    return {lhs, rhs};
}

}  // namespace girard::symcore
