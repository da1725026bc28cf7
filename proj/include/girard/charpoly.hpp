#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "girard/matrix.hpp"
#include "girard/polynomial.hpp"
#include "girard/scalar.hpp"
#include "girard/symcore.hpp"

namespace girard::charpoly {

/// Float-mode conditioning threshold: the recursion is numerically fragile,
/// and intermediate traces past this magnitude flag the result.
inline constexpr double kTraceConditioningLimit = 1e12;

template <Scalar S>
struct CharPolyResult {
    /// sigma_1..sigma_n of the eigenvalues.
    symcore::ElemSyms<S> sigma;
    /// Monic characteristic polynomial, low-to-high:
    /// X^n - sigma_1 X^{n-1} + ... + (-1)^n sigma_n.
    Polynomial<S> coefficients;
    /// Tr(A_0)..Tr(A_{n-1}) of the recursion iterates.
    std::vector<S> trace_sequence;
    /// Exact mode only: per-step verdicts of Tr(A_k) == (-1)^k (k+1) sigma_{k+1},
    /// with the sigma's rebuilt independently from the power-sum traces Tr(A^j)
    /// via Newton-Girard. Empty in float mode and for trace-built results.
    std::vector<bool> trace_identity_ok;
    /// Float mode: some intermediate trace exceeded kTraceConditioningLimit.
    bool conditioning_warning = false;
};

namespace detail {

template <Scalar S>
Polynomial<S> monic_from_sigma(const std::vector<S>& sigma) {
    const std::size_t n = sigma.size();
    std::vector<S> coeffs(n + 1, S{});
    coeffs[n] = scalar_traits<S>::from_int(1);
    for (std::size_t k = 1; k <= n; ++k) {
        coeffs[n - k] = (k % 2 == 1) ? S{} - sigma[k - 1] : sigma[k - 1];
    }
    return Polynomial<S>(std::move(coeffs));
}

template <Scalar S>
std::vector<S> reconstructed_trace_sequence(const std::vector<S>& sigma) {
    // Tr(A_k) = (-1)^k (k+1) sigma_{k+1}
    std::vector<S> traces(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        S t = sigma[k] * scalar_traits<S>::from_int(static_cast<long long>(k + 1));
        traces[k] = (k % 2 == 0) ? t : S{} - t;
    }
    return traces;
}

template <Scalar S>
void check_step_finite(const Matrix<S>& m) {
    if constexpr (!scalar_traits<S>::is_exact) {
        if (!m.all_finite()) throw std::runtime_error("numeric overflow in recursion");
    }
}

}  // namespace detail

/// Characteristic polynomial by the matrix recursion
///   A_0 = A,  A_{k+1} = A (A_k - Tr(A_k)/(k+1) I),
/// with sigma_{k+1} = (-1)^k Tr(A_k)/(k+1). In exact mode every step is
/// cross-checked against the power-sum route (see trace_identity_ok).
template <Scalar S>
CharPolyResult<S> faddeev_leverrier(const Matrix<S>& A) {
    const std::size_t n = A.dim();
    if (n < 1) throw std::invalid_argument("matrix must have dimension at least 1");
    detail::check_step_finite(A);

    CharPolyResult<S> result;
    std::vector<S> sigma(n);
    Matrix<S> iterate = A;
    for (std::size_t k = 0; k < n; ++k) {
        const S t = iterate.trace();
        result.trace_sequence.push_back(t);
        if constexpr (!scalar_traits<S>::is_exact) {
            if (scalar_traits<S>::magnitude(t) > kTraceConditioningLimit) {
                result.conditioning_warning = true;
            }
        }
        const S shift = t / scalar_traits<S>::from_int(static_cast<long long>(k + 1));
        sigma[k] = (k % 2 == 0) ? shift : S{} - shift;
        if (k + 1 < n) {
            Matrix<S> deflated = iterate;
            deflated.add_scaled_identity(S{} - shift);
            iterate = A * deflated;
            detail::check_step_finite(iterate);
        }
    }

    if constexpr (scalar_traits<S>::is_exact) {
        // Independent route: sigma from Tr(A^j) via Newton-Girard, then the
        // recursion traces must satisfy Tr(A_k) = (-1)^k (k+1) sigma_{k+1}.
        symcore::PowerSums<S> traces_of_powers;
        Matrix<S> power = A;
        traces_of_powers.values.push_back(power.trace());
        for (std::size_t j = 2; j <= n; ++j) {
            power = power * A;
            traces_of_powers.values.push_back(power.trace());
        }
        const auto independent = symcore::elementary_from_power_sums(traces_of_powers);
        const auto expected = detail::reconstructed_trace_sequence(independent.values);
        result.trace_identity_ok.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            result.trace_identity_ok[k] = (result.trace_sequence[k] == expected[k]);
        }
    }

    result.coefficients = detail::monic_from_sigma(sigma);
    result.sigma = symcore::ElemSyms<S>{std::move(sigma), n};
    return result;
}

/// Characteristic polynomial from the power-sum traces Tr(A^1)..Tr(A^n).
/// Produces the same sigma's and monic polynomial as faddeev_leverrier on
/// the underlying matrix; the trace sequence is reconstructed from the
/// sigma's.
template <Scalar S>
CharPolyResult<S> charpoly_from_traces(const symcore::PowerSums<S>& traces, std::size_t n) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (traces.values.size() < n) {
        throw std::invalid_argument("need at least n power-sum traces");
    }
    symcore::PowerSums<S> head{std::vector<S>(traces.values.begin(), traces.values.begin() + n)};
    auto elem = symcore::elementary_from_power_sums(head);

    CharPolyResult<S> result;
    result.trace_sequence = detail::reconstructed_trace_sequence(elem.values);
    result.coefficients = detail::monic_from_sigma(elem.values);
    elem.var_count = n;
    result.sigma = std::move(elem);
    return result;
}

/// Max-magnitude entry of chi_A(A), evaluated by Horner over matrices.
/// Exactly zero in exact mode.
template <Scalar S>
typename scalar_traits<S>::magnitude_type cayley_hamilton_residual(const Matrix<S>& A) {
    const auto cp = faddeev_leverrier(A);
    const auto& c = cp.coefficients.coeffs;
    const std::size_t n = A.dim();
    Matrix<S> horner = Matrix<S>::identity(n);  // leading coefficient is 1
    for (std::size_t i = n; i-- > 0;) {
        horner = horner * A;
        horner.add_scaled_identity(c[i]);
        detail::check_step_finite(horner);
    }
    return horner.max_magnitude();
}

/// Determinant and, when it is nonzero, the inverse, both read off the
/// recursion: det A = sigma_n and A^{-1} = (-1)^{n-1} C_{n-2} / sigma_n with
/// C_k = A_k - Tr(A_k)/(k+1) I (C_{-1} = I when n = 1).
template <Scalar S>
std::pair<S, std::optional<Matrix<S>>> determinant_and_inverse(const Matrix<S>& A) {
    const std::size_t n = A.dim();
    if (n < 1) throw std::invalid_argument("matrix must have dimension at least 1");
    detail::check_step_finite(A);

    Matrix<S> iterate = A;
    Matrix<S> penultimate_deflated = Matrix<S>::identity(n);
    S sigma_n{};
    for (std::size_t k = 0; k < n; ++k) {
        const S t = iterate.trace();
        const S shift = t / scalar_traits<S>::from_int(static_cast<long long>(k + 1));
        sigma_n = (k % 2 == 0) ? shift : S{} - shift;
        if (k + 1 < n) {
            Matrix<S> deflated = iterate;
            deflated.add_scaled_identity(S{} - shift);
            if (k == n - 2) penultimate_deflated = deflated;
            iterate = A * deflated;
            detail::check_step_finite(iterate);
        }
    }

    if (sigma_n == S{}) {
        return {sigma_n, std::nullopt};
    }
    const S scale = scalar_traits<S>::from_int(n % 2 == 1 ? 1 : -1) / sigma_n;
    return {sigma_n, penultimate_deflated.scaled(scale)};
}

}  // namespace girard::charpoly
