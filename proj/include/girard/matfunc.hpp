#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "girard/matrix.hpp"
#include "girard/polynomial.hpp"

namespace girard::matfunc {

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;

/// Two eigenvalues within this distance (relative to max(1, spectral scale))
/// are treated as one; merged groups raise the multiplicity instead of
/// producing a near-singular covariant denominator.
inline constexpr double kSeparationTolerance = 1e-8;

/// Rank cutoff: singular values of the j-th power below this factor times
/// the j-th power of the base matrix's largest singular value count as zero.
inline constexpr double kRankThreshold = 1e-10;

/// Distinct eigenvalues with minimal-polynomial multiplicities and,
/// optionally, the matching spectral projectors. `condition` records the
/// covariant conditioning factor kappa = max_k prod_{j != k} scale/|l_k - l_j|;
/// residual tolerances downstream scale with it.
struct SpectralData {
    std::vector<Complex> eigenvalues;
    std::vector<std::size_t> multiplicities;
    std::vector<ComplexMatrix> covariants;
    double condition = 1.0;
};

/// A function together with its derivatives: eval(lambda, j) returns the
/// j-th derivative at lambda. Orders above max_order are unavailable and
/// asking for them is the caller's contract violation.
struct FunctionJet {
    std::string name;
    std::size_t max_order = std::numeric_limits<std::size_t>::max();
    std::function<Complex(const Complex&, std::size_t)> eval;
};

/// All roots of a polynomial: `roots` lists every root with multiplicity
/// (group means repeated), `distinct`/`multiplicities` the grouped view.
/// Sorted by (real, imaginary).
struct RootSet {
    std::vector<Complex> roots;
    std::vector<Complex> distinct;
    std::vector<std::size_t> multiplicities;
};

/// Thrown when the simultaneous root iteration hits its cap; carries the
/// best iterates found so callers can inspect the stall.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, std::vector<Complex> iterates)
        : std::runtime_error(what), best_iterates_(std::move(iterates)) {}

    const std::vector<Complex>& best_iterates() const noexcept { return best_iterates_; }

private:
    std::vector<Complex> best_iterates_;
};

/// All complex roots of p (degree >= 1 after trimming zero leading
/// coefficients) by simultaneous Aberth-Ehrlich refinement from points on a
/// perturbed circle, followed by verified multiple-root sharpening and
/// grouping at the separation tolerance. Deterministic; throws
/// NonConvergence after the iteration cap.
RootSet polynomial_roots(const Polynomial<Complex>& p);
RootSet polynomial_roots(const Polynomial<double>& p);

/// F_k = prod_{j != k} (A - l_j I)/(l_k - l_j) for pairwise distinct
/// eigenvalues; the spectral projectors when A is diagonalizable. A single
/// eigenvalue yields {I} (empty product). Throws std::invalid_argument on an
/// empty list and std::runtime_error("coalescent eigenvalues") when two
/// entries sit within the separation tolerance.
std::vector<ComplexMatrix> frobenius_covariants(const ComplexMatrix& A,
                                                const std::vector<Complex>& eigenvalues);

/// Spectral projectors valid for defective matrices as well: P_k =
/// phi_k(A) * prod_{j != k} (A - l_j I)^{m_j}, where phi_k is the
/// order-(m_k - 1) Taylor truncation of 1/prod_{j != k}(X - l_j)^{m_j} at
/// l_k. Coincides with frobenius_covariants when every m_j = 1.
std::vector<ComplexMatrix> generalized_covariants(const ComplexMatrix& A,
                                                  const std::vector<Complex>& eigenvalues,
                                                  const std::vector<std::size_t>& multiplicities);

/// kappa = max_k prod_{j != k} scale/|l_k - l_j| with scale = max(1, max |l|);
/// 1 for a single eigenvalue.
double covariant_condition(const std::vector<Complex>& eigenvalues);

/// Minimal-polynomial multiplicity of each eigenvalue: the smallest j >= 1
/// with rank((A - l I)^j) = rank((A - l I)^{j+1}), rank by singular-value
/// thresholding. Throws std::runtime_error("inconsistent spectrum") if no
/// plateau appears by j = dim.
std::vector<std::size_t> minimal_multiplicities(const ComplexMatrix& A,
                                                const std::vector<Complex>& eigenvalues);

/// Full pipeline: characteristic polynomial -> roots -> multiplicities ->
/// covariants -> conditioning factor.
SpectralData analyze_spectrum(const ComplexMatrix& A);

/// f(A) = sum_k sum_{j < m_k} f^(j)(l_k)/j! * (A - l_k I)^j F_k. Uses
/// spec.covariants when present, otherwise computes them on demand. Throws
/// std::invalid_argument when the jet lacks a needed derivative order or the
/// spectral data does not fit A's dimension.
ComplexMatrix schwerdtfeger_apply(const ComplexMatrix& A, const SpectralData& spec,
                                  const FunctionJet& f);

/// Diagonalizable special case: f(A) = sum_k f_values[k] F_k with the
/// product-formula covariants. Lists must align; eigenvalue errors as in
/// frobenius_covariants.
ComplexMatrix lagrange_sylvester_apply(const ComplexMatrix& A,
                                       const std::vector<Complex>& eigenvalues,
                                       const std::vector<Complex>& f_values);

/// Built-in jets. pow_jet accepts any integer exponent (negative ones need
/// an invertible argument); poly_jet differentiates the coefficient list.
FunctionJet exp_jet();
FunctionJet log_jet();
FunctionJet sin_jet();
FunctionJet cos_jet();
FunctionJet pow_jet(long long exponent);
FunctionJet poly_jet(std::vector<Complex> coefficients);

/// Parses "exp", "log", "sin", "cos", "pow:<k>", "poly:<c0,c1,...>".
/// Throws std::invalid_argument for anything else.
FunctionJet jet_by_name(const std::string& name);

}  // namespace girard::matfunc
