#include "girard/matfunc.hpp"

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <utility>

#include "girard/charpoly.hpp"

namespace girard::matfunc {

namespace {

constexpr int kIterationCap = 500;
constexpr double kMovementTolerance = 1e-13;  // relative to the iterate scale
constexpr double kResidualFreeze = 1e-14;     // relative to the Horner magnitude bound
constexpr double kMergeResidual = 1e-13;      // verified-merge acceptance bound
constexpr double kInitialPhase = 0.43;

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

/// p(x) by Horner together with the magnitude bound sum_k |c_k| |x|^k used
/// to make residual tests scale-free.
std::pair<Complex, double> eval_with_bound(const std::vector<Complex>& c, const Complex& x) {
    Complex acc = c.back();
    double bound = std::abs(c.back());
    const double ax = std::abs(x);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * x + c[i];
        bound = bound * ax + std::abs(c[i]);
    }
    return {acc, bound};
}

Complex eval_derivative(const std::vector<Complex>& c, const Complex& x) {
    const std::size_t deg = c.size() - 1;
    Complex acc = c[deg] * static_cast<double>(deg);
    for (std::size_t i = deg; i-- > 1;) {
        acc = acc * x + c[i] * static_cast<double>(i);
    }
    return acc;
}

/// Single-linkage grouping: indices whose points chain together within
/// `radius`. Groups are emitted in order of their smallest member index.
std::vector<std::vector<std::size_t>> link_groups(const std::vector<Complex>& pts, double radius) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(pts[i] - pts[j]) <= radius) {
                const std::size_t ri = find(i);
                const std::size_t rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = groups.size();
            groups.emplace_back();
        }
        groups[slot[r]].push_back(i);
    }
    return groups;
}

/// Newton refinement of a tentative m-fold root: an m-fold root of p is a
/// simple root of the (m-1)-th derivative, where Newton regains quadratic
/// convergence that the clustered original iterates lack.
Complex refine_center(const Polynomial<Complex>& p, Complex z, std::size_t m) {
    Polynomial<Complex> d = p;
    for (std::size_t i = 1; i < m; ++i) d = d.derivative();
    const Polynomial<Complex> dd = d.derivative();
    for (int it = 0; it < 60; ++it) {
        const Complex den = dd.evaluate(z);
        if (den == Complex{}) break;
        const Complex step = d.evaluate(z) / den;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

double spectral_scale(const std::vector<Complex>& eigenvalues) {
    double s = 1.0;
    for (const Complex& l : eigenvalues) s = std::max(s, std::abs(l));
    return s;
}

void require_separated(const std::vector<Complex>& eigenvalues) {
    const double tol = kSeparationTolerance * spectral_scale(eigenvalues);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j) {
            if (std::abs(eigenvalues[i] - eigenvalues[j]) <= tol) {
                throw std::runtime_error("coalescent eigenvalues");
            }
        }
    }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    }
    return out;
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

std::size_t rank_with_threshold(const Eigen::MatrixXcd& m, double threshold) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) ++rank;
    }
    return rank;
}

Complex integer_power(const Complex& z, long long e) {
    if (e < 0) return Complex(1.0, 0.0) / integer_power(z, -e);
    Complex acc(1.0, 0.0);
    Complex base = z;
    auto k = static_cast<unsigned long long>(e);
    while (k != 0) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1ULL;
    }
    return acc;
}

}  // namespace

RootSet polynomial_roots(const Polynomial<Complex>& p) {
    std::vector<Complex> c = p.coeffs;
    while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("root finding needs degree at least 1");
    for (const Complex& v : c) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("non-finite polynomial coefficient");
        }
    }
    const std::size_t deg = c.size() - 1;
    const Complex lead = c.back();
    for (Complex& v : c) v /= lead;

    double maxc = 0.0;
    for (std::size_t i = 0; i < deg; ++i) maxc = std::max(maxc, std::abs(c[i]));
    const double radius = 1.0 + maxc;
    std::vector<Complex> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + kInitialPhase;
        z[k] = std::polar(radius, angle);
    }

    // Simultaneous refinement, synchronous updates: every correction in a
    // sweep is computed from the previous sweep's points, so the result is
    // independent of element order. Roots whose residual already sits at
    // the noise floor are frozen; multiple roots never meet the movement
    // criterion (their iterates orbit inside the blur disk) and rely on it.
    bool converged = false;
    for (int iter = 0; iter < kIterationCap && !converged; ++iter) {
        double scale = 1.0;
        for (const Complex& zi : z) scale = std::max(scale, std::abs(zi));
        std::vector<Complex> znext = z;
        double max_move = 0.0;
        bool all_settled = true;
        for (std::size_t i = 0; i < deg; ++i) {
            const auto [pv, bound] = eval_with_bound(c, z[i]);
            if (std::abs(pv) <= kResidualFreeze * bound) continue;
            all_settled = false;
            const Complex pd = eval_derivative(c, z[i]);
            Complex step;
            if (pd == Complex{}) {
                // stationary point; deterministic nudge breaks the tie
                step = std::polar(1e-3 * scale, 0.91 * static_cast<double>(i + 1));
            } else {
                const Complex w = pv / pd;
                Complex s{};
                for (std::size_t j = 0; j < deg; ++j) {
                    if (j == i) continue;
                    Complex diff = z[i] - z[j];
                    if (diff == Complex{}) diff = Complex(1e-12 * scale, 0.0);
                    s += Complex(1.0, 0.0) / diff;
                }
                const Complex denom = Complex(1.0, 0.0) - w * s;
                step = (denom == Complex{}) ? w : w / denom;
            }
            znext[i] = z[i] - step;
            max_move = std::max(max_move, std::abs(step));
        }
        z = std::move(znext);
        if (all_settled || max_move < kMovementTolerance * scale) converged = true;
    }
    if (!converged) {
        bool all_settled = true;
        for (const Complex& zi : z) {
            const auto [pv, bound] = eval_with_bound(c, zi);
            if (std::abs(pv) > kResidualFreeze * bound) {
                all_settled = false;
                break;
            }
        }
        if (!all_settled) {
            throw NonConvergence("root iteration did not converge within the cap", z);
        }
    }

    // An m-fold root leaves m iterates blurred across a disk of radius
    // ~(residual tolerance)^(1/m), far wider than the separation tolerance.
    // Sharpen them: tentatively merge at growing radii, Newton-refine the
    // would-be center, and accept only when the center's own residual
    // certifies a genuine multiple root.
    double scale = 1.0;
    for (const Complex& zi : z) scale = std::max(scale, std::abs(zi));
    const Polynomial<Complex> monic{std::vector<Complex>(c)};
    for (const double rung : {1e-6, 1e-4, 1e-2, 1e-1}) {
        const auto groups = link_groups(z, rung * scale);
        std::vector<Complex> merged;
        merged.reserve(deg);
        for (const auto& group : groups) {
            if (group.size() == 1) {
                merged.push_back(z[group[0]]);
                continue;
            }
            Complex center{};
            for (const std::size_t idx : group) center += z[idx];
            center /= static_cast<double>(group.size());
            center = refine_center(monic, center, group.size());
            const auto [pv, bound] = eval_with_bound(c, center);
            if (std::abs(pv) <= kMergeResidual * bound) {
                merged.insert(merged.end(), group.size(), center);
            } else {
                for (const std::size_t idx : group) merged.push_back(z[idx]);
            }
        }
        z = std::move(merged);
    }

    // Unconditional grouping at the separation tolerance.
    scale = 1.0;
    for (const Complex& zi : z) scale = std::max(scale, std::abs(zi));
    const auto groups = link_groups(z, kSeparationTolerance * scale);
    std::vector<std::pair<Complex, std::size_t>> clusters;
    clusters.reserve(groups.size());
    for (const auto& group : groups) {
        Complex mean{};
        for (const std::size_t idx : group) mean += z[idx];
        mean /= static_cast<double>(group.size());
        clusters.emplace_back(mean, group.size());
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return complex_less(a.first, b.first); });

    RootSet out;
    for (const auto& [mean, count] : clusters) {
        out.distinct.push_back(mean);
        out.multiplicities.push_back(count);
        out.roots.insert(out.roots.end(), count, mean);
    }
    return out;
}

RootSet polynomial_roots(const Polynomial<double>& p) {
    std::vector<Complex> c(p.coeffs.begin(), p.coeffs.end());
    return polynomial_roots(Polynomial<Complex>(std::move(c)));
}

std::vector<ComplexMatrix> frobenius_covariants(const ComplexMatrix& A,
                                                const std::vector<Complex>& eigenvalues) {
    if (eigenvalues.empty()) throw std::invalid_argument("empty eigenvalue list");
    if (eigenvalues.size() > A.dim()) {
        throw std::invalid_argument("more eigenvalues than the matrix dimension");
    }
    require_separated(eigenvalues);
    const std::size_t n = A.dim();
    std::vector<ComplexMatrix> out;
    out.reserve(eigenvalues.size());
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        ComplexMatrix numerator = ComplexMatrix::identity(n);
        Complex denominator(1.0, 0.0);
        for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
            if (j == k) continue;
            ComplexMatrix factor = A;
            factor.add_scaled_identity(-eigenvalues[j]);
            numerator = numerator * factor;
            denominator *= eigenvalues[k] - eigenvalues[j];
        }
        out.push_back(numerator.scaled(Complex(1.0, 0.0) / denominator));
    }
    return out;
}

std::vector<ComplexMatrix> generalized_covariants(const ComplexMatrix& A,
                                                  const std::vector<Complex>& eigenvalues,
                                                  const std::vector<std::size_t>& multiplicities) {
    if (eigenvalues.empty()) throw std::invalid_argument("empty eigenvalue list");
    if (eigenvalues.size() != multiplicities.size()) {
        throw std::invalid_argument("eigenvalue and multiplicity lists differ in length");
    }
    std::size_t total = 0;
    for (const std::size_t m : multiplicities) {
        if (m < 1) throw std::invalid_argument("multiplicity must be at least 1");
        total += m;
    }
    if (total > A.dim()) throw std::invalid_argument("multiplicities exceed the matrix dimension");
    require_separated(eigenvalues);

    const std::size_t n = A.dim();
    std::vector<ComplexMatrix> out;
    out.reserve(eigenvalues.size());
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        const std::size_t mk = multiplicities[k];

        // Q_k(X) = prod_{j != k} (X - l_j)^{m_j}
        Polynomial<Complex> q = Polynomial<Complex>::constant(Complex(1.0, 0.0));
        for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
            if (j == k) continue;
            const Polynomial<Complex> factor(std::vector<Complex>{-eigenvalues[j], Complex(1.0, 0.0)});
            for (std::size_t t = 0; t < multiplicities[j]; ++t) q = q * factor;
        }

        // First m_k Taylor coefficients of Q_k at l_k by repeated synthetic
        // division by (X - l_k).
        std::vector<Complex> taylor(mk, Complex{});
        std::vector<Complex> work = q.coeffs;
        for (std::size_t i = 0; i < mk; ++i) {
            if (work.size() == 1) {
                taylor[i] = work[0];
                work[0] = Complex{};
                continue;
            }
            std::vector<Complex> quotient(work.size() - 1);
            Complex carry = work.back();
            for (std::size_t t = work.size() - 1; t-- > 0;) {
                quotient[t] = carry;
                carry = work[t] + eigenvalues[k] * carry;
            }
            taylor[i] = carry;
            work = std::move(quotient);
        }
        if (taylor[0] == Complex{}) throw std::runtime_error("coalescent eigenvalues");

        // Power-series inverse of the Taylor expansion: phi_k's coefficients.
        std::vector<Complex> inv(mk);
        inv[0] = Complex(1.0, 0.0) / taylor[0];
        for (std::size_t i = 1; i < mk; ++i) {
            Complex acc{};
            for (std::size_t l = 1; l <= i; ++l) acc += taylor[l] * inv[i - l];
            inv[i] = -acc / taylor[0];
        }

        // P_k = phi_k(A) * Q_k(A)
        ComplexMatrix nil = A;
        nil.add_scaled_identity(-eigenvalues[k]);
        ComplexMatrix phi = ComplexMatrix::identity(n).scaled(inv[0]);
        ComplexMatrix nilpow = ComplexMatrix::identity(n);
        for (std::size_t i = 1; i < mk; ++i) {
            nilpow = nilpow * nil;
            phi = phi + nilpow.scaled(inv[i]);
        }
        ComplexMatrix qa = ComplexMatrix::identity(n);
        for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
            if (j == k) continue;
            ComplexMatrix factor = A;
            factor.add_scaled_identity(-eigenvalues[j]);
            for (std::size_t t = 0; t < multiplicities[j]; ++t) qa = qa * factor;
        }
        out.push_back(phi * qa);
    }
    return out;
}

double covariant_condition(const std::vector<Complex>& eigenvalues) {
    const double scale = spectral_scale(eigenvalues);
    double worst = 1.0;
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
            if (j == k) continue;
            prod *= scale / std::abs(eigenvalues[k] - eigenvalues[j]);
        }
        worst = std::max(worst, prod);
    }
    return worst;
}

std::vector<std::size_t> minimal_multiplicities(const ComplexMatrix& A,
                                                const std::vector<Complex>& eigenvalues) {
    if (eigenvalues.empty()) throw std::invalid_argument("empty eigenvalue list");
    const std::size_t n = A.dim();
    if (n < 1) throw std::invalid_argument("matrix must have dimension at least 1");
    std::vector<std::size_t> out;
    out.reserve(eigenvalues.size());
    for (const Complex& lambda : eigenvalues) {
        ComplexMatrix shifted = A;
        shifted.add_scaled_identity(-lambda);
        const Eigen::MatrixXcd base = to_eigen(shifted);
        const double base_scale = largest_singular_value(base);

        // rank((A - l I)^j) thresholded against the j-th power of the base
        // scale, so that powers that collapse to pure rounding noise read
        // as rank zero instead of promoting the noise to full rank.
        double power_scale = base_scale;
        std::size_t prev = rank_with_threshold(base, kRankThreshold * power_scale);
        Eigen::MatrixXcd power = base;
        bool found = false;
        for (std::size_t j = 1; j <= n; ++j) {
            power = power * base;
            power_scale *= base_scale;
            const std::size_t next = rank_with_threshold(power, kRankThreshold * power_scale);
            if (next == prev) {
                out.push_back(j);
                found = true;
                break;
            }
            prev = next;
        }
        if (!found) throw std::runtime_error("inconsistent spectrum");
    }
    return out;
}

SpectralData analyze_spectrum(const ComplexMatrix& A) {
    const auto cp = charpoly::faddeev_leverrier(A);
    const RootSet roots = polynomial_roots(cp.coefficients);
    SpectralData data;
    data.eigenvalues = roots.distinct;
    data.multiplicities = minimal_multiplicities(A, roots.distinct);
    // The minimal-polynomial multiplicity never exceeds the algebraic one;
    // rank detection can overshoot when two genuinely distinct eigenvalues
    // sit close together and their shifted powers blur into each other, so
    // clamp against the root multiplicities.
    for (std::size_t i = 0; i < data.multiplicities.size(); ++i) {
        data.multiplicities[i] = std::min(data.multiplicities[i], roots.multiplicities[i]);
    }
    data.covariants = generalized_covariants(A, data.eigenvalues, data.multiplicities);
    data.condition = covariant_condition(data.eigenvalues);
    return data;
}

ComplexMatrix schwerdtfeger_apply(const ComplexMatrix& A, const SpectralData& spec,
                                  const FunctionJet& f) {
    const std::size_t n = A.dim();
    const std::size_t mu = spec.eigenvalues.size();
    if (mu == 0) throw std::invalid_argument("empty eigenvalue list");
    if (spec.multiplicities.size() != mu) {
        throw std::invalid_argument("eigenvalue and multiplicity lists differ in length");
    }
    std::size_t total = 0;
    std::size_t needed_order = 0;
    for (const std::size_t m : spec.multiplicities) {
        if (m < 1) throw std::invalid_argument("multiplicity must be at least 1");
        total += m;
        needed_order = std::max(needed_order, m - 1);
    }
    if (mu > n || total > n) {
        throw std::invalid_argument("spectral data inconsistent with the matrix dimension");
    }
    if (!spec.covariants.empty()) {
        if (spec.covariants.size() != mu) {
            throw std::invalid_argument("spectral data inconsistent with the matrix dimension");
        }
        for (const ComplexMatrix& cov : spec.covariants) {
            if (cov.dim() != n) {
                throw std::invalid_argument("spectral data inconsistent with the matrix dimension");
            }
        }
    }
    if (!f.eval) throw std::invalid_argument("function jet has no evaluator");
    if (f.max_order < needed_order) {
        throw std::invalid_argument("function jet missing derivative order " +
                                    std::to_string(needed_order));
    }

    const std::vector<ComplexMatrix> covariants =
        spec.covariants.empty()
            ? generalized_covariants(A, spec.eigenvalues, spec.multiplicities)
            : spec.covariants;

    ComplexMatrix result(n);
    for (std::size_t k = 0; k < mu; ++k) {
        ComplexMatrix nil = A;
        nil.add_scaled_identity(-spec.eigenvalues[k]);
        ComplexMatrix term = covariants[k];
        result = result + term.scaled(f.eval(spec.eigenvalues[k], 0));
        double factorial = 1.0;
        for (std::size_t j = 1; j < spec.multiplicities[k]; ++j) {
            term = nil * term;
            factorial *= static_cast<double>(j);
            result = result + term.scaled(f.eval(spec.eigenvalues[k], j) / factorial);
        }
    }
    return result;
}

ComplexMatrix lagrange_sylvester_apply(const ComplexMatrix& A,
                                       const std::vector<Complex>& eigenvalues,
                                       const std::vector<Complex>& f_values) {
    if (eigenvalues.size() != f_values.size()) {
        throw std::invalid_argument("eigenvalue and function-value lists differ in length");
    }
    const auto covariants = frobenius_covariants(A, eigenvalues);
    ComplexMatrix result(A.dim());
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        result = result + covariants[k].scaled(f_values[k]);
    }
    return result;
}

FunctionJet exp_jet() {
    FunctionJet jet;
    jet.name = "exp";
    jet.eval = [](const Complex& z, std::size_t) { return std::exp(z); };
    return jet;
}

FunctionJet log_jet() {
    FunctionJet jet;
    jet.name = "log";
    jet.eval = [](const Complex& z, std::size_t j) -> Complex {
        if (j == 0) return std::log(z);
        // d^j/dz^j log z = (-1)^(j-1) (j-1)! / z^j
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        double fact = 1.0;
        for (std::size_t t = 2; t < j; ++t) fact *= static_cast<double>(t);
        return sign * fact / integer_power(z, static_cast<long long>(j));
    };
    return jet;
}

FunctionJet sin_jet() {
    FunctionJet jet;
    jet.name = "sin";
    jet.eval = [](const Complex& z, std::size_t j) -> Complex {
        switch (j % 4) {
            case 0: return std::sin(z);
            case 1: return std::cos(z);
            case 2: return -std::sin(z);
            default: return -std::cos(z);
        }
    };
    return jet;
}

FunctionJet cos_jet() {
    FunctionJet jet;
    jet.name = "cos";
    jet.eval = [](const Complex& z, std::size_t j) -> Complex {
        switch (j % 4) {
            case 0: return std::cos(z);
            case 1: return -std::sin(z);
            case 2: return -std::cos(z);
            default: return std::sin(z);
        }
    };
    return jet;
}

FunctionJet pow_jet(long long exponent) {
    FunctionJet jet;
    jet.name = "pow:" + std::to_string(exponent);
    jet.eval = [exponent](const Complex& z, std::size_t j) -> Complex {
        if (exponent >= 0 && j > static_cast<std::size_t>(exponent)) return Complex{};
        double falling = 1.0;
        for (std::size_t t = 0; t < j; ++t) {
            falling *= static_cast<double>(exponent - static_cast<long long>(t));
        }
        return falling * integer_power(z, exponent - static_cast<long long>(j));
    };
    return jet;
}

FunctionJet poly_jet(std::vector<Complex> coefficients) {
    if (coefficients.empty()) coefficients.push_back(Complex{});
    auto derivatives = std::make_shared<std::vector<Polynomial<Complex>>>();
    derivatives->push_back(Polynomial<Complex>(std::move(coefficients)));
    while (derivatives->back().degree() > 0) {
        derivatives->push_back(derivatives->back().derivative());
    }
    FunctionJet jet;
    jet.name = "poly";
    jet.eval = [derivatives](const Complex& z, std::size_t j) -> Complex {
        if (j >= derivatives->size()) return Complex{};
        return (*derivatives)[j].evaluate(z);
    };
    return jet;
}

FunctionJet jet_by_name(const std::string& name) {
    if (name == "exp") return exp_jet();
    if (name == "log") return log_jet();
    if (name == "sin") return sin_jet();
    if (name == "cos") return cos_jet();
    if (name.rfind("pow:", 0) == 0) {
        const std::string arg = name.substr(4);
        std::size_t pos = 0;
        long long exponent = 0;
        try {
            exponent = std::stoll(arg, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown function jet: " + name);
        }
        if (pos != arg.size()) throw std::invalid_argument("unknown function jet: " + name);
        return pow_jet(exponent);
    }
    if (name.rfind("poly:", 0) == 0) {
        const std::string arg = name.substr(5);
        if (arg.empty()) throw std::invalid_argument("unknown function jet: " + name);
        std::vector<Complex> coefficients;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = arg.find(',', start);
            const std::string token =
                arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            std::size_t pos = 0;
            double value = 0.0;
            try {
                value = std::stod(token, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("unknown function jet: " + name);
            }
            if (pos != token.size()) throw std::invalid_argument("unknown function jet: " + name);
            coefficients.emplace_back(value, 0.0);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return poly_jet(std::move(coefficients));
    }
    throw std::invalid_argument("unknown function jet: " + name);
}

}  // namespace girard::matfunc
