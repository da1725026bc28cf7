#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace girard::mclab {

/// One Monte Carlo run: each of `replicates` replicates draws `n` variables
/// and produces a single ratio. `parallel` only affects scheduling, never
/// values: every replicate has its own counter-based substream keyed by
/// (seed, estimator stream, n, replicate index).
struct MCConfig {
    std::size_t n = 1;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    bool parallel = false;
};

/// Stable substream identifiers, one per estimator. Part of the
/// reproducibility contract: changing them changes every sampled value.
inline constexpr std::uint64_t kStreamPowerRatio = 1;
inline constexpr std::uint64_t kStreamSymRatio = 2;
inline constexpr std::uint64_t kStreamTrigRatio = 3;
inline constexpr std::uint64_t kStreamGeometricRatio = 4;
inline constexpr std::uint64_t kStreamPowerPair = 5;
inline constexpr std::uint64_t kStreamGenericRatio = 6;
inline constexpr std::uint64_t kStreamTraceRatio = 7;

/// A named one-dimensional real function.
struct NamedFunction {
    std::string name;
    std::function<double(double)> eval;
};

/// Sampling distribution on an interval, drawn by inverse CDF; `density`
/// feeds the quadrature targets.
struct DistributionSpec {
    std::string name;
    double lower = 0.0;
    double upper = 1.0;
    std::function<double(double)> inverse_cdf;
    std::function<double(double)> density;
};

DistributionSpec uniform01_distribution();

/// rho(x) = (c+1) x^c on (0,1); requires c > -1.
DistributionSpec power_distribution(double c);

/// "uniform01" or "power:<c>".
DistributionSpec distribution_by_name(const std::string& name);

/// "one", "x", "pow:<e>", or "sinpi" (sin(pi x)).
NamedFunction function_by_name(const std::string& name);

/// A secondary per-replicate series recorded alongside the main ratio,
/// e.g. the numerator-only and denominator-only means of the geometric
/// estimator, each with its own limit target.
struct Diagnostic {
    std::string name;
    std::vector<double> values;
    double mean = 0.0;
    double stderr_ = 0.0;
    double target = 0.0;
};

struct EstimateRecord {
    std::string estimator;
    std::map<std::string, std::string> parameters;
    MCConfig config;
    /// One ratio per replicate, ordered by replicate index.
    std::vector<double> values;
    double mean = 0.0;
    /// Sample standard deviation / sqrt(replicates); 0 when replicates = 1.
    double stderr_ = 0.0;
    /// The limiting constant, computed from closed forms at run time.
    double target = 0.0;
    double abs_error = 0.0;
    /// Median of min(16, R) contiguous group means; the preferred estimate
    /// when heavy_tail is set.
    double median_of_means = 0.0;
    bool heavy_tail = false;
    std::vector<std::string> warnings;
    std::vector<Diagnostic> diagnostics;
};

/// (sum x_i^alpha)/(sum x_i) over n uniforms; target 2/(alpha+1).
/// alpha must be positive; alpha in (0,1) is accepted with a warning.
/// alpha = 1 yields exactly 1 in every replicate.
EstimateRecord estimate_power_ratio(double alpha, const MCConfig& cfg);

/// sigma_k(x/S_1) over n uniforms, computed by the elementary-symmetric
/// product recurrence on the rescaled variables (equal to
/// sigma_k(x)/S_1^k without overflow); target 1/k!. Requires 1 <= k <= n.
EstimateRecord estimate_sym_ratio(std::size_t k, const MCConfig& cfg);

/// (sum x_i^a)/(sum sin(pi x_i)); target pi/(2(a+1)). The integrand is
/// unbounded near the all-ones corner, so the record is flagged heavy-tail
/// and median_of_means is the preferred estimate. n = 1 diverges and is
/// rejected.
EstimateRecord estimate_trig_ratio(double a, const MCConfig& cfg);

/// exp((1/n) sum ln x_i) / ((1/n) sum sin^2(pi x_i)); target 2/e. The
/// numerator-only (target 1/e) and denominator-only (target 1/2) series
/// are attached as diagnostics.
EstimateRecord estimate_geometric_ratio(const MCConfig& cfg);

/// (sum x_i^beta)/(sum x_i^gamma); target (gamma+1)/(beta+1). Requires
/// beta, gamma > -1; negative exponents flag the record heavy-tail.
EstimateRecord estimate_power_pair(double beta, double gamma, const MCConfig& cfg);

/// (sum f(x_i))/(sum g(x_i)) under `dist`; target E[f]/E[g] computed by
/// adaptive quadrature against the density. Errors when the denominator
/// expectation vanishes or the quadrature fails.
EstimateRecord estimate_generic_ratio(const NamedFunction& f, const NamedFunction& g,
                                      const DistributionSpec& dist, const MCConfig& cfg);

/// Tr(A^m)/Tr(A) for A = diag(x_1..x_n); target 2/(m+1). Routed through an
/// actual matrix product for n <= 64 (cross-module consistency) and through
/// direct power sums for larger n; the two routes produce bit-identical
/// values for diagonal matrices.
EstimateRecord estimate_trace_ratio(std::size_t m, const MCConfig& cfg);

/// Dispatch by estimator name: "power-ratio" (alpha), "sym-ratio" (k),
/// "trig-ratio" (a), "geometric-ratio" (), "power-pair" (beta, gamma),
/// "generic-ratio" (f, g, dist), "trace-ratio" (m). Unknown names or
/// unexpected/missing parameters raise std::invalid_argument.
EstimateRecord run_estimator(const std::string& name,
                             const std::map<std::string, std::string>& params,
                             const MCConfig& cfg);

/// One record per dimension in the ascending grid, sharing the base seed;
/// substreams are derived per (n, replicate), so records are independent of
/// the grid they appear in.
std::vector<EstimateRecord> convergence_table(const std::string& name,
                                              const std::map<std::string, std::string>& params,
                                              const std::vector<std::size_t>& n_grid,
                                              const MCConfig& base);

}  // namespace girard::mclab
