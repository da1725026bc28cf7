#include "girard/mclab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>

#include "girard/matrix.hpp"
#include "girard/quadrature.hpp"
#include "girard/rng.hpp"
#include "girard/symcore.hpp"

namespace girard::mclab {

namespace {

void validate_config(const MCConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (cfg.replicates < 1) throw std::invalid_argument("replicate count must be at least 1");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// pow(x, 1) is not guaranteed bit-identical to x by every libm; the exact
/// degenerate ratios (alpha = 1, beta = gamma = 1) rely on it being so.
double pow_or_identity(double x, double e) {
    return e == 1.0 ? x : std::pow(x, e);
}

/// Runs one body per replicate, each on its own substream keyed by
/// (seed, stream, n, replicate). The result buffer is indexed by replicate,
/// so the merge order — and every value — is independent of scheduling.
template <typename Body>
auto map_replicates(const MCConfig& cfg, std::uint64_t stream, Body body)
    -> std::vector<decltype(body(std::declval<rng::CounterRng&>()))> {
    using Result = decltype(body(std::declval<rng::CounterRng&>()));
    std::vector<Result> out(cfg.replicates);
    const auto run_block = [&out, &cfg, stream, &body](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            rng::CounterRng gen(rng::substream_key(cfg.seed, stream, cfg.n, r));
            out[r] = body(gen);
        }
    };
    if (!cfg.parallel || cfg.replicates == 1) {
        run_block(0, cfg.replicates);
        return out;
    }
    const std::size_t hardware = std::thread::hardware_concurrency();
    const std::size_t workers = std::clamp<std::size_t>(hardware, 1, cfg.replicates);
    const std::size_t chunk = (cfg.replicates + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(cfg.replicates, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run_block, lo, hi);
    }
    for (std::thread& t : pool) t.join();
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1)) /
           std::sqrt(static_cast<double>(v.size()));
}

double median_of_means_of(const std::vector<double>& v) {
    const std::size_t groups = std::min<std::size_t>(16, v.size());
    std::vector<double> gmeans(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t lo = g * v.size() / groups;
        const std::size_t hi = (g + 1) * v.size() / groups;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        gmeans[g] = s / static_cast<double>(hi - lo);
    }
    std::sort(gmeans.begin(), gmeans.end());
    const std::size_t mid = groups / 2;
    if (groups % 2 == 1) return gmeans[mid];
    return 0.5 * (gmeans[mid - 1] + gmeans[mid]);
}

void finalize(EstimateRecord& rec) {
    rec.mean = mean_of(rec.values);
    rec.stderr_ = stderr_of(rec.values, rec.mean);
    rec.abs_error = std::abs(rec.mean - rec.target);
    rec.median_of_means = median_of_means_of(rec.values);
    for (Diagnostic& d : rec.diagnostics) {
        d.mean = mean_of(d.values);
        d.stderr_ = stderr_of(d.values, d.mean);
    }
}

double parse_real(const std::string& text, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed value for parameter " + key + ": \"" + text + "\"");
    }
    if (pos != text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("malformed value for parameter " + key + ": \"" + text + "\"");
    }
    return v;
}

std::size_t parse_count(const std::string& text, const std::string& key) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    if (text.empty() || !(text[0] >= '0' && text[0] <= '9')) {
        throw std::invalid_argument("malformed value for parameter " + key + ": \"" + text + "\"");
    }
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed value for parameter " + key + ": \"" + text + "\"");
    }
    if (pos != text.size()) {
        throw std::invalid_argument("malformed value for parameter " + key + ": \"" + text + "\"");
    }
    return static_cast<std::size_t>(v);
}

struct GeomParts {
    double numerator = 0.0;
    double denominator = 0.0;
};

}  // namespace

DistributionSpec uniform01_distribution() {
    DistributionSpec dist;
    dist.name = "uniform01";
    dist.lower = 0.0;
    dist.upper = 1.0;
    dist.inverse_cdf = [](double u) { return u; };
    dist.density = [](double) { return 1.0; };
    return dist;
}

DistributionSpec power_distribution(double c) {
    if (!(c > -1.0)) throw std::invalid_argument("power density exponent must exceed -1");
    DistributionSpec dist;
    dist.name = "power:" + format_double(c);
    dist.lower = 0.0;
    dist.upper = 1.0;
    dist.inverse_cdf = [c](double u) { return pow_or_identity(u, 1.0 / (c + 1.0)); };
    dist.density = [c](double x) { return (c + 1.0) * pow_or_identity(x, c); };
    return dist;
}

DistributionSpec distribution_by_name(const std::string& name) {
    if (name == "uniform01") return uniform01_distribution();
    if (name.rfind("power:", 0) == 0) {
        DistributionSpec dist = power_distribution(parse_real(name.substr(6), "dist"));
        dist.name = name;
        return dist;
    }
    throw std::invalid_argument("unknown distribution: " + name);
}

NamedFunction function_by_name(const std::string& name) {
    NamedFunction fn;
    fn.name = name;
    if (name == "one") {
        fn.eval = [](double) { return 1.0; };
        return fn;
    }
    if (name == "x") {
        fn.eval = [](double x) { return x; };
        return fn;
    }
    if (name == "sinpi") {
        fn.eval = [](double x) { return std::sin(std::numbers::pi * x); };
        return fn;
    }
    if (name.rfind("pow:", 0) == 0) {
        const double e = parse_real(name.substr(4), "f/g");
        fn.eval = [e](double x) { return pow_or_identity(x, e); };
        return fn;
    }
    throw std::invalid_argument("unknown function: " + name);
}

EstimateRecord estimate_power_ratio(double alpha, const MCConfig& cfg) {
    validate_config(cfg);
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    EstimateRecord rec;
    rec.estimator = "power-ratio";
    rec.parameters["alpha"] = format_double(alpha);
    rec.config = cfg;
    rec.target = 2.0 / (alpha + 1.0);
    if (alpha < 1.0) {
        rec.warnings.push_back(
            "alpha below 1: the ratio is unbounded near the origin; the limit target still applies");
    }
    const std::size_t n = cfg.n;
    rec.values = map_replicates(cfg, kStreamPowerRatio, [alpha, n](rng::CounterRng& gen) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = gen.next_uniform01();
            num += pow_or_identity(u, alpha);
            den += u;
        }
        return num / den;
    });
    finalize(rec);
    return rec;
}

EstimateRecord estimate_sym_ratio(std::size_t k, const MCConfig& cfg) {
    validate_config(cfg);
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (k > cfg.n) throw std::invalid_argument("k must not exceed the dimension n");
    EstimateRecord rec;
    rec.estimator = "sym-ratio";
    rec.parameters["k"] = std::to_string(k);
    rec.config = cfg;
    double target = 1.0;
    for (std::size_t i = 2; i <= k; ++i) target /= static_cast<double>(i);
    rec.target = target;
    const std::size_t n = cfg.n;
    rec.values = map_replicates(cfg, kStreamSymRatio, [k, n](rng::CounterRng& gen) {
        std::vector<double> x(n);
        double s1 = 0.0;
        for (double& xi : x) {
            xi = gen.next_uniform01();
            s1 += xi;
        }
        if (k == 1) return 1.0;  // sigma_1 = S_1 identically
        // Rescaling before the product recurrence evaluates
        // sigma_k(x)/S_1^k without forming either huge quantity.
        for (double& xi : x) xi /= s1;
        return symcore::evaluate_elementary(x, k).values[k - 1];
    });
    finalize(rec);
    return rec;
}

EstimateRecord estimate_trig_ratio(double a, const MCConfig& cfg) {
    validate_config(cfg);
    if (!(a >= 0.0)) throw std::invalid_argument("a must be nonnegative");
    if (cfg.n == 1) throw std::domain_error("integrand not integrable at n=1");
    EstimateRecord rec;
    rec.estimator = "trig-ratio";
    rec.parameters["a"] = format_double(a);
    rec.config = cfg;
    rec.target = std::numbers::pi / (2.0 * (a + 1.0));
    rec.heavy_tail = true;
    rec.warnings.push_back(
        "denominator vanishes at the all-ones corner: heavy-tailed ratio, prefer median_of_means");
    const std::size_t n = cfg.n;
    rec.values = map_replicates(cfg, kStreamTrigRatio, [a, n](rng::CounterRng& gen) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = gen.next_uniform01();
            num += pow_or_identity(u, a);
            den += std::sin(std::numbers::pi * u);
        }
        return num / den;
    });
    finalize(rec);
    return rec;
}

EstimateRecord estimate_geometric_ratio(const MCConfig& cfg) {
    validate_config(cfg);
    EstimateRecord rec;
    rec.estimator = "geometric-ratio";
    rec.config = cfg;
    rec.target = 2.0 / std::numbers::e;
    const std::size_t n = cfg.n;
    const auto parts = map_replicates(cfg, kStreamGeometricRatio, [n](rng::CounterRng& gen) {
        double logsum = 0.0;
        double densum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = gen.next_uniform01();  // never exactly 0, log stays finite
            logsum += std::log(u);
            const double s = std::sin(std::numbers::pi * u);
            densum += s * s;
        }
        GeomParts p;
        p.numerator = std::exp(logsum / static_cast<double>(n));
        p.denominator = densum / static_cast<double>(n);
        return p;
    });
    Diagnostic numerator;
    numerator.name = "numerator";
    numerator.target = 1.0 / std::numbers::e;
    Diagnostic denominator;
    denominator.name = "denominator";
    denominator.target = 0.5;
    rec.values.reserve(parts.size());
    for (const GeomParts& p : parts) {
        rec.values.push_back(p.numerator / p.denominator);
        numerator.values.push_back(p.numerator);
        denominator.values.push_back(p.denominator);
    }
    rec.diagnostics.push_back(std::move(numerator));
    rec.diagnostics.push_back(std::move(denominator));
    finalize(rec);
    return rec;
}

EstimateRecord estimate_power_pair(double beta, double gamma, const MCConfig& cfg) {
    validate_config(cfg);
    if (!(beta > -1.0)) throw std::invalid_argument("beta must exceed -1");
    if (!(gamma > -1.0)) throw std::invalid_argument("gamma must exceed -1");
    EstimateRecord rec;
    rec.estimator = "power-pair";
    rec.parameters["beta"] = format_double(beta);
    rec.parameters["gamma"] = format_double(gamma);
    rec.config = cfg;
    rec.target = (gamma + 1.0) / (beta + 1.0);
    rec.heavy_tail = beta < 0.0 || gamma < 0.0;
    if (rec.heavy_tail) {
        rec.warnings.push_back(
            "negative exponent: heavy-tailed integrand, prefer median_of_means");
    }
    const std::size_t n = cfg.n;
    rec.values = map_replicates(cfg, kStreamPowerPair, [beta, gamma, n](rng::CounterRng& gen) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = gen.next_uniform01();
            num += pow_or_identity(u, beta);
            den += pow_or_identity(u, gamma);
        }
        return num / den;
    });
    finalize(rec);
    return rec;
}

EstimateRecord estimate_generic_ratio(const NamedFunction& f, const NamedFunction& g,
                                      const DistributionSpec& dist, const MCConfig& cfg) {
    validate_config(cfg);
    if (!f.eval || !g.eval) throw std::invalid_argument("function has no evaluator");
    if (!dist.inverse_cdf || !dist.density) {
        throw std::invalid_argument("distribution is missing its sampler or density");
    }
    const auto feval = f.eval;
    const auto geval = g.eval;
    const auto density = dist.density;
    const double ef = quadrature::integrate_1d(
        [&feval, &density](double x) { return feval(x) * density(x); }, dist.lower, dist.upper);
    const double eg = quadrature::integrate_1d(
        [&geval, &density](double x) { return geval(x) * density(x); }, dist.lower, dist.upper);
    if (std::abs(eg) < 1e-12) throw std::domain_error("zero denominator expectation");

    EstimateRecord rec;
    rec.estimator = "generic-ratio";
    rec.parameters["f"] = f.name;
    rec.parameters["g"] = g.name;
    rec.parameters["dist"] = dist.name;
    rec.config = cfg;
    rec.target = ef / eg;
    const std::size_t n = cfg.n;
    const auto sample = dist.inverse_cdf;
    rec.values =
        map_replicates(cfg, kStreamGenericRatio, [feval, geval, sample, n](rng::CounterRng& gen) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double x = sample(gen.next_uniform01());
                num += feval(x);
                den += geval(x);
            }
            return num / den;
        });
    finalize(rec);
    return rec;
}

EstimateRecord estimate_trace_ratio(std::size_t m, const MCConfig& cfg) {
    validate_config(cfg);
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    EstimateRecord rec;
    rec.estimator = "trace-ratio";
    rec.parameters["m"] = std::to_string(m);
    rec.config = cfg;
    rec.target = 2.0 / (static_cast<double>(m) + 1.0);
    const std::size_t n = cfg.n;
    rec.values = map_replicates(cfg, kStreamTraceRatio, [m, n](rng::CounterRng& gen) {
        std::vector<double> x(n);
        for (double& xi : x) xi = gen.next_uniform01();
        if (n <= 64) {
            // The honest matrix route: diagonal sample matrix, iterated
            // product, traces. Bit-identical to the direct power sums.
            const Matrix<double> a = Matrix<double>::diagonal(x);
            Matrix<double> power = a;
            for (std::size_t t = 2; t <= m; ++t) power = power * a;
            return power.trace() / a.trace();
        }
        double num = 0.0;
        double den = 0.0;
        for (const double xi : x) {
            double pw = xi;
            for (std::size_t t = 2; t <= m; ++t) pw *= xi;
            num += pw;
            den += xi;
        }
        return num / den;
    });
    finalize(rec);
    return rec;
}

EstimateRecord run_estimator(const std::string& name,
                             const std::map<std::string, std::string>& params,
                             const MCConfig& cfg) {
    const auto get = [&params](const std::string& key) -> const std::string& {
        const auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument("missing parameter: " + key);
        return it->second;
    };
    const auto allow = [&params](std::initializer_list<const char*> keys) {
        for (const auto& [key, value] : params) {
            bool known = false;
            for (const char* candidate : keys) {
                if (key == candidate) {
                    known = true;
                    break;
                }
            }
            if (!known) throw std::invalid_argument("unexpected parameter: " + key);
        }
    };
    if (name == "power-ratio") {
        allow({"alpha"});
        return estimate_power_ratio(parse_real(get("alpha"), "alpha"), cfg);
    }
    if (name == "sym-ratio") {
        allow({"k"});
        return estimate_sym_ratio(parse_count(get("k"), "k"), cfg);
    }
    if (name == "trig-ratio") {
        allow({"a"});
        return estimate_trig_ratio(parse_real(get("a"), "a"), cfg);
    }
    if (name == "geometric-ratio") {
        allow({});
        return estimate_geometric_ratio(cfg);
    }
    if (name == "power-pair") {
        allow({"beta", "gamma"});
        return estimate_power_pair(parse_real(get("beta"), "beta"),
                                   parse_real(get("gamma"), "gamma"), cfg);
    }
    if (name == "generic-ratio") {
        allow({"f", "g", "dist"});
        const NamedFunction f = function_by_name(get("f"));
        const NamedFunction g = function_by_name(get("g"));
        const DistributionSpec dist = params.count("dist") != 0
                                          ? distribution_by_name(params.at("dist"))
                                          : uniform01_distribution();
        return estimate_generic_ratio(f, g, dist, cfg);
    }
    if (name == "trace-ratio") {
        allow({"m"});
        return estimate_trace_ratio(parse_count(get("m"), "m"), cfg);
    }
    throw std::invalid_argument("unknown estimator: " + name);
}

std::vector<EstimateRecord> convergence_table(const std::string& name,
                                              const std::map<std::string, std::string>& params,
                                              const std::vector<std::size_t>& n_grid,
                                              const MCConfig& base) {
    if (n_grid.empty()) throw std::invalid_argument("dimension grid must not be empty");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) {
            throw std::invalid_argument("dimension grid must be strictly ascending");
        }
    }
    std::vector<EstimateRecord> out;
    out.reserve(n_grid.size());
    for (const std::size_t n : n_grid) {
        MCConfig cfg = base;
        cfg.n = n;
        out.push_back(run_estimator(name, params, cfg));
    }
    return out;
}

}  // namespace girard::mclab
