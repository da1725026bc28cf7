#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "girard/charpoly.hpp"
#include "girard/io.hpp"
#include "girard/matfunc.hpp"
#include "girard/mclab.hpp"
#include "girard/symcore.hpp"
#include "girard/version.hpp"

namespace {

using girard::BigInt;
using girard::Matrix;
using girard::Rational;
using girard::io::Json;

/// Flags shared by every subcommand. `seed` holds the value of --seed before
/// the GIRARD_SEED override is applied.
struct Common {
    std::uint64_t seed = 0;
    std::string mode = "exact";
    std::string out;
    bool emit_replicates = false;
};

void register_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "base seed for sampling subcommands (default 0)");
    sub->add_option("--mode", c.mode, "scalar mode: exact rationals or doubles")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", c.out,
                    "write the machine-readable result here, plus <out>.manifest.json");
    sub->add_flag("--emit-replicates", c.emit_replicates,
                  "include per-replicate values in JSON output");
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    const char* env = std::getenv("GIRARD_SEED");
    if (env == nullptr) return cli_seed;
    const std::string text(env);
    std::size_t pos = 0;
    unsigned long long v = 0;
    if (text.empty() || !(text[0] >= '0' && text[0] <= '9')) {
        throw std::invalid_argument("malformed GIRARD_SEED: \"" + text + "\"");
    }
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed GIRARD_SEED: \"" + text + "\"");
    }
    if (pos != text.size()) throw std::invalid_argument("malformed GIRARD_SEED: \"" + text + "\"");
    return static_cast<std::uint64_t>(v);
}

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    if (text.empty() || !(text[0] >= '0' && text[0] <= '9')) {
        throw std::invalid_argument("malformed " + what + ": \"" + text + "\"");
    }
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed " + what + ": \"" + text + "\"");
    }
    if (pos != text.size()) {
        throw std::invalid_argument("malformed " + what + ": \"" + text + "\"");
    }
    return static_cast<std::size_t>(v);
}

/// Writes the payload to `out` and the run manifest to `out`.manifest.json.
void write_with_manifest(const std::string& subcommand,
                         const std::map<std::string, std::string>& parameters,
                         const std::map<std::string, std::string>& input_digests,
                         const Common& common, std::uint64_t seed, const std::string& payload) {
    if (common.out.empty()) return;
    girard::io::write_file(common.out, payload);
    Json manifest;
    manifest["subcommand"] = subcommand;
    manifest["parameters"] = parameters;
    manifest["seed"] = seed;
    manifest["artifact_version"] = std::string(girard::kVersion);
    manifest["input_digests"] = input_digests;
    manifest["out"] = common.out;
    manifest["emit_replicates"] = common.emit_replicates;
    manifest["timestamp"] = girard::io::iso8601_utc_now();
    girard::io::write_file(common.out + ".manifest.json", manifest.dump(2) + "\n");
}

std::string pretty_rational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return girard::to_ratio_string(q);
}

std::string pretty_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string pretty_complex(const std::complex<double>& z) {
    if (z.imag() == 0.0) return pretty_double(z.real());
    std::string s = pretty_double(z.real());
    s += (z.imag() < 0.0 ? " - " : " + ");
    s += pretty_double(std::abs(z.imag()));
    s += "i";
    return s;
}

std::string scalar_display(const Rational& v) { return pretty_rational(v); }
std::string scalar_display(double v) { return pretty_double(v); }

bool scalar_negative(const Rational& v) { return v < 0; }
bool scalar_negative(double v) { return v < 0.0; }

Rational scalar_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
double scalar_abs(double v) { return std::abs(v); }

bool scalar_is_one(const Rational& v) { return v == 1; }
bool scalar_is_one(double v) { return v == 1.0; }

/// "X^2 - 7X + 10" from low-to-high coefficients.
template <typename S>
std::string pretty_polynomial(const std::vector<S>& coeffs) {
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        const S& c = coeffs[i];
        if (c == S{} && coeffs.size() > 1) continue;
        const bool negative = scalar_negative(c);
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const S mag = scalar_abs(c);
        if (i == 0 || !scalar_is_one(mag)) out += scalar_display(mag);
        if (i > 0) {
            out += "X";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    if (out.empty()) out = "0";
    return out;
}

template <typename S>
std::string join_scalars(const std::vector<S>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += scalar_display(v[i]);
    }
    return out;
}

// --- newton -----------------------------------------------------------

struct NewtonOptions {
    std::string input;
    std::string direction;
    std::size_t count = 0;  // 0: use the input length
};

void run_newton(const NewtonOptions& opt, const Common& common, std::uint64_t seed) {
    const std::string text = girard::io::read_file(opt.input);
    const Json parsed = Json::parse(text);

    Json payload;
    std::string human;
    std::size_t resolved_count = 0;

    const auto convert = [&]<typename S>(S) {
        const std::vector<S> values = girard::io::vector_from_json<S>(parsed);
        const std::size_t count = opt.count == 0 ? values.size() : opt.count;
        resolved_count = count;
        std::vector<S> output;
        if (opt.direction == "p2e") {
            if (count > values.size()) {
                throw std::invalid_argument("count exceeds the number of supplied power sums");
            }
            girard::symcore::PowerSums<S> p{
                std::vector<S>(values.begin(), values.begin() + count)};
            output = girard::symcore::elementary_from_power_sums(p).values;
        } else {
            girard::symcore::ElemSyms<S> e{values, std::nullopt};
            output = girard::symcore::power_sums_from_elementary(e, count).values;
        }
        payload["direction"] = opt.direction;
        payload["mode"] = common.mode;
        payload["count"] = count;
        payload["input"] = girard::io::vector_to_json(values);
        payload["output"] = girard::io::vector_to_json(output);
        human = "direction: " + opt.direction + " (" + common.mode + ")\n";
        human += "input:  " + join_scalars(values) + "\n";
        human += "output: " + join_scalars(output) + "\n";
    };

    if (common.mode == "exact") {
        convert(Rational{});
    } else {
        convert(0.0);
    }
    std::cout << human;

    std::map<std::string, std::string> parameters{{"input", opt.input},
                                                  {"direction", opt.direction},
                                                  {"count", std::to_string(resolved_count)},
                                                  {"mode", common.mode}};
    std::map<std::string, std::string> digests{{opt.input, girard::io::fnv1a64_hex(text)}};
    write_with_manifest("newton", parameters, digests, common, seed, payload.dump(2) + "\n");
}

// --- charpoly ---------------------------------------------------------

struct CharpolyOptions {
    std::string input;
    bool check_lemma = false;
};

void run_charpoly(const CharpolyOptions& opt, const Common& common, std::uint64_t seed) {
    const std::string text = girard::io::read_file(opt.input);
    const Json parsed = Json::parse(text);

    Json payload;
    std::string human;
    if (common.mode == "exact") {
        const auto A = girard::io::matrix_from_json<Rational>(parsed);
        const auto result = girard::charpoly::faddeev_leverrier(A);
        payload = girard::io::charpoly_to_json(result, opt.check_lemma);
        human += "characteristic polynomial: " + pretty_polynomial(result.coefficients.coeffs) +
                 "\n";
        human += "sigma: " + join_scalars(result.sigma.values) + "\n";
        human += "trace sequence: " + join_scalars(result.trace_sequence) + "\n";
        if (opt.check_lemma) {
            std::string verdicts;
            bool all_ok = true;
            for (const bool ok : result.trace_identity_ok) {
                verdicts += ok ? " ok" : " FAIL";
                all_ok = all_ok && ok;
            }
            human += "per-step trace identity:" + verdicts +
                     (all_ok ? "  (all steps check out)\n" : "\n");
        }
    } else {
        const auto A = girard::io::matrix_from_json<double>(parsed);
        const auto result = girard::charpoly::faddeev_leverrier(A);
        payload = girard::io::charpoly_to_json(result, opt.check_lemma);
        human += "characteristic polynomial: " + pretty_polynomial(result.coefficients.coeffs) +
                 "\n";
        human += "sigma: " + join_scalars(result.sigma.values) + "\n";
        human += "trace sequence: " + join_scalars(result.trace_sequence) + "\n";
        if (result.conditioning_warning) {
            human += "warning: intermediate traces exceeded the conditioning limit; "
                     "float-mode coefficients may be inaccurate\n";
        }
    }
    payload["mode"] = common.mode;
    std::cout << human;

    std::map<std::string, std::string> parameters{{"input", opt.input},
                                                  {"mode", common.mode},
                                                  {"check_lemma", opt.check_lemma ? "true" : "false"}};
    std::map<std::string, std::string> digests{{opt.input, girard::io::fnv1a64_hex(text)}};
    write_with_manifest("charpoly", parameters, digests, common, seed, payload.dump(2) + "\n");
}

// --- matfunc ----------------------------------------------------------

struct MatfuncOptions {
    std::string input;
    std::string f;
    std::string via = "schwerdtfeger";
};

std::string spectrum_summary(const girard::matfunc::SpectralData& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        if (i > 0) out += ", ";
        out += pretty_complex(spec.eigenvalues[i]) + " (multiplicity " +
               std::to_string(spec.multiplicities[i]) + ")";
    }
    return out;
}

void run_matfunc(const MatfuncOptions& opt, const Common& common, std::uint64_t seed) {
    const std::string text = girard::io::read_file(opt.input);
    const auto A = girard::io::matrix_from_json<std::complex<double>>(Json::parse(text));
    const auto jet = girard::matfunc::jet_by_name(opt.f);

    const auto cp = girard::charpoly::faddeev_leverrier(A);
    const auto spec = girard::matfunc::analyze_spectrum(A);

    Matrix<std::complex<double>> result;
    if (opt.via == "lagrange") {
        for (std::size_t i = 0; i < spec.multiplicities.size(); ++i) {
            if (spec.multiplicities[i] > 1) {
                throw std::runtime_error(
                    "matrix is not diagonalizable within the separation tolerance; "
                    "clustered spectrum: " +
                    spectrum_summary(spec));
            }
        }
        std::vector<std::complex<double>> f_values(spec.eigenvalues.size());
        for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
            f_values[i] = jet.eval(spec.eigenvalues[i], 0);
        }
        result = girard::matfunc::lagrange_sylvester_apply(A, spec.eigenvalues, f_values);
    } else {
        result = girard::matfunc::schwerdtfeger_apply(A, spec, jet);
    }

    std::cout << "f = " << opt.f << " via " << opt.via << "\n";
    std::cout << "spectrum: " << spectrum_summary(spec) << "\n";
    std::cout << "covariant condition: " << pretty_double(spec.condition) << "\n";
    std::cout << "f(A):\n";
    for (std::size_t i = 0; i < result.dim(); ++i) {
        std::cout << "  ";
        for (std::size_t k = 0; k < result.dim(); ++k) {
            std::cout << (k > 0 ? "   " : "") << pretty_complex(result(i, k));
        }
        std::cout << "\n";
    }

    Json payload;
    payload["f"] = opt.f;
    payload["via"] = opt.via;
    payload["charpoly_coefficients"] = girard::io::vector_to_json(cp.coefficients.coeffs);
    payload["spectrum"] = girard::io::spectral_to_json(spec, true);
    payload["result"] = girard::io::matrix_to_json(result);

    std::map<std::string, std::string> parameters{
        {"input", opt.input}, {"f", opt.f}, {"via", opt.via}};
    std::map<std::string, std::string> digests{{opt.input, girard::io::fnv1a64_hex(text)}};
    write_with_manifest("matfunc", parameters, digests, common, seed, payload.dump(2) + "\n");
}

// --- simulate ---------------------------------------------------------

struct SimulateOptions {
    std::string estimator;
    std::map<std::string, std::string> params;  // alpha/k/a/beta/gamma/m/f/g/dist, as given
    std::size_t n = 1000;
    std::size_t replicates = 16;
    bool parallel = false;
    std::string grid;  // comma-separated ascending n values; empty: single run
};

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> grid;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        grid.push_back(parse_size(token, "grid entry"));
    }
    if (grid.empty()) throw std::invalid_argument("malformed grid: no entries");
    return grid;
}

void print_estimate(const girard::mclab::EstimateRecord& rec) {
    std::cout << "estimator: " << rec.estimator;
    for (const auto& [key, value] : rec.parameters) std::cout << "  " << key << "=" << value;
    std::cout << "\n";
    std::cout << "n=" << rec.config.n << "  replicates=" << rec.config.replicates
              << "  seed=" << rec.config.seed << "  parallel=" << (rec.config.parallel ? "on" : "off")
              << "\n";
    std::cout << "mean            = " << girard::io::format_double(rec.mean) << "\n";
    std::cout << "stderr          = " << girard::io::format_double(rec.stderr_) << "\n";
    std::cout << "target          = " << girard::io::format_double(rec.target) << "\n";
    std::cout << "abs_error       = " << girard::io::format_double(rec.abs_error) << "\n";
    std::cout << "median_of_means = " << girard::io::format_double(rec.median_of_means) << "\n";
    for (const auto& d : rec.diagnostics) {
        std::cout << "diagnostic " << d.name << ": mean=" << girard::io::format_double(d.mean)
                  << " stderr=" << girard::io::format_double(d.stderr_)
                  << " target=" << girard::io::format_double(d.target) << "\n";
    }
    for (const auto& w : rec.warnings) std::cout << "warning: " << w << "\n";
}

void run_simulate(const SimulateOptions& opt, const Common& common, std::uint64_t seed) {
    girard::mclab::MCConfig cfg;
    cfg.n = opt.n;
    cfg.replicates = opt.replicates;
    cfg.seed = seed;
    cfg.parallel = opt.parallel;

    std::string payload;
    std::map<std::string, std::string> parameters;
    if (opt.grid.empty()) {
        const auto rec = girard::mclab::run_estimator(opt.estimator, opt.params, cfg);
        print_estimate(rec);
        payload = girard::io::estimate_to_json(rec, common.emit_replicates).dump(2) + "\n";
        parameters = rec.parameters;  // canonically formatted by the estimator
    } else {
        const auto grid = parse_grid(opt.grid);
        const auto records = girard::mclab::convergence_table(opt.estimator, opt.params, grid, cfg);
        std::cout << girard::io::estimate_csv_header() << "\n";
        std::string csv = girard::io::estimate_csv_header() + "\n";
        for (const auto& rec : records) {
            const std::string row = girard::io::estimate_csv_row(rec);
            std::cout << row << "\n";
            csv += row + "\n";
        }
        payload = csv;
        parameters = records.front().parameters;
        std::string canonical_grid;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (i > 0) canonical_grid += ",";
            canonical_grid += std::to_string(grid[i]);
        }
        parameters["grid"] = canonical_grid;
    }
    parameters["estimator"] = opt.estimator;
    parameters["n"] = std::to_string(opt.n);
    parameters["replicates"] = std::to_string(opt.replicates);
    parameters["parallel"] = opt.parallel ? "true" : "false";

    write_with_manifest("simulate", parameters, {}, common, seed, payload);
}

// --- identity ---------------------------------------------------------

struct IdentityOptions {
    std::size_t k_min = 1;
    std::size_t k_max = 10;
};

void run_identity(const IdentityOptions& opt, const Common& common, std::uint64_t seed) {
    if (opt.k_min < 1) throw std::invalid_argument("k must be at least 1");
    if (opt.k_max < opt.k_min) throw std::invalid_argument("k range is empty");

    Json rows = Json::array();
    std::printf("%4s  %-22s  %-22s  %s\n", "k", "lhs", "rhs", "verdict");
    for (std::size_t k = opt.k_min; k <= opt.k_max; ++k) {
        const auto [lhs, rhs] = girard::symcore::limiting_identity_sides(k);
        const std::string verdict = lhs == rhs ? "equal" : "differs";
        std::printf("%4zu  %-22s  %-22s  %s\n", k, pretty_rational(lhs).c_str(),
                    pretty_rational(rhs).c_str(), verdict.c_str());
        rows.push_back(Json{{"k", k},
                            {"lhs", girard::to_ratio_string(lhs)},
                            {"rhs", girard::to_ratio_string(rhs)},
                            {"verdict", verdict}});
    }

    std::map<std::string, std::string> parameters{{"k_min", std::to_string(opt.k_min)},
                                                  {"k_max", std::to_string(opt.k_max)}};
    write_with_manifest("identity", parameters, {}, common, seed, rows.dump(2) + "\n");
}

// --- replay -----------------------------------------------------------

struct ReplayOptions {
    std::string manifest;
    std::string out_override;
};

std::string manifest_param(const std::map<std::string, std::string>& params,
                           const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument("manifest missing parameter: " + key);
    return it->second;
}

void run_replay(const ReplayOptions& opt) {
    const Json manifest = Json::parse(girard::io::read_file(opt.manifest));
    if (!manifest.is_object() || !manifest.contains("subcommand") ||
        !manifest.contains("parameters") || !manifest.contains("seed") ||
        !manifest.contains("out")) {
        throw std::invalid_argument("malformed manifest: " + opt.manifest);
    }
    const std::string subcommand = manifest["subcommand"].get<std::string>();
    const auto parameters = manifest["parameters"].get<std::map<std::string, std::string>>();
    const std::uint64_t seed = manifest["seed"].get<std::uint64_t>();

    if (manifest.contains("artifact_version") &&
        manifest["artifact_version"].get<std::string>() != girard::kVersion) {
        std::cerr << "warning: manifest was written by version "
                  << manifest["artifact_version"].get<std::string>() << ", this is "
                  << girard::kVersion << "\n";
    }

    if (manifest.contains("input_digests")) {
        for (const auto& [path, digest] :
             manifest["input_digests"].get<std::map<std::string, std::string>>()) {
            const std::string current = girard::io::fnv1a64_hex(girard::io::read_file(path));
            if (current != digest) {
                throw std::invalid_argument("input file digest mismatch: " + path);
            }
        }
    }

    Common common;
    common.seed = seed;
    common.out = opt.out_override.empty() ? manifest["out"].get<std::string>() : opt.out_override;
    common.emit_replicates =
        manifest.contains("emit_replicates") && manifest["emit_replicates"].get<bool>();

    if (subcommand == "newton") {
        NewtonOptions n;
        n.input = manifest_param(parameters, "input");
        n.direction = manifest_param(parameters, "direction");
        n.count = parse_size(manifest_param(parameters, "count"), "count");
        common.mode = manifest_param(parameters, "mode");
        run_newton(n, common, seed);
    } else if (subcommand == "charpoly") {
        CharpolyOptions c;
        c.input = manifest_param(parameters, "input");
        c.check_lemma = manifest_param(parameters, "check_lemma") == "true";
        common.mode = manifest_param(parameters, "mode");
        run_charpoly(c, common, seed);
    } else if (subcommand == "matfunc") {
        MatfuncOptions m;
        m.input = manifest_param(parameters, "input");
        m.f = manifest_param(parameters, "f");
        m.via = manifest_param(parameters, "via");
        run_matfunc(m, common, seed);
    } else if (subcommand == "simulate") {
        SimulateOptions s;
        s.estimator = manifest_param(parameters, "estimator");
        s.n = parse_size(manifest_param(parameters, "n"), "n");
        s.replicates = parse_size(manifest_param(parameters, "replicates"), "replicates");
        s.parallel = manifest_param(parameters, "parallel") == "true";
        if (parameters.count("grid") != 0) s.grid = parameters.at("grid");
        for (const char* key : {"alpha", "k", "a", "beta", "gamma", "m", "f", "g", "dist"}) {
            if (parameters.count(key) != 0) s.params[key] = parameters.at(key);
        }
        run_simulate(s, common, seed);
    } else if (subcommand == "identity") {
        IdentityOptions i;
        i.k_min = parse_size(manifest_param(parameters, "k_min"), "k_min");
        i.k_max = parse_size(manifest_param(parameters, "k_max"), "k_max");
        run_identity(i, common, seed);
    } else {
        throw std::invalid_argument("manifest names an unknown subcommand: " + subcommand);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "girard: symmetric-function conversions, characteristic polynomials, matrix "
        "functions, and seeded Monte Carlo ratio estimators"};
    app.require_subcommand(1);

    Common common;

    NewtonOptions newton_opt;
    auto* newton = app.add_subcommand(
        "newton", "convert between power sums and elementary symmetric values");
    newton->add_option("input", newton_opt.input, "JSON file holding an array of scalars")
        ->required();
    newton
        ->add_option("--direction", newton_opt.direction,
                     "p2e: power sums in, elementaries out; e2p: the reverse")
        ->required()
        ->check(CLI::IsMember({"e2p", "p2e"}));
    newton->add_option("--count", newton_opt.count,
                       "how many output values to produce (default: input length)");
    register_common(newton, common);

    CharpolyOptions charpoly_opt;
    auto* charpoly =
        app.add_subcommand("charpoly", "characteristic polynomial by the trace recursion");
    charpoly->add_option("input", charpoly_opt.input, "JSON matrix file")->required();
    charpoly->add_flag("--check-lemma", charpoly_opt.check_lemma,
                       "report the per-step trace identity verdicts (exact mode)");
    register_common(charpoly, common);

    MatfuncOptions matfunc_opt;
    auto* matfunc = app.add_subcommand(
        "matfunc", "matrix function through the spectral-projector formula");
    matfunc->add_option("input", matfunc_opt.input, "JSON matrix file")->required();
    matfunc
        ->add_option("--f", matfunc_opt.f,
                     "function jet: exp, log, sin, cos, pow:<k>, poly:<c0,c1,...>")
        ->required();
    matfunc
        ->add_option("--via", matfunc_opt.via,
                     "schwerdtfeger (any spectrum) or lagrange (diagonalizable only)")
        ->check(CLI::IsMember({"schwerdtfeger", "lagrange"}));
    register_common(matfunc, common);

    SimulateOptions simulate_opt;
    std::map<std::string, std::string> raw_params;
    auto* simulate =
        app.add_subcommand("simulate", "seeded Monte Carlo ratio estimators with diagnostics");
    simulate
        ->add_option("--estimator", simulate_opt.estimator,
                     "power-ratio, sym-ratio, trig-ratio, geometric-ratio, power-pair, "
                     "generic-ratio, trace-ratio")
        ->required();
    simulate->add_option("--alpha", raw_params["alpha"], "power-ratio exponent");
    simulate->add_option("--k", raw_params["k"], "sym-ratio order");
    simulate->add_option("--a", raw_params["a"], "trig-ratio exponent");
    simulate->add_option("--beta", raw_params["beta"], "power-pair numerator exponent");
    simulate->add_option("--gamma", raw_params["gamma"], "power-pair denominator exponent");
    simulate->add_option("--m", raw_params["m"], "trace-ratio power");
    simulate->add_option("--f", raw_params["f"], "generic-ratio numerator function");
    simulate->add_option("--g", raw_params["g"], "generic-ratio denominator function");
    simulate->add_option("--dist", raw_params["dist"],
                         "generic-ratio sampling distribution (default uniform01)");
    simulate->add_option("--n", simulate_opt.n, "variables per replicate");
    simulate->add_option("--replicates", simulate_opt.replicates, "independent replicates");
    simulate->add_flag("--parallel", simulate_opt.parallel,
                       "run replicates on threads (values are scheduling-independent)");
    simulate->add_option("--grid", simulate_opt.grid,
                         "comma-separated ascending n values; emits a CSV convergence table");
    register_common(simulate, common);

    IdentityOptions identity_opt;
    auto* identity = app.add_subcommand(
        "identity", "exact both-sides audit of the normalized-identity limit");
    identity->add_option("--k-min", identity_opt.k_min, "first k (default 1)");
    identity->add_option("--k-max", identity_opt.k_max, "last k (default 10)");
    register_common(identity, common);

    ReplayOptions replay_opt;
    auto* replay = app.add_subcommand("replay", "re-run a manifest and reproduce its output");
    replay->add_option("manifest", replay_opt.manifest, "path to a .manifest.json file")
        ->required();
    replay->add_option("--out", replay_opt.out_override,
                       "write the replayed output here instead of the recorded path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (replay->parsed()) {
            run_replay(replay_opt);
            return 0;
        }
        const std::uint64_t seed = effective_seed(common.seed);
        if (newton->parsed()) {
            run_newton(newton_opt, common, seed);
        } else if (charpoly->parsed()) {
            run_charpoly(charpoly_opt, common, seed);
        } else if (matfunc->parsed()) {
            run_matfunc(matfunc_opt, common, seed);
        } else if (simulate->parsed()) {
            for (const auto& [key, value] : raw_params) {
                if (simulate->count("--" + key) > 0) simulate_opt.params[key] = value;
            }
            run_simulate(simulate_opt, common, seed);
        } else if (identity->parsed()) {
            run_identity(identity_opt, common, seed);
        }
        return 0;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // Numerical failures: non-convergence, overflow, failed quadrature.
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
