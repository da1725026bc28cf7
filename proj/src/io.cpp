#include "girard/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace girard::io {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json scalar_to_json(const Rational& v) { return Json(to_ratio_string(v)); }

Json scalar_to_json(double v) { return Json(v); }

Json scalar_to_json(const std::complex<double>& v) { return Json::array({v.real(), v.imag()}); }

void scalar_from_json(const Json& j, Rational& out) {
    if (j.is_string()) {
        out = parse_ratio_string(j.get<std::string>());
        return;
    }
    if (j.is_number_integer() || j.is_number_unsigned()) {
        if (j.is_number_unsigned()) {
            out = Rational(BigInt(j.get<std::uint64_t>()));
        } else {
            out = Rational(BigInt(j.get<std::int64_t>()));
        }
        return;
    }
    throw std::invalid_argument(
        "expected an exact rational (\"num/den\" string or integer), got: " + j.dump());
}

void scalar_from_json(const Json& j, double& out) {
    if (!j.is_number()) throw std::invalid_argument("expected a number, got: " + j.dump());
    out = j.get<double>();
}

void scalar_from_json(const Json& j, std::complex<double>& out) {
    if (j.is_number()) {
        out = std::complex<double>(j.get<double>(), 0.0);
        return;
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        out = std::complex<double>(j[0].get<double>(), j[1].get<double>());
        return;
    }
    throw std::invalid_argument("expected a complex value [re, im], got: " + j.dump());
}

Json spectral_to_json(const matfunc::SpectralData& s, bool include_covariants) {
    Json j;
    j["eigenvalues"] = vector_to_json(s.eigenvalues);
    j["multiplicities"] = s.multiplicities;
    j["condition"] = s.condition;
    if (include_covariants) {
        Json covs = Json::array();
        for (const auto& c : s.covariants) covs.push_back(matrix_to_json(c));
        j["covariants"] = std::move(covs);
    }
    return j;
}

Json estimate_to_json(const mclab::EstimateRecord& r, bool emit_replicates) {
    Json j;
    j["estimator"] = r.estimator;
    j["parameters"] = r.parameters;
    j["config"] = Json{{"n", r.config.n},
                       {"replicates", r.config.replicates},
                       {"seed", r.config.seed},
                       {"parallel", r.config.parallel}};
    j["mean"] = r.mean;
    j["stderr"] = r.stderr_;
    j["target"] = r.target;
    j["abs_error"] = r.abs_error;
    j["median_of_means"] = r.median_of_means;
    j["heavy_tail"] = r.heavy_tail;
    j["warnings"] = r.warnings;
    if (emit_replicates) j["values"] = r.values;
    Json diags = Json::array();
    for (const mclab::Diagnostic& d : r.diagnostics) {
        Json dj;
        dj["name"] = d.name;
        dj["mean"] = d.mean;
        dj["stderr"] = d.stderr_;
        dj["target"] = d.target;
        if (emit_replicates) dj["values"] = d.values;
        diags.push_back(std::move(dj));
    }
    j["diagnostics"] = std::move(diags);
    return j;
}

std::string estimate_csv_header() { return "n,mean,stderr,target,abs_error,median_of_means"; }

std::string estimate_csv_row(const mclab::EstimateRecord& r) {
    std::ostringstream row;
    row << r.config.n << ',' << format_double(r.mean) << ',' << format_double(r.stderr_) << ','
        << format_double(r.target) << ',' << format_double(r.abs_error) << ','
        << format_double(r.median_of_means);
    return row.str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::invalid_argument("cannot read file: " + path);
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    out.flush();
    if (!out.good()) throw std::runtime_error("cannot write file: " + path);
}

std::string iso8601_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

}  // namespace girard::io
