#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "girard/charpoly.hpp"
#include "girard/matfunc.hpp"
#include "girard/matrix.hpp"
#include "girard/mclab.hpp"
#include "girard/rational.hpp"
#include "girard/scalar.hpp"

namespace girard::io {

/// Insertion-ordered JSON: field order in output files is the order the
/// writers below choose, which keeps byte-level reproducibility obvious.
using Json = nlohmann::ordered_json;

/// %.17g — round-trips every double exactly.
std::string format_double(double v);

/// Rationals serialize as canonical "num/den" strings, floats as JSON
/// numbers, complex values as two-element [re, im] arrays.
Json scalar_to_json(const Rational& v);
Json scalar_to_json(double v);
Json scalar_to_json(const std::complex<double>& v);

/// Readers select by output reference so templated containers share one
/// spelling. A rational accepts "num/den" strings and JSON integers but
/// rejects floats (exactness would silently be lost); a double accepts any
/// JSON number; a complex accepts [re, im] or a bare real number.
void scalar_from_json(const Json& j, Rational& out);
void scalar_from_json(const Json& j, double& out);
void scalar_from_json(const Json& j, std::complex<double>& out);

template <Scalar S>
Json vector_to_json(const std::vector<S>& v) {
    Json arr = Json::array();
    for (const S& e : v) arr.push_back(scalar_to_json(e));
    return arr;
}

template <Scalar S>
std::vector<S> vector_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of scalars");
    std::vector<S> out(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) scalar_from_json(j[i], out[i]);
    return out;
}

/// {"dim": n, "entries": [[row 0], [row 1], ...]}
template <Scalar S>
Json matrix_to_json(const Matrix<S>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(scalar_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.dim()}, {"entries", std::move(rows)}};
}

template <Scalar S>
Matrix<S> matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw std::invalid_argument("malformed matrix: expected {\"dim\": n, \"entries\": [[...]]}");
    }
    if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer()) {
        throw std::invalid_argument("malformed matrix: \"dim\" must be a nonnegative integer");
    }
    const std::size_t n = j["dim"].get<std::size_t>();
    const Json& rows = j["entries"];
    if (!rows.is_array() || rows.size() != n) {
        throw std::invalid_argument("malformed matrix: entry rows do not match \"dim\"");
    }
    Matrix<S> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) {
            throw std::invalid_argument("malformed matrix: entry rows do not match \"dim\"");
        }
        for (std::size_t k = 0; k < n; ++k) scalar_from_json(rows[i][k], m(i, k));
    }
    return m;
}

/// sigma, monic coefficients low-to-high, and the recursion trace sequence;
/// per-step identity verdicts only when asked for.
template <Scalar S>
Json charpoly_to_json(const charpoly::CharPolyResult<S>& r, bool include_lemma) {
    Json j;
    j["sigma"] = vector_to_json(r.sigma.values);
    j["coefficients"] = vector_to_json(r.coefficients.coeffs);
    j["trace_sequence"] = vector_to_json(r.trace_sequence);
    if (include_lemma) j["trace_identity_ok"] = r.trace_identity_ok;
    j["conditioning_warning"] = r.conditioning_warning;
    return j;
}

Json spectral_to_json(const matfunc::SpectralData& s, bool include_covariants);

Json estimate_to_json(const mclab::EstimateRecord& r, bool emit_replicates);

std::string estimate_csv_header();
std::string estimate_csv_row(const mclab::EstimateRecord& r);

/// FNV-1a, 64-bit; the hex form is 16 lowercase digits.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

/// Whole-file read/write. A missing or unreadable input is an input error
/// (std::invalid_argument); a failed write is std::runtime_error.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// "YYYY-MM-DDTHH:MM:SSZ", current UTC time.
std::string iso8601_utc_now();

}  // namespace girard::io
