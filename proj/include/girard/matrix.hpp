#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "girard/scalar.hpp"

namespace girard {

/// Dense square matrix over a Scalar, row-major storage.
/// Products use the classical O(n^3) triple loop; no blocking or fast
/// multiplication, the workloads are desk-scale and exactness comes first.
template <Scalar S>
class Matrix {
public:
    Matrix() = default;

    explicit Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim, S{}) {}

    Matrix(std::size_t dim, std::vector<S> entries) : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw std::invalid_argument("matrix entries do not form a square of the given dimension");
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = scalar_traits<S>::from_int(1);
        return m;
    }

    static Matrix diagonal(const std::vector<S>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    S& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    const std::vector<S>& entries() const { return entries_; }

    S trace() const {
        S t{};
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
        const std::size_t n = a.dim_;
        Matrix out(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                S acc{};
                for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
                out(i, j) = acc;
            }
        }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix out = a;
        for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
        Matrix out = a;
        for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
        return out;
    }

    Matrix scaled(const S& c) const {
        Matrix out = *this;
        for (S& v : out.entries_) v *= c;
        return out;
    }

    /// this + c * I, in place.
    Matrix& add_scaled_identity(const S& c) {
        for (std::size_t i = 0; i < dim_; ++i) (*this)(i, i) += c;
        return *this;
    }

    bool all_finite() const {
        for (const S& v : entries_) {
            if (!scalar_traits<S>::finite(v)) return false;
        }
        return true;
    }

    typename scalar_traits<S>::magnitude_type max_magnitude() const {
        typename scalar_traits<S>::magnitude_type best{};
        for (const S& v : entries_) {
            auto m = scalar_traits<S>::magnitude(v);
            if (m > best) best = m;
        }
        return best;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<S> entries_;
};

}  // namespace girard
