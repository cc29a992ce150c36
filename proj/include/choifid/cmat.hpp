/*
   Copyright 2026 The choifid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CHOIFID_CMAT_HPP
#define CHOIFID_CMAT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace choifid {

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;

/// Dense complex matrix, row-major. The single numeric carrier for
/// operators, Choi matrices, projectors and states-as-operators.
class CMat {
public:
    CMat() = default;

    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cdouble(0.0, 0.0)) {}

    CMat(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("CMat: entry count does not match shape");
    }

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMat zero(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cdouble>& data() const { return data_; }
    std::vector<cdouble>& data() { return data_; }

    CMat& operator+=(const CMat& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    CMat& operator-=(const CMat& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    CMat& operator*=(cdouble s) {
        for (auto& e : data_) e *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { a += b; return a; }
    friend CMat operator-(CMat a, const CMat& b) { a -= b; return a; }
    friend CMat operator*(cdouble s, CMat a) { a *= s; return a; }
    friend CMat operator*(CMat a, cdouble s) { a *= s; return a; }
    friend CMat operator*(double s, CMat a) { a *= cdouble(s, 0.0); return a; }
    friend CMat operator*(CMat a, double s) { a *= cdouble(s, 0.0); return a; }

    friend CMat operator-(const CMat& a) {
        CMat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = -a.data_[i];
        return r;
    }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("CMat: inner dimensions do not match");
        CMat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cdouble aik = a(i, k);
                if (aik == cdouble(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        }
        return r;
    }

    CMat transpose() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    CMat conjugate() const {
        CMat r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = std::conj(data_[i]);
        return r;
    }

    CMat dagger() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cdouble trace() const {
        cdouble t(0.0, 0.0);
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& e : data_) s += std::norm(e);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& e : data_) m = std::max(m, std::abs(e));
        return m;
    }

    bool all_finite() const {
        for (const auto& e : data_)
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
        return true;
    }

    bool is_hermitian(double tol = 1e-10) const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    bool is_symmetric(double tol = 1e-10) const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        return true;
    }

private:
    void require_same_shape(const CMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CMat: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

inline double frobenius_distance(const CMat& a, const CMat& b) { return (a - b).frobenius_norm(); }

enum class Subsystem { first, second };

/// Kronecker (tensor) product, size (ra*rb) x (ca*cb).
inline CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cdouble v = a(ia, ja);
            if (v == cdouble(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
        }
    return r;
}

inline void require_bipartite(const CMat& m, std::size_t n) {
    if (!m.square() || m.rows() != n * n)
        throw std::invalid_argument("expected an n^2 x n^2 matrix on H_n (x) H_n");
}

/// Trace out one tensor factor of an operator on H_n (x) H_n.
/// Composite index convention: row (i,j) -> i*n + j, first factor i.
inline CMat partial_trace(const CMat& m, std::size_t n, Subsystem sys) {
    require_bipartite(m, n);
    CMat r(n, n);
    if (sys == Subsystem::first) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                cdouble s(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) s += m(i * n + j, i * n + l);
                r(j, l) = s;
            }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                cdouble s(0.0, 0.0);
                for (std::size_t j = 0; j < n; ++j) s += m(i * n + j, k * n + j);
                r(i, k) = s;
            }
    }
    return r;
}

/// Transpose one tensor factor: (T (x) id) or (id (x) T). Involution.
inline CMat partial_transpose(const CMat& m, std::size_t n, Subsystem sys) {
    require_bipartite(m, n);
    CMat r(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    if (sys == Subsystem::first)
                        r(k * n + j, i * n + l) = m(i * n + j, k * n + l);
                    else
                        r(i * n + l, k * n + j) = m(i * n + j, k * n + l);
                }
    return r;
}

// --- small vector helpers ---

inline CVec kron(const CVec& a, const CVec& b) {
    CVec r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

/// <a|b>, conjugate-linear in the first argument.
inline cdouble vdot(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vdot: length mismatch");
    cdouble s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double vnorm(const CVec& a) { return std::sqrt(std::abs(vdot(a, a))); }

inline CVec mat_vec(const CMat& m, const CVec& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_vec: size mismatch");
    CVec r(m.rows(), cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cdouble s(0.0, 0.0);
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

/// <v|M|v>
inline cdouble expectation(const CMat& m, const CVec& v) { return vdot(v, mat_vec(m, v)); }

/// |v><v|
inline CMat outer(const CVec& v) {
    CMat r(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = v[i] * std::conj(v[j]);
    return r;
}

inline CVec basis_vector(std::size_t n, std::size_t k) {
    CVec v(n, cdouble(0.0, 0.0));
    v[k] = 1.0;
    return v;
}

}  // namespace choifid

#endif  // CHOIFID_CMAT_HPP
