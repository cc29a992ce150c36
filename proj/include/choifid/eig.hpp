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

#ifndef CHOIFID_EIG_HPP
#define CHOIFID_EIG_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "choifid/cmat.hpp"

namespace choifid {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues sorted descending,
/// eigenvectors are the matching orthonormal columns of `eigenvectors`.
/// Within a degenerate cluster the basis is an arbitrary orthonormal one.
struct EigDecomp {
    std::vector<double> eigenvalues;
    CMat eigenvectors;
};

namespace detail {

// One cyclic-Jacobi rotation in the (p,q) plane of a Hermitian matrix.
// The pivot a_pq = r e^{i phi} is first made real by a diagonal phase,
// then annihilated by the classical real rotation; the combined unitary is
// [[c, s e^{i phi}], [-s e^{-i phi}, c]] on the (p,q) coordinates.
inline void jacobi_rotate(CMat& a, CMat& v, std::size_t p, std::size_t q) {
    const std::size_t m = a.rows();
    const cdouble apq = a(p, q);
    const double r = std::abs(apq);
    const cdouble phase = apq / r;
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    const double sign = tau >= 0.0 ? 1.0 : -1.0;
    const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const cdouble w = (t * c) * phase;
    const cdouble wc = std::conj(w);

    for (std::size_t k = 0; k < m; ++k) {  // A <- A U (columns p, q)
        const cdouble ap = a(k, p), aq = a(k, q);
        a(k, p) = c * ap - wc * aq;
        a(k, q) = w * ap + c * aq;
    }
    for (std::size_t k = 0; k < m; ++k) {  // A <- U^dag A (rows p, q)
        const cdouble ap = a(p, k), aq = a(q, k);
        a(p, k) = c * ap - w * aq;
        a(q, k) = wc * ap + c * aq;
    }
    for (std::size_t k = 0; k < m; ++k) {  // accumulate V <- V U
        const cdouble vp = v(k, p), vq = v(k, q);
        v(k, p) = c * vp - wc * vq;
        v(k, q) = w * vp + c * vq;
    }
}

inline double offdiag_frobenius(const CMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices. Input is symmetrized
/// as (h + h^dag)/2 after the Hermiticity check; sweeps stop once the
/// off-diagonal Frobenius mass falls below 1e-14 relative to the matrix scale.
inline EigDecomp herm_eig(const CMat& h, double tol = 1e-10) {
    if (!h.square()) throw std::invalid_argument("herm_eig: matrix must be square");
    if (!h.is_hermitian(tol)) throw std::invalid_argument("herm_eig: matrix is not Hermitian within tolerance");

    const std::size_t m = h.rows();
    CMat a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    CMat v = CMat::identity(m);

    const double threshold = 1e-14 * std::max(1.0, a.frobenius_norm());
    const double skip = threshold / static_cast<double>(m * m);
    bool converged = m < 2;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (detail::offdiag_frobenius(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                if (std::abs(a(p, q)) > skip) detail::jacobi_rotate(a, v, p, q);
    }
    if (!converged && detail::offdiag_frobenius(a) > threshold)
        throw std::runtime_error("herm_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    EigDecomp out;
    out.eigenvalues.resize(m);
    out.eigenvectors = CMat(m, m);
    for (std::size_t c = 0; c < m; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t k = 0; k < m; ++k) out.eigenvectors(k, c) = v(k, order[c]);
    }
    return out;
}

/// PSD square root via spectral decomposition. Eigenvalues in [-1e-8, 0)
/// are clamped to zero; anything below -1e-8 is rejected.
inline CMat sqrtm_psd(const CMat& p, double tol = 1e-10) {
    EigDecomp eig = herm_eig(p, tol);
    const std::size_t m = p.rows();
    CMat r(m, m);
    for (std::size_t e = 0; e < m; ++e) {
        double lam = eig.eigenvalues[e];
        if (lam < -1e-8) throw std::invalid_argument("sqrtm_psd: matrix has a negative eigenvalue");
        if (lam < 0.0) lam = 0.0;
        const double s = std::sqrt(lam);
        for (std::size_t i = 0; i < m; ++i) {
            const cdouble vi = s * eig.eigenvectors(i, e);
            for (std::size_t j = 0; j < m; ++j) r(i, j) += vi * std::conj(eig.eigenvectors(j, e));
        }
    }
    return r;
}

/// Takagi factorization A = U diag(sigma) U^T of a complex symmetric matrix.
/// `coefficients` are the singular values of A, sorted descending.
struct TakagiDecomp {
    CMat factors;                      // unitary U, columns are the Takagi vectors
    std::vector<double> coefficients;  // nonnegative, descending
};

/// Computed through the real symmetric embedding
///   M = [[Re A, Im A], [Im A, -Re A]],
/// whose spectrum is {+sigma_j} u {-sigma_j}; an eigenvector (x; y) of M
/// with eigenvalue sigma >= 0 yields the Takagi vector u = x + i y, since
/// A conj(u) = sigma u. Unlike the A^dag A reduction this loses no accuracy
/// on small singular values, so rank-deficient inputs reconstruct to 1e-10.
/// Near-zero modes are replaced by a Gram-Schmidt completion to keep U unitary.
inline TakagiDecomp takagi(const CMat& s, double tol = 1e-10) {
    if (!s.square()) throw std::invalid_argument("takagi: matrix must be square");
    if (!s.is_symmetric(tol)) throw std::invalid_argument("takagi: matrix is not complex symmetric within tolerance");

    const std::size_t n = s.rows();
    CMat m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cdouble a = 0.5 * (s(i, j) + s(j, i));  // exact symmetrization
            m(i, j) = a.real();
            m(i, j + n) = a.imag();
            m(i + n, j) = a.imag();
            m(i + n, j + n) = -a.real();
        }

    EigDecomp eig = herm_eig(m, tol);

    TakagiDecomp out;
    out.factors = CMat(n, n);
    out.coefficients.resize(n);
    const double sigma_max = std::max(eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues[0], 0.0);
    const double zero_tol = 1e-12 * std::max(1.0, sigma_max);

    std::vector<CVec> columns;
    columns.reserve(n);
    std::size_t kept = 0;
    for (std::size_t e = 0; e < n; ++e) {
        out.coefficients[e] = std::max(eig.eigenvalues[e], 0.0);
        if (out.coefficients[e] <= zero_tol) break;
        CVec u(n);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = cdouble(eig.eigenvectors(i, e).real(), eig.eigenvectors(i + n, e).real());
        columns.push_back(std::move(u));
        ++kept;
    }
    for (std::size_t e = kept; e < n; ++e) out.coefficients[e] = std::max(eig.eigenvalues[e], 0.0);

    // Complete the zero block with an orthonormal complement: greedily take
    // the candidate (remaining eigenvector lifts, then basis vectors) with
    // the largest residual against the accepted columns.
    while (columns.size() < n) {
        CVec best;
        double best_norm = 0.0;
        for (std::size_t cand = 0; cand < 2 * n; ++cand) {
            CVec u(n);
            if (cand < n) {
                for (std::size_t i = 0; i < n; ++i)
                    u[i] = cdouble(eig.eigenvectors(i, cand).real(), eig.eigenvectors(i + n, cand).real());
            } else {
                u = basis_vector(n, cand - n);
            }
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& c : columns) {
                    const cdouble ov = vdot(c, u);
                    for (std::size_t i = 0; i < n; ++i) u[i] -= ov * c[i];
                }
            const double nrm = vnorm(u);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(u);
            }
        }
        if (best_norm < 1e-6) throw std::runtime_error("takagi: failed to complete unitary factor");
        for (auto& x : best) x /= best_norm;
        columns.push_back(std::move(best));
    }

    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) out.factors(i, c) = columns[c][i];
    return out;
}

}  // namespace choifid

#endif  // CHOIFID_EIG_HPP
