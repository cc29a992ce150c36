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

#ifndef CHOIFID_CHANNEL_HPP
#define CHOIFID_CHANNEL_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "choifid/cmat.hpp"
#include "choifid/eig.hpp"

namespace choifid {

/// Choi matrix C = (id (x) E)(n |psi+><psi+|) of a linear map E on L(H_n).
/// Composite index (i,j) -> i*n + j with the INPUT factor first and the
/// OUTPUT factor second. Consequences of the convention:
///   E completely positive   <=>  C is PSD
///   E trace-preserving      <=>  Tr over the second (output) factor is I
///   E unital                 <=>  Tr over the first (input) factor is I
struct Choi {
    std::size_t n = 0;
    CMat mat;
};

/// Kraus operators {E_i} with E(rho) = sum_i E_i rho E_i^dag.
struct KrausSet {
    std::size_t n = 0;
    std::vector<CMat> ops;
};

struct DensityMatrix {
    std::size_t n = 0;
    CMat mat;
};

struct PureState {
    std::size_t n = 0;
    CVec amplitudes;
};

// Vectorization is row-major: vec(M)[i*n + j] = M(i, j). Under the Choi
// convention above, the eigenvectors of C are the vectorizations of the
// *transposed* Kraus operators.
inline CVec vectorize(const CMat& m) {
    CVec v(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
    return v;
}

inline CMat unvectorize(const CVec& v, std::size_t n) {
    if (v.size() != n * n) throw std::invalid_argument("unvectorize: length mismatch");
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
}

inline Choi choi_from_kraus(const KrausSet& k) {
    const std::size_t n = k.n;
    if (n == 0) throw std::invalid_argument("choi_from_kraus: empty dimension");
    CMat c(n * n, n * n);
    for (const auto& op : k.ops) {
        if (op.rows() != n || op.cols() != n)
            throw std::invalid_argument("choi_from_kraus: Kraus operator has wrong shape");
        const CVec v = vectorize(op.transpose());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == cdouble(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < v.size(); ++j) c(i, j) += v[i] * std::conj(v[j]);
        }
    }
    return Choi{n, std::move(c)};
}

/// Recover Kraus operators from the spectral decomposition of a PSD Choi
/// matrix; eigenvalues below 1e-10 * lambda_max are treated as rank noise.
inline KrausSet kraus_from_choi(const Choi& c, double psd_tol = 1e-8) {
    const std::size_t n = c.n;
    EigDecomp eig = herm_eig(c.mat, psd_tol);
    const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues[0], 0.0);
    KrausSet out{n, {}};
    for (std::size_t e = 0; e < eig.eigenvalues.size(); ++e) {
        const double lam = eig.eigenvalues[e];
        if (lam < -psd_tol) throw std::invalid_argument("kraus_from_choi: Choi matrix is not PSD (map not CP)");
        if (lam <= 1e-10 * std::max(1.0, lmax)) continue;
        CVec v(n * n);
        const double s = std::sqrt(lam);
        for (std::size_t i = 0; i < n * n; ++i) v[i] = s * eig.eigenvectors(i, e);
        out.ops.push_back(unvectorize(v, n).transpose());
    }
    return out;
}

/// E(x) from the Choi matrix: E(x) = Tr_first((x^T (x) I) C).
inline CMat apply_to(const Choi& c, const CMat& x) {
    const std::size_t n = c.n;
    if (x.rows() != n || x.cols() != n) throw std::invalid_argument("apply_to: dimension mismatch");
    CMat r(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            cdouble s(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s += x(i, j) * c.mat(i * n + a, j * n + b);
            r(a, b) = s;
        }
    return r;
}

inline DensityMatrix apply(const Choi& c, const DensityMatrix& rho) {
    if (rho.n != c.n) throw std::invalid_argument("apply: dimension mismatch");
    return DensityMatrix{c.n, apply_to(c, rho.mat)};
}

/// Choi matrix of the dual (Hilbert-Schmidt adjoint) map: C_dual = F C^T F.
inline Choi dual_choi(const Choi& c) {
    const std::size_t n = c.n;
    CMat r(n * n, n * n);
    // F (x)-swaps composite indices: (i,j) -> (j,i); F C^T F permutes both sides.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    r(j * n + i, l * n + k) = c.mat(k * n + l, i * n + j);
    return Choi{n, std::move(r)};
}

struct ValidationReport {
    bool cp = false;
    bool tp = false;
    bool unital = false;
    double min_eigenvalue = 0.0;
};

inline ValidationReport validate(const Choi& c, double tol = 1e-9) {
    if (!c.mat.is_hermitian(tol)) throw std::invalid_argument("validate: Choi matrix is not Hermitian within tolerance");
    EigDecomp eig = herm_eig(c.mat, tol);
    ValidationReport rep;
    rep.min_eigenvalue = eig.eigenvalues.back();
    rep.cp = rep.min_eigenvalue >= -tol;
    rep.tp = (partial_trace(c.mat, c.n, Subsystem::second) - CMat::identity(c.n)).max_abs() <= tol;
    rep.unital = (partial_trace(c.mat, c.n, Subsystem::first) - CMat::identity(c.n)).max_abs() <= tol;
    return rep;
}

// --- stock channels ---

inline Choi identity_channel(std::size_t n) {
    KrausSet k{n, {CMat::identity(n)}};
    return choi_from_kraus(k);
}

/// E(rho) = p rho + (1 - p) Tr(rho) I/n. p = 0 is the completely
/// depolarizing channel; CP for -1/(n^2 - 1) <= p <= 1.
inline Choi depolarizing_channel(std::size_t n, double p) {
    Choi id = identity_channel(n);
    CMat c = p * id.mat + ((1.0 - p) / double(n)) * CMat::identity(n * n);
    return Choi{n, std::move(c)};
}

inline Choi amplitude_damping_channel(double gamma) {
    CMat e0(2, 2), e1(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - gamma);
    e1(0, 1) = std::sqrt(gamma);
    return choi_from_kraus(KrausSet{2, {e0, e1}});
}

}  // namespace choifid

#endif  // CHOIFID_CHANNEL_HPP
