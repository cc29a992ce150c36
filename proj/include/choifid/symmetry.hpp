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

#ifndef CHOIFID_SYMMETRY_HPP
#define CHOIFID_SYMMETRY_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "choifid/channel.hpp"
#include "choifid/cmat.hpp"
#include "choifid/eig.hpp"

namespace choifid {

/// Flip (swap) operator on H_n (x) H_n: F |phi psi> = |psi phi>.
/// Real symmetric permutation matrix with F^2 = I and Tr F = n.
inline CMat flip(std::size_t n) {
    CMat f(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f(i * n + j, j * n + i) = 1.0;
    return f;
}

/// Projector onto the symmetric subspace, P_S = (I + F)/2, rank n(n+1)/2.
inline CMat sym_projector(std::size_t n) {
    CMat p = flip(n);
    for (std::size_t i = 0; i < n * n; ++i) {
        for (std::size_t j = 0; j < n * n; ++j) p(i, j) *= 0.5;
        p(i, i) += 0.5;
    }
    return p;
}

/// |psi+> = (1/sqrt(n)) sum_j |jj>
inline PureState max_entangled(std::size_t n) {
    CVec v(n * n, cdouble(0.0, 0.0));
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) v[j * n + j] = a;
    return PureState{n, std::move(v)};
}

inline std::size_t sym_dimension(std::size_t n) { return n * (n + 1) / 2; }

/// Orthonormal basis of the symmetric subspace as columns of an
/// n^2 x n(n+1)/2 matrix: |ii>, then (|ij> + |ji>)/sqrt(2) for i < j.
inline CMat sym_basis(std::size_t n) {
    CMat b(n * n, sym_dimension(n));
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) b(i * n + i, col++) = 1.0;
    const double rt = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            b(i * n + j, col) = rt;
            b(j * n + i, col) = rt;
            ++col;
        }
    return b;
}

/// The operator K = P_S (T (x) id)(C) P_S that completely determines the
/// gate fidelity of the map behind C. Stored at full n^2 x n^2 size.
struct Compression {
    std::size_t n = 0;
    CMat k;
};

inline Compression compression(const Choi& c) {
    const CMat ps = sym_projector(c.n);
    CMat k = ps * partial_transpose(c.mat, c.n, Subsystem::first) * ps;
    return Compression{c.n, std::move(k)};
}

/// Spectrum of a compression restricted to its symmetric support: the
/// n(n+1)/2 eigenvalues left after discarding the n(n-1)/2 structural zeros.
/// `vectors` holds the matching eigenvectors lifted back to H_n (x) H_n.
struct SymSpectrum {
    std::vector<double> eigenvalues;  // descending
    CMat vectors;                     // n^2 x n(n+1)/2
};

inline SymSpectrum sym_spectrum(const Compression& comp, double tol = 1e-9) {
    const CMat basis = sym_basis(comp.n);
    CMat block = basis.dagger() * comp.k * basis;
    EigDecomp eig = herm_eig(block, tol);
    SymSpectrum out;
    out.eigenvalues = std::move(eig.eigenvalues);
    out.vectors = basis * eig.eigenvectors;
    return out;
}

}  // namespace choifid

#endif  // CHOIFID_SYMMETRY_HPP
