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

#ifndef CHOIFID_S1NORM_HPP
#define CHOIFID_S1NORM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include "choifid/cmat.hpp"
#include "choifid/channel.hpp"
#include "choifid/eig.hpp"
#include "choifid/sampling.hpp"
#include "choifid/sdp.hpp"

namespace choifid {

/// ||X||_S(1) = sup over product unit vectors of <phi psi| X |phi psi>,
/// reported as a bracket [lower, upper]. `exact` only for 2 (x) 2, where
/// the PPT cone coincides with the separable states.
struct S1Result {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<std::pair<PureState, PureState>> witness;  // (phi, psi) achieving `lower`
    bool exact = false;
};

namespace detail {

/// Enforce the PSD precondition: eigenvalues in [-tol, 0) are clamped to
/// zero, anything below -tol is rejected.
inline CMat require_psd(const CMat& x, double tol = 1e-9) {
    if (!x.square()) throw std::invalid_argument("s1norm: operator must be square");
    if (!x.is_hermitian(1e-9)) throw std::invalid_argument("s1norm: operator must be Hermitian");
    EigDecomp eig = herm_eig(x, 1e-9);
    if (eig.eigenvalues.back() < -tol) throw std::invalid_argument("s1norm: operator is not PSD within tolerance");
    if (eig.eigenvalues.back() >= 0.0) return x;
    const std::size_t m = x.rows();
    CMat r(m, m);
    for (std::size_t e = 0; e < m; ++e) {
        const double lam = std::max(eig.eigenvalues[e], 0.0);
        if (lam == 0.0) continue;
        for (std::size_t i = 0; i < m; ++i) {
            const cdouble vi = lam * eig.eigenvectors(i, e);
            for (std::size_t j = 0; j < m; ++j) r(i, j) += vi * std::conj(eig.eigenvectors(j, e));
        }
    }
    return r;
}

/// Contraction <. psi| X |. psi> -> n x n Hermitian operator acting on phi.
inline CMat contract_second(const CMat& x, std::size_t n, const CVec& psi) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            cdouble s(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) s += std::conj(psi[j]) * x(i * n + j, k * n + l) * psi[l];
            m(i, k) = s;
        }
    return m;
}

/// Contraction <phi .| X |phi .> -> n x n Hermitian operator acting on psi.
inline CMat contract_first(const CMat& x, std::size_t n, const CVec& phi) {
    CMat m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            cdouble s(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) s += std::conj(phi[i]) * x(i * n + j, k * n + l) * phi[k];
            m(j, l) = s;
        }
    return m;
}

inline CVec top_eigenvector(const CMat& h) {
    EigDecomp eig = herm_eig(h, 1e-8);
    CVec v(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) v[i] = eig.eigenvectors(i, 0);
    return v;
}

}  // namespace detail

/// Exact S(1)-norm on 2 (x) 2 via the PPT semidefinite program
///   max Tr(x rho)  s.t.  rho >= 0, (id (x) T)(rho) >= 0, Tr(rho) = 1.
inline S1Result s1_exact_qubit(const CMat& x) {
    if (x.rows() != 4 || x.cols() != 4) throw std::invalid_argument("s1_exact_qubit: expected a 4x4 operator");
    const CMat xp = detail::require_psd(x);
    SdpInstance inst{xp, {2, 2}, 1e-9, 200};
    SdpResult r = solve(inst);
    if (!r.converged) throw std::runtime_error("s1_exact_qubit: SDP did not reach the requested gap");
    S1Result out;
    out.value = r.primal_value;
    out.lower = r.primal_value;
    out.upper = r.dual_bound;
    out.exact = true;
    return out;
}

/// Upper bound on the S(1)-norm from the level-1 PPT relaxation: the dual
/// certificate of max Tr(x rho) over PPT states. Coincides with the exact
/// value for n = 2.
inline double s1_ppt_upper(const CMat& x, std::size_t n) {
    if (x.rows() != n * n || x.cols() != n * n)
        throw std::invalid_argument("s1_ppt_upper: operator size does not match dimension");
    const CMat xp = detail::require_psd(x);
    SdpInstance inst{xp, {n, n}, 1e-9, 200};
    SdpResult r = solve(inst);
    if (!r.converged && !(r.dual_bound < std::numeric_limits<double>::infinity()))
        throw std::runtime_error("s1_ppt_upper: SDP produced no certificate");
    return r.dual_bound;
}

/// Lower bound by alternating maximization over product states: fixing psi,
/// the optimal phi is the top eigenvector of <. psi| x |. psi>, and
/// symmetrically. The objective never decreases; best over restarts wins,
/// ties broken by lowest restart index.
inline S1Result s1_seesaw_lower(const CMat& x, std::size_t n, std::size_t restarts = 32,
                                std::size_t iters = 200, std::uint64_t seed = 0) {
    if (x.rows() != n * n || x.cols() != n * n)
        throw std::invalid_argument("s1_seesaw_lower: operator size does not match dimension");
    const CMat xp = detail::require_psd(x);

    S1Result best;
    best.value = -std::numeric_limits<double>::infinity();
    for (std::size_t rs = 0; rs < restarts; ++rs) {
        RngStream rng(seed, rs);
        CVec phi = random_pure_state(n, rng).amplitudes;
        CVec psi = random_pure_state(n, rng).amplitudes;
        double obj = std::real(expectation(xp, kron(phi, psi)));
        CVec arg_phi = phi, arg_psi = psi;
        double restart_best = obj;
        for (std::size_t it = 0; it < iters; ++it) {
            phi = detail::top_eigenvector(detail::contract_second(xp, n, psi));
            psi = detail::top_eigenvector(detail::contract_first(xp, n, phi));
            const double next = std::real(expectation(xp, kron(phi, psi)));
            if (next > restart_best) {
                restart_best = next;
                arg_phi = phi;
                arg_psi = psi;
            }
            const double gain = next - obj;
            obj = next;
            if (gain < 1e-12) break;
        }
        if (restart_best > best.value) {
            best.value = restart_best;
            best.witness = std::make_pair(PureState{n, std::move(arg_phi)}, PureState{n, std::move(arg_psi)});
        }
    }
    best.lower = best.value;
    best.upper = std::numeric_limits<double>::infinity();
    best.exact = false;
    return best;
}

}  // namespace choifid

#endif  // CHOIFID_S1NORM_HPP
