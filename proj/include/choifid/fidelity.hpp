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

#ifndef CHOIFID_FIDELITY_HPP
#define CHOIFID_FIDELITY_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>

#include "choifid/channel.hpp"
#include "choifid/cmat.hpp"
#include "choifid/eig.hpp"
#include "choifid/s1norm.hpp"
#include "choifid/symmetry.hpp"

namespace choifid {

/// F_E(phi) = <phi| E(|phi><phi|) |phi> = <phi phi| (T (x) id)(C) |phi phi>.
/// Defined for any linear map; lands in [0, 1] when the map is a channel.
inline double gate_fidelity_at(const Choi& c, const PureState& phi) {
    if (phi.n != c.n || phi.amplitudes.size() != c.n)
        throw std::invalid_argument("gate_fidelity_at: dimension mismatch");
    // moving the transpose onto the state: <conj(phi) phi| C |conj(phi) phi>
    CVec w(c.n * c.n);
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = 0; j < c.n; ++j) w[i * c.n + j] = std::conj(phi.amplitudes[i]) * phi.amplitudes[j];
    return std::real(expectation(c.mat, w));
}

/// Uhlmann fidelity F(rho, sigma) = Tr(sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.n != sigma.n) throw std::invalid_argument("state_fidelity: dimension mismatch");
    const CMat s = sqrtm_psd(rho.mat, 1e-8);
    const CMat inner = s * sigma.mat * s;
    EigDecomp eig = herm_eig(inner, 1e-8);
    double sum = 0.0;
    for (double lam : eig.eigenvalues) sum += std::sqrt(std::max(lam, 0.0));
    return sum * sum;
}

namespace detail {

inline void require_channel(const Choi& c, double tol = 1e-8) {
    const ValidationReport rep = validate(c, tol);
    if (!rep.cp || !rep.tp) throw std::invalid_argument("expected a CP trace-preserving channel");
}

inline void require_kraus_channel(const KrausSet& k, double tol = 1e-8) {
    CMat s(k.n, k.n);
    for (const auto& op : k.ops) {
        if (op.rows() != k.n || op.cols() != k.n)
            throw std::invalid_argument("Kraus operator has wrong shape");
        s += op.dagger() * op;
    }
    if ((s - CMat::identity(k.n)).max_abs() > tol)
        throw std::invalid_argument("Kraus set is not trace-preserving");
}

}  // namespace detail

/// Average gate fidelity from Kraus operators:
/// (n + sum_i |Tr E_i|^2) / (n (n + 1)).
inline double average_fidelity_kraus(const KrausSet& k) {
    detail::require_kraus_channel(k);
    double sum = 0.0;
    for (const auto& op : k.ops) sum += std::norm(op.trace());
    const double n = static_cast<double>(k.n);
    return (n + sum) / (n * (n + 1.0));
}

/// Average gate fidelity from the Choi matrix:
/// 2/(n(n+1)) Tr(P_S (T (x) id)(C) P_S) -- an average over the symmetric subspace.
inline double average_fidelity_choi(const Choi& c) {
    detail::require_channel(c);
    const CMat pt = partial_transpose(c.mat, c.n, Subsystem::first);
    const CMat ps = sym_projector(c.n);
    const double tr = (pt * ps).trace().real();
    const double n = static_cast<double>(c.n);
    return 2.0 * tr / (n * (n + 1.0));
}

/// chi_{0,0} = <psi+| C |psi+> / n; equals (2/n^2) Tr(K) - 1/n for channels.
inline double chi00(const Choi& c) {
    const PureState psi = max_entangled(c.n);
    return std::real(expectation(c.mat, psi.amplitudes)) / static_cast<double>(c.n);
}

/// Two maps have identical gate fidelity iff their compressions coincide.
/// Tolerance is relative Frobenius with floor 1.
inline bool equal_fidelity(const Choi& cq, const Choi& cr, double tol) {
    if (cq.n != cr.n) throw std::invalid_argument("equal_fidelity: dimension mismatch");
    const Compression kq = compression(cq);
    const Compression kr = compression(cr);
    return frobenius_distance(kq.k, kr.k) <= tol * std::max(1.0, kq.k.frobenius_norm());
}

/// If F is constant, returns the constant c (then K = c P_S); empty otherwise.
inline std::optional<double> constant_fidelity(const Choi& c, double tol) {
    const Compression comp = compression(c);
    const double n = static_cast<double>(c.n);
    const double cval = 2.0 * comp.k.trace().real() / (n * (n + 1.0));
    const CMat residual = comp.k - cval * sym_projector(c.n);
    if (residual.frobenius_norm() <= tol * std::max(1.0, comp.k.frobenius_norm())) return cval;
    return std::nullopt;
}

/// Necessary condition for constant gate fidelity: the middle n eigenvalues
/// of (T (x) id)(C) must all agree (non-empty rank-n(n+1)/2 numerical range).
inline bool constant_fidelity_necessary(const Choi& c, double tol) {
    EigDecomp eig = herm_eig(partial_transpose(c.mat, c.n, Subsystem::first), 1e-9);
    const std::size_t lo = c.n * (c.n - 1) / 2;       // first middle index, 0-based
    const std::size_t hi = c.n * (c.n + 1) / 2 - 1;   // last middle index
    return eig.eigenvalues[lo] - eig.eigenvalues[hi] <= tol;
}

enum class MinFidMethod { sdp_exact, ppt_and_seesaw, grid };

/// Minimum gate fidelity with a certified bracket.
struct FidelityReport {
    double average = 0.0;
    double lambda1 = 0.0;  // maximal symmetric-support eigenvalue of K
    double minimum = 0.0;
    double lower = 0.0;    // certified interval on the minimum
    double upper = 0.0;
    MinFidMethod method = MinFidMethod::sdp_exact;
};

inline constexpr std::uint64_t kDefaultSeesawSeed = 0x9E3779B97F4A7C15ull;
inline constexpr double kBlochGridStep = std::numbers::pi / 1000.0;

/// Dense scan of the gate fidelity over the Bloch sphere (n = 2 only).
/// An independent route to the minimum; resolution-limited, not certified.
inline double bloch_grid_min(const Choi& c, double step = kBlochGridStep) {
    if (c.n != 2) throw std::invalid_argument("bloch_grid_min: only defined for qubit channels");
    const CMat m = partial_transpose(c.mat, 2, Subsystem::first);
    const std::size_t n_theta = static_cast<std::size_t>(std::numbers::pi / step) + 1;
    const std::size_t n_phi = static_cast<std::size_t>(2.0 * std::numbers::pi / step);
    std::vector<cdouble> phase(n_phi);
    for (std::size_t p = 0; p < n_phi; ++p) {
        const double a = step * static_cast<double>(p);
        phase[p] = cdouble(std::cos(a), std::sin(a));
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t <= n_theta; ++t) {
        const double theta = std::min(step * static_cast<double>(t), std::numbers::pi);
        const double ca = std::cos(0.5 * theta);
        const double sa = std::sin(0.5 * theta);
        for (std::size_t p = 0; p < n_phi; ++p) {
            const cdouble b = sa * phase[p];
            const cdouble w[4] = {ca * ca, ca * b, b * ca, b * b};  // phi (x) phi
            double val = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) val += std::real(std::conj(w[i]) * m(i, j) * w[j]);
            best = std::min(best, val);
        }
        if (theta >= std::numbers::pi) break;
    }
    return best;
}

/// F_min = lambda_1 - || lambda_1 P_S - K ||_S(1). Exact via the PPT
/// semidefinite program for n = 2; a certified [PPT-upper, see-saw-lower]
/// interval for n >= 3; dense Bloch-sphere scan available at n = 2 as an
/// independent route.
inline FidelityReport min_gate_fidelity(const Choi& c, MinFidMethod method,
                                        std::uint64_t seed = kDefaultSeesawSeed) {
    detail::require_channel(c);
    const Compression comp = compression(c);
    const SymSpectrum spec = sym_spectrum(comp);
    const double n = static_cast<double>(c.n);

    FidelityReport rep;
    rep.method = method;
    rep.lambda1 = spec.eigenvalues.front();
    rep.average = 2.0 * comp.k.trace().real() / (n * (n + 1.0));

    const CMat x = rep.lambda1 * sym_projector(c.n) - comp.k;

    switch (method) {
        case MinFidMethod::sdp_exact: {
            if (c.n != 2) throw std::invalid_argument("min_gate_fidelity: exact SDP method requires n = 2");
            const S1Result s1 = s1_exact_qubit(x);
            rep.minimum = rep.lambda1 - s1.value;
            rep.lower = rep.lambda1 - s1.upper;
            rep.upper = rep.lambda1 - s1.lower;
            break;
        }
        case MinFidMethod::ppt_and_seesaw: {
            const double up = s1_ppt_upper(x, c.n);
            const S1Result low = s1_seesaw_lower(x, c.n, 32, 200, seed);
            rep.minimum = rep.lambda1 - low.value;
            rep.lower = rep.lambda1 - up;
            rep.upper = rep.lambda1 - low.value;
            break;
        }
        case MinFidMethod::grid: {
            rep.minimum = bloch_grid_min(c);
            rep.lower = rep.minimum - 1e-4;  // scan resolution, not a certificate
            rep.upper = rep.minimum;
            break;
        }
    }
    return rep;
}

/// Eigenvalue/Schmidt bounds on the minimum gate fidelity: with symmetric
/// spectrum lambda_1 >= ... >= lambda_N (N = n(n+1)/2) and alpha_j the
/// maximal Schmidt coefficient of the j-th eigenvector,
///   max_j (l1 - lj) aj^2  <=  l1 - F_min  <=  min(l1 - lN, sum_j (l1 - lj) aj^2).
inline std::pair<double, double> min_fid_bounds(const Choi& c) {
    detail::require_channel(c);
    const Compression comp = compression(c);
    const SymSpectrum spec = sym_spectrum(comp);
    const double l1 = spec.eigenvalues.front();
    const std::size_t nsym = spec.eigenvalues.size();

    double lower_gap = 0.0, sum_gap = 0.0;
    for (std::size_t j = 0; j < nsym; ++j) {
        CMat coeff(c.n, c.n);
        for (std::size_t a = 0; a < c.n; ++a)
            for (std::size_t b = 0; b < c.n; ++b) {
                const cdouble v = 0.5 * (spec.vectors(a * c.n + b, j) + spec.vectors(b * c.n + a, j));
                coeff(a, b) = v;
            }
        const double alpha = takagi(coeff).coefficients.front();
        const double gap = (l1 - spec.eigenvalues[j]) * alpha * alpha;
        lower_gap = std::max(lower_gap, gap);
        sum_gap += gap;
    }
    const double upper_gap = std::min(l1 - spec.eigenvalues.back(), sum_gap);
    return {l1 - upper_gap, l1 - lower_gap};
}

/// Witness for equal gate fidelity of qubit channels: r >= 0 and a unital
/// channel E with C_Q - C_R = r (C_E - C_{E^dag}).
struct QubitDecomposition {
    double r = 0.0;
    Choi e;        // unital quantum channel
    cdouble c1;    // purely imaginary
    cdouble c2;
};

/// Extracts (r, E) from D = (T (x) id)(C_Q - C_R), which for trace-preserving
/// qubit maps with equal fidelity must have the two-parameter form
///   [[0, c2*, -c2*, 0], [c2, 0, 2 c1, c2*], [-c2, 2 c1*, 0, -c2*], [0, c2, -c2, 0]].
/// r is chosen at its lower limit 2|c2| + 2|c1|; D = 0 yields r = 0 with the
/// identity channel.
inline QubitDecomposition decompose_qubit(const Choi& cq, const Choi& cr, double tol = 1e-8) {
    if (cq.n != 2 || cr.n != 2) throw std::invalid_argument("decompose_qubit: defined for n = 2 only");
    detail::require_channel(cq);
    detail::require_channel(cr);
    if (!equal_fidelity(cq, cr, 1e-8))
        throw std::invalid_argument("decompose_qubit: channels do not have equal gate fidelity");

    const CMat d = partial_transpose(cq.mat - cr.mat, 2, Subsystem::first);
    const cdouble c2 = std::conj(d(0, 1));
    const cdouble c1_raw = d(1, 2) / 2.0;
    if (std::abs(c1_raw.real()) > tol)
        throw std::invalid_argument("decompose_qubit: difference violates the trace-preserving pattern");
    const cdouble c1(0.0, c1_raw.imag());

    CMat pattern(4, 4);
    const cdouble c2c = std::conj(c2), c1c = std::conj(c1);
    pattern(0, 1) = c2c;  pattern(0, 2) = -c2c;
    pattern(1, 0) = c2;   pattern(1, 2) = 2.0 * c1;  pattern(1, 3) = c2c;
    pattern(2, 0) = -c2;  pattern(2, 1) = 2.0 * c1c; pattern(2, 3) = -c2c;
    pattern(3, 1) = c2;   pattern(3, 2) = -c2;
    if (frobenius_distance(d, pattern) > tol)
        throw std::invalid_argument("decompose_qubit: difference violates the equal-fidelity pattern");

    const double r = 2.0 * std::abs(c2) + 2.0 * std::abs(c1);
    if (r < 1e-14) return QubitDecomposition{0.0, identity_channel(2), cdouble(0.0, 0.0), cdouble(0.0, 0.0)};

    CMat ce(4, 4);
    const double half = 0.5;
    ce(0, 0) = half; ce(1, 1) = half; ce(2, 2) = half; ce(3, 3) = half;
    ce(0, 2) = -c2 / r;        ce(0, 3) = c1c / r;
    ce(1, 3) = c2 / r;
    ce(2, 0) = -c2c / r;
    ce(3, 0) = c1 / r;         ce(3, 1) = c2c / r;
    return QubitDecomposition{r, Choi{2, std::move(ce)}, c1, c2};
}

/// Fidelity of E(rho) against rho for a mixed state; by joint concavity it
/// can never drop below the pure-state minimum.
inline double min_fid_mixed_check(const Choi& c, const DensityMatrix& rho) {
    if (rho.n != c.n) throw std::invalid_argument("min_fid_mixed_check: dimension mismatch");
    return state_fidelity(apply(c, rho), rho);
}

}  // namespace choifid

#endif  // CHOIFID_FIDELITY_HPP
