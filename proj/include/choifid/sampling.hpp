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

#ifndef CHOIFID_SAMPLING_HPP
#define CHOIFID_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "choifid/channel.hpp"
#include "choifid/cmat.hpp"

namespace choifid {

/// Counter-based random stream (Philox4x32-10, Salmon et al. SC'11).
/// The 64-bit seed is the Philox key; the stream index occupies the upper
/// half of the 128-bit counter and a per-stream draw counter the lower half,
/// so streams with distinct indices never overlap and a given
/// (seed, stream_index) reproduces the same draws bit-for-bit on any
/// machine and under any thread schedule.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0)
        : seed_(seed), stream_(stream_index) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() {
        std::uint64_t block[2];
        next_block(block);
        return static_cast<double>(block[0] >> 11) * 0x1.0p-53;
    }

    /// Standard complex Gaussian: Re and Im independent N(0,1), produced
    /// as one Box-Muller pair per counter block.
    cdouble normal_pair() {
        std::uint64_t block[2];
        next_block(block);
        const double u1 = (static_cast<double>(block[0] >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(block[1] >> 11) * 0x1.0p-53;          // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return cdouble(r * std::cos(a), r * std::sin(a));
    }

    double normal() { return normal_pair().real(); }

private:
    static void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    void next_block(std::uint64_t out[2]) {
        std::uint32_t c[4] = {static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                              static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        std::uint32_t k[2] = {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k[0] += 0x9E3779B9u;
                k[1] += 0xBB67AE85u;
            }
            std::uint32_t hi0, lo0, hi1, lo1;
            mul_hi_lo(0xD2511F53u, c[0], hi0, lo0);
            mul_hi_lo(0xCD9E8D57u, c[2], hi1, lo1);
            const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
            const std::uint32_t n3 = lo0;
            c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
        }
        ++counter_;
        out[0] = (static_cast<std::uint64_t>(c[1]) << 32) | c[0];
        out[1] = (static_cast<std::uint64_t>(c[3]) << 32) | c[2];
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

/// Ginibre matrix: independent standard complex Gaussian entries, row-major fill order.
inline CMat ginibre(std::size_t rows, std::size_t cols, RngStream& rng) {
    CMat g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.normal_pair();
    return g;
}

/// Haar-distributed unitary: Ginibre draw followed by modified Gram-Schmidt
/// with re-orthogonalization. MGS normalization makes the triangular factor's
/// diagonal real and positive, which is exactly the phase convention Haar needs.
inline CMat haar_unitary(std::size_t d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
    CMat q = ginibre(d, d, rng);
    for (std::size_t j = 0; j < d; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                cdouble ov(0.0, 0.0);
                for (std::size_t i = 0; i < d; ++i) ov += std::conj(q(i, p)) * q(i, j);
                for (std::size_t i = 0; i < d; ++i) q(i, j) -= ov * q(i, p);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw std::runtime_error("haar_unitary: degenerate Ginibre draw");
        for (std::size_t i = 0; i < d; ++i) q(i, j) /= nrm;
    }
    return q;
}

/// Stinespring-random channel: draw U Haar on H_{n^2} (x) H_n (environment
/// times system), fix the environment in |0>, evolve unitarily and trace the
/// environment out. E(rho) = Tr_env(U (|0><0| (x) rho) U^dag), Kraus rank n^2.
inline Choi random_channel(std::size_t n, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("random_channel: dimension must be >= 2");
    const std::size_t env = n * n;
    const CMat u = haar_unitary(env * n, rng);
    KrausSet k{n, {}};
    k.ops.reserve(env);
    for (std::size_t e = 0; e < env; ++e) {
        CMat op(n, n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t) op(s, t) = u(e * n + s, t);
        k.ops.push_back(std::move(op));
    }
    Choi c = choi_from_kraus(k);
    const ValidationReport rep = validate(c, 1e-9);
    if (!rep.cp || !rep.tp) throw std::runtime_error("random_channel: sampled map failed channel validation");
    return c;
}

/// Fubini-Study uniform pure state (normalized complex Gaussian vector).
inline PureState random_pure_state(std::size_t n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("random_pure_state: dimension must be >= 1");
    CVec v(n);
    for (auto& x : v) x = rng.normal_pair();
    const double nrm = vnorm(v);
    for (auto& x : v) x /= nrm;
    return PureState{n, std::move(v)};
}

/// G G^dag / Tr(G G^dag) for an n x rank complex Gaussian G.
inline DensityMatrix random_density(std::size_t n, std::size_t rank, RngStream& rng) {
    if (rank < 1 || rank > n) throw std::invalid_argument("random_density: rank must be in [1, n]");
    const CMat g = ginibre(n, rank, rng);
    CMat rho = g * g.dagger();
    const double tr = rho.trace().real();
    rho *= cdouble(1.0 / tr, 0.0);
    return DensityMatrix{n, std::move(rho)};
}

}  // namespace choifid

#endif  // CHOIFID_SAMPLING_HPP
