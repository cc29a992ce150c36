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

#ifndef CHOIFID_SDP_HPP
#define CHOIFID_SDP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "choifid/channel.hpp"
#include "choifid/cmat.hpp"
#include "choifid/eig.hpp"

namespace choifid {

/// maximize Tr(X rho)  s.t.  rho >= 0,  (id (x) T)(rho) >= 0,  Tr(rho) = 1
/// over Hermitian m x m matrices, m = n^2 on H_n (x) H_n.
struct SdpInstance {
    CMat objective;                       // Hermitian m x m
    std::pair<std::size_t, std::size_t> local_dims;  // (n, n)
    double tolerance = 1e-9;
    std::size_t max_iterations = 200;     // outer barrier steps
};

struct SdpResult {
    double primal_value = 0.0;
    DensityMatrix primal_point;           // feasible: PSD, PPT, trace 1
    double dual_bound = 0.0;              // rigorous upper bound on the optimum
    double gap = 0.0;                     // dual_bound - primal_value
    std::size_t iterations = 0;           // outer steps taken
    bool converged = false;
    std::vector<std::pair<double, double>> trail;  // (primal, dual) per outer step
};

namespace detail {

/// Cholesky factor L (lower) of a Hermitian positive definite matrix,
/// or nullopt when a pivot fails (matrix not PD).
inline std::optional<CMat> cholesky(const CMat& a) {
    const std::size_t m = a.rows();
    CMat l(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cdouble s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            if (i == j) {
                const double d = s.real();
                if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
                l(i, i) = std::sqrt(d);
            } else {
                l(i, j) = s / l(j, j).real();
            }
        }
    }
    return l;
}

inline double logdet_from_cholesky(const CMat& l) {
    double s = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i).real());
    return 2.0 * s;
}

/// A^{-1} from its Cholesky factor.
inline CMat inverse_from_cholesky(const CMat& l) {
    const std::size_t m = l.rows();
    CMat inv(m, m);
    for (std::size_t col = 0; col < m; ++col) {
        CVec y(m, cdouble(0.0, 0.0));
        for (std::size_t i = 0; i < m; ++i) {  // L y = e_col
            cdouble s = (i == col) ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i).real();
        }
        for (std::size_t ii = m; ii-- > 0;) {  // L^dag x = y
            cdouble s = y[ii];
            for (std::size_t k = ii + 1; k < m; ++k) s -= std::conj(l(k, ii)) * inv(k, col);
            inv(ii, col) = s / l(ii, ii).real();
        }
    }
    // symmetrize against roundoff
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const cdouble v = 0.5 * (inv(i, j) + std::conj(inv(j, i)));
            inv(i, j) = v;
            inv(j, i) = std::conj(v);
        }
    return inv;
}

/// Project a Hermitian matrix onto the PSD cone (clamp negative eigenvalues).
inline CMat clamp_psd(const CMat& a) {
    EigDecomp eig = herm_eig(a, 1e-6);
    const std::size_t m = a.rows();
    CMat r(m, m);
    for (std::size_t e = 0; e < m; ++e) {
        if (eig.eigenvalues[e] <= 0.0) continue;
        const double lam = eig.eigenvalues[e];
        for (std::size_t i = 0; i < m; ++i) {
            const cdouble vi = lam * eig.eigenvectors(i, e);
            for (std::size_t j = 0; j < m; ++j) r(i, j) += vi * std::conj(eig.eigenvectors(j, e));
        }
    }
    return r;
}

// Real coordinates of the traceless Hermitian space: for i < j the pair
// (sqrt2 Re M_ij, sqrt2 Im M_ij), then the m-1 diagonal Gell-Mann components.
struct HermCoords {
    std::size_t m = 0;
    std::size_t dim() const { return m * m - 1; }

    std::vector<double> to_coords(const CMat& a) const {
        std::vector<double> y(dim());
        const double rt2 = std::sqrt(2.0);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                y[idx++] = rt2 * a(i, j).real();
                y[idx++] = rt2 * a(i, j).imag();
            }
        for (std::size_t k = 1; k < m; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < k; ++i) s += a(i, i).real();
            s -= static_cast<double>(k) * a(k, k).real();
            y[idx++] = s / std::sqrt(static_cast<double>(k * (k + 1)));
        }
        return y;
    }

    CMat from_coords(const std::vector<double>& y) const {
        CMat a(m, m);
        const double inv_rt2 = 1.0 / std::sqrt(2.0);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const cdouble v(inv_rt2 * y[idx], inv_rt2 * y[idx + 1]);
                idx += 2;
                a(i, j) = v;
                a(j, i) = std::conj(v);
            }
        for (std::size_t k = 1; k < m; ++k) {
            const double c = y[idx++] / std::sqrt(static_cast<double>(k * (k + 1)));
            for (std::size_t i = 0; i < k; ++i) a(i, i) += c;
            a(k, k) -= static_cast<double>(k) * c;
        }
        return a;
    }

    /// Sparse E_{rc} expansion of the a-th basis element: list of (r, c, w).
    std::vector<std::tuple<std::size_t, std::size_t, cdouble>> basis_entries(std::size_t a) const {
        const std::size_t off = m * (m - 1);  // number of off-diagonal coords
        std::vector<std::tuple<std::size_t, std::size_t, cdouble>> ent;
        if (a < off) {
            const std::size_t pair = a / 2;
            const double w = 1.0 / std::sqrt(2.0);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j, ++idx)
                    if (idx == pair) {
                        if (a % 2 == 0) {  // (E_ij + E_ji)/sqrt2
                            ent.emplace_back(i, j, cdouble(w, 0.0));
                            ent.emplace_back(j, i, cdouble(w, 0.0));
                        } else {  // (i E_ij - i E_ji)/sqrt2
                            ent.emplace_back(i, j, cdouble(0.0, w));
                            ent.emplace_back(j, i, cdouble(0.0, -w));
                        }
                        return ent;
                    }
        } else {
            const std::size_t k = a - off + 1;
            const double w = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
            for (std::size_t i = 0; i < k; ++i) ent.emplace_back(i, i, cdouble(w, 0.0));
            ent.emplace_back(k, k, cdouble(-static_cast<double>(k) * w, 0.0));
        }
        return ent;
    }
};

/// sum_t w_t (A e_r)(e_c^T A) for Hermitian A and a sparse entry list.
inline CMat congruence_sparse(const CMat& a,
                              const std::vector<std::tuple<std::size_t, std::size_t, cdouble>>& ent) {
    const std::size_t m = a.rows();
    CMat out(m, m);
    for (const auto& [r, c, w] : ent)
        for (std::size_t i = 0; i < m; ++i) {
            const cdouble f = w * a(i, r);
            if (f == cdouble(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < m; ++j) out(i, j) += f * a(c, j);
        }
    return out;
}

/// Dense real symmetric linear solve with equilibration and ridge fallback.
/// Throws on a genuinely singular system.
inline std::vector<double> solve_spd(std::vector<std::vector<double>> h, std::vector<double> rhs) {
    const std::size_t k = rhs.size();
    std::vector<double> scale(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double d = std::abs(h[i][i]);
        scale[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) h[i][j] *= scale[i] * scale[j];
    for (std::size_t i = 0; i < k; ++i) rhs[i] *= scale[i];

    for (double ridge : {0.0, 1e-14, 1e-11, 1e-8}) {
        std::vector<std::vector<double>> l(k, std::vector<double>(k, 0.0));
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = h[i][j] + (i == j ? ridge : 0.0);
                for (std::size_t t = 0; t < j; ++t) s -= l[i][t] * l[j][t];
                if (i == j) {
                    if (!(s > 0.0) || !std::isfinite(s)) { ok = false; break; }
                    l[i][i] = std::sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        if (!ok) continue;
        std::vector<double> y(k), x(k);
        for (std::size_t i = 0; i < k; ++i) {
            double s = rhs[i];
            for (std::size_t t = 0; t < i; ++t) s -= l[i][t] * y[t];
            y[i] = s / l[i][i];
        }
        for (std::size_t ii = k; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t t = ii + 1; t < k; ++t) s -= l[t][ii] * x[t];
            x[ii] = s / l[ii][ii];
        }
        for (std::size_t i = 0; i < k; ++i) x[i] *= scale[i];
        return x;
    }
    throw std::runtime_error("sdp: singular Newton system");
}

}  // namespace detail

/// Short-step path-following interior point on the barrier
///   -log det(rho) - log det((id (x) T)(rho)),
/// trace constraint eliminated by the traceless-Hermitian parametrization,
/// starting point rho = I/m, barrier parameter halved per outer step.
/// The dual bound comes from a dual-feasible Y >= 0 (largest eigenvalue of
/// the objective shifted by the partial transpose of Y), so it upper-bounds
/// the optimum regardless of convergence; Richardson extrapolation of
/// consecutive central points sharpens both certificate sides.
inline SdpResult solve(const SdpInstance& inst) {
    const std::size_t n = inst.local_dims.first;
    if (inst.local_dims.second != n) throw std::invalid_argument("sdp: local dimensions must match");
    const std::size_t m = n * n;
    if (inst.objective.rows() != m || inst.objective.cols() != m)
        throw std::invalid_argument("sdp: objective shape does not match local dimensions");
    if (m > 100) throw std::invalid_argument("sdp: problem size exceeds the small-scale design limit");
    if (!inst.objective.is_hermitian(1e-10))
        throw std::invalid_argument("sdp: objective must be Hermitian");

    const CMat& x = inst.objective;
    const auto gamma = [&](const CMat& a) { return partial_transpose(a, n, Subsystem::second); };

    detail::HermCoords coords{m};
    const std::size_t dim = coords.dim();
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, cdouble>>> basis(dim), basis_pt(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        basis[a] = coords.basis_entries(a);
        // (id (x) T) maps E_{(r1,r2),(c1,c2)} to E_{(r1,c2),(c1,r2)}
        for (const auto& [r, c, w] : basis[a]) {
            const std::size_t r1 = r / n, r2 = r % n, c1 = c / n, c2 = c % n;
            basis_pt[a].emplace_back(r1 * n + c2, c1 * n + r2, w);
        }
    }

    CMat rho = (1.0 / static_cast<double>(m)) * CMat::identity(m);
    double mu = std::max(1.0, x.frobenius_norm());

    const double inf = std::numeric_limits<double>::infinity();
    SdpResult res;
    res.primal_value = -inf;
    res.dual_bound = inf;

    const auto barrier_value = [&](const CMat& r) -> std::optional<double> {
        auto l1 = detail::cholesky(r);
        if (!l1) return std::nullopt;
        auto l2 = detail::cholesky(gamma(r));
        if (!l2) return std::nullopt;
        double obj = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) obj += (x(i, j) * r(j, i)).real();
        return -obj - mu * (detail::logdet_from_cholesky(*l1) + detail::logdet_from_cholesky(*l2));
    };

    CMat prev_rho, prev_y;
    double prev_mu = 0.0;
    bool have_prev = false;

    std::size_t outer = 0;
    for (; outer < inst.max_iterations; ++outer) {
        // ---- center at the current mu (damped Newton) ----
        // The dual certificate quality tracks the centering residual, so the
        // decrement target shrinks with mu; Newton is quadratic below 0.25,
        // making the tight phase a handful of extra steps.
        const double center_tol = std::max(1e-3 * mu, 1e-12);
        for (int inner = 0; inner < 80; ++inner) {
            auto lr = detail::cholesky(rho);
            auto lg = detail::cholesky(gamma(rho));
            if (!lr || !lg) throw std::runtime_error("sdp: iterate left the interior");
            const CMat rinv = detail::inverse_from_cholesky(*lr);
            const CMat ginv = detail::inverse_from_cholesky(*lg);

            CMat grad_mat = -1.0 * x;
            grad_mat += -mu * rinv;
            grad_mat += -mu * gamma(ginv);
            const std::vector<double> g = coords.to_coords(grad_mat);

            std::vector<std::vector<double>> hess(dim);
            for (std::size_t a = 0; a < dim; ++a) {
                CMat ma = detail::congruence_sparse(rinv, basis[a]);
                ma += gamma(detail::congruence_sparse(ginv, basis_pt[a]));
                hess[a] = coords.to_coords(ma);
                for (auto& v : hess[a]) v *= mu;
            }
            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = a + 1; b < dim; ++b) {
                    const double v = 0.5 * (hess[a][b] + hess[b][a]);
                    hess[a][b] = v;
                    hess[b][a] = v;
                }

            std::vector<double> rhs(dim);
            for (std::size_t a = 0; a < dim; ++a) rhs[a] = -g[a];
            const std::vector<double> delta = detail::solve_spd(std::move(hess), std::move(rhs));

            double gd = 0.0;
            for (std::size_t a = 0; a < dim; ++a) gd += g[a] * delta[a];
            const double decrement = std::sqrt(std::max(-gd, 0.0));
            if (decrement <= center_tol) break;

            const CMat step = coords.from_coords(delta);
            const double f0 = *barrier_value(rho);
            double t = std::min(1.0, 1.0 / (1.0 + decrement));
            bool moved = false;
            while (t > 1e-14) {
                CMat cand = rho + t * step;
                const auto f1 = barrier_value(cand);
                if (f1 && *f1 <= f0 + 0.25 * t * gd) {
                    rho = std::move(cand);
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!moved) break;
        }

        // ---- certificates at the (approximately) central point ----
        auto lg = detail::cholesky(gamma(rho));
        if (!lg) throw std::runtime_error("sdp: iterate left the interior");
        const CMat y = mu * detail::inverse_from_cholesky(*lg);

        double primal = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) primal += (x(i, j) * rho(j, i)).real();
        if (primal > res.primal_value) {
            res.primal_value = primal;
            res.primal_point = DensityMatrix{n, rho};
        }

        const auto dual_from = [&](const CMat& ycand) {
            const CMat shifted = x + gamma(detail::clamp_psd(ycand));
            EigDecomp e = herm_eig(shifted, 1e-8);
            return e.eigenvalues.front();
        };
        res.dual_bound = std::min(res.dual_bound, dual_from(y));

        if (have_prev && prev_mu > mu) {
            // Richardson extrapolation toward mu -> 0; both candidates are
            // re-certified (PSD clamp on Y, strict PD check on rho).
            CMat y_ext = 2.0 * y - prev_y;
            res.dual_bound = std::min(res.dual_bound, dual_from(y_ext));
            CMat rho_ext = 2.0 * rho - prev_rho;
            if (detail::cholesky(rho_ext) && detail::cholesky(gamma(rho_ext))) {
                double p_ext = 0.0;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j) p_ext += (x(i, j) * rho_ext(j, i)).real();
                if (p_ext > res.primal_value) {
                    res.primal_value = p_ext;
                    res.primal_point = DensityMatrix{n, rho_ext};
                }
            }
        }

        res.trail.emplace_back(res.primal_value, res.dual_bound);
        res.gap = res.dual_bound - res.primal_value;
        if (res.gap <= inst.tolerance) {
            res.converged = true;
            ++outer;
            break;
        }

        prev_rho = rho;
        prev_y = y;
        prev_mu = mu;
        have_prev = true;
        mu *= 0.5;
    }

    res.iterations = outer;
    return res;
}

}  // namespace choifid

#endif  // CHOIFID_SDP_HPP
