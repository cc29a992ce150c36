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

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace choifid;

TEST_CASE("gate fidelity of the identity channel is one") {
    RngStream rng(701, 0);
    const Choi id3 = identity_channel(3);
    for (int rep = 0; rep < 5; ++rep) {
        const PureState phi = random_pure_state(3, rng);
        CHECK(gate_fidelity_at(id3, phi) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("gate fidelity of the completely depolarizing qubit channel is 1/2") {
    RngStream rng(702, 0);
    const Choi dep = depolarizing_channel(2, 0.0);
    for (int rep = 0; rep < 5; ++rep)
        CHECK(gate_fidelity_at(dep, random_pure_state(2, rng)) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("gate fidelity matches direct channel application") {
    RngStream rng(703, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const Choi c = random_channel(n, rng);
        const PureState phi = random_pure_state(n, rng);
        const CMat out = apply_to(c, outer(phi.amplitudes));
        const double direct = std::real(expectation(out, phi.amplitudes));
        CHECK(gate_fidelity_at(c, phi) == Catch::Approx(direct).margin(1e-12));
        CHECK(gate_fidelity_at(c, phi) >= -1e-9);
        CHECK(gate_fidelity_at(c, phi) <= 1.0 + 1e-9);
    }
}

TEST_CASE("state fidelity basics") {
    RngStream rng(704, 0);
    const DensityMatrix rho = random_density(3, 3, rng);
    CHECK(state_fidelity(rho, rho) == Catch::Approx(1.0).margin(1e-10));

    // pure sigma reduces to <phi|rho|phi>
    const PureState phi = random_pure_state(3, rng);
    const DensityMatrix sigma{3, outer(phi.amplitudes)};
    CHECK(state_fidelity(rho, sigma) ==
          Catch::Approx(std::real(expectation(rho.mat, phi.amplitudes))).margin(1e-10));

    // orthogonal pure states
    const DensityMatrix e0{2, outer(basis_vector(2, 0))};
    const DensityMatrix e1{2, outer(basis_vector(2, 1))};
    CHECK(state_fidelity(e0, e1) == Catch::Approx(0.0).margin(1e-12));

    // symmetry
    const DensityMatrix tau = random_density(3, 2, rng);
    CHECK(state_fidelity(rho, tau) == Catch::Approx(state_fidelity(tau, rho)).margin(1e-9));
}

TEST_CASE("average fidelity from Kraus operators") {
    CHECK(average_fidelity_kraus(KrausSet{2, {CMat::identity(2)}}) == Catch::Approx(1.0));

    KrausSet pauli_mix{2, {}};
    for (int k = 0; k < 4; ++k) pauli_mix.ops.push_back(0.5 * testutil::pauli(k));
    CHECK(average_fidelity_kraus(pauli_mix) == Catch::Approx(0.5).margin(1e-12));

    CHECK(average_fidelity_kraus(KrausSet{2, {testutil::pauli(3)}}) ==
          Catch::Approx(1.0 / 3.0).margin(1e-12));
}

TEST_CASE("average fidelity from the Choi matrix") {
    CHECK(average_fidelity_choi(identity_channel(2)) == Catch::Approx(1.0).margin(1e-12));

    const Choi q = testutil::example_q();
    CHECK(average_fidelity_choi(q) ==
          Catch::Approx(average_fidelity_kraus(kraus_from_choi(q))).margin(1e-10));

    for (double c : {0.5, 0.8}) {
        const Choi map = testutil::constant_fidelity_map(3, c);
        CHECK(average_fidelity_choi(map) == Catch::Approx(c).margin(1e-12));
    }
}

TEST_CASE("the two average-fidelity routes agree on random channels") {
    RngStream rng(705, 0);
    for (std::size_t n : {2, 3, 4}) {
        for (int rep = 0; rep < 200; ++rep) {
            const Choi c = random_channel(n, rng);
            REQUIRE(std::abs(average_fidelity_choi(c) - average_fidelity_kraus(kraus_from_choi(c))) <=
                    1e-10);
        }
    }
}

TEST_CASE("empirical mean of the gate fidelity matches the closed form") {
    RngStream rng(706, 0);
    const Choi c = random_channel(2, rng);
    const double want = average_fidelity_choi(c);
    const int draws = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double f = gate_fidelity_at(c, random_pure_state(2, rng));
        sum += f;
        sumsq += f * f;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sumsq / draws - mean * mean) / draws);
    CHECK(std::abs(mean - want) <= 3.0 * se + 1e-12);
}

TEST_CASE("chi00 values and the trace identity") {
    CHECK(chi00(identity_channel(2)) == Catch::Approx(1.0).margin(1e-12));
    CHECK(chi00(depolarizing_channel(2, 0.0)) == Catch::Approx(0.25).margin(1e-12));

    RngStream rng(707, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const Choi c = random_channel(n, rng);
        const double via_trace =
            2.0 * compression(c).k.trace().real() / double(n * n) - 1.0 / double(n);
        REQUIRE(std::abs(chi00(c) - via_trace) <= 1e-10);
    }
}

TEST_CASE("every channel shares its gate fidelity with its dual") {
    RngStream rng(708, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const Choi c = random_channel(n, rng);
        CHECK(equal_fidelity(c, dual_choi(c), 1e-10));
        const PureState phi = random_pure_state(n, rng);
        CHECK(gate_fidelity_at(c, phi) ==
              Catch::Approx(gate_fidelity_at(dual_choi(c), phi)).margin(1e-10));
    }
}

TEST_CASE("the example pair has equal gate fidelity") {
    CHECK(equal_fidelity(testutil::example_q(), testutil::example_r(), 1e-10));
}

TEST_CASE("a symmetric-supported perturbation breaks fidelity equality") {
    RngStream rng(709, 0);
    const Choi c = random_channel(2, rng);
    // rank-one Hermitian supported on S, trace removed to keep Tr C = n
    const CVec s = {cdouble(1, 0), 0.0, 0.0, 0.0};  // |00><00| lives in S
    CMat pert = partial_transpose(outer(s), 2, Subsystem::first);
    pert -= 0.25 * CMat::identity(4);
    Choi perturbed{2, c.mat + 0.01 * pert};
    CHECK_FALSE(equal_fidelity(c, perturbed, 1e-8));
    // oracle: a sampled state whose pointwise fidelity moved
    const PureState e0{2, basis_vector(2, 0)};
    CHECK(std::abs(gate_fidelity_at(c, e0) - gate_fidelity_at(perturbed, e0)) > 1e-4);
}

TEST_CASE("equal-fidelity shift family: Q + r (E - E^dag)") {
    RngStream rng(710, 0);
    const Choi q = random_channel(2, rng);
    for (double r : {1e-3, 1e-2}) {
        const Choi e = depolarizing_channel(2, 0.3);  // unital
        CMat shifted = q.mat + r * (e.mat - dual_choi(e).mat);
        const Choi q2{2, std::move(shifted)};
        CHECK(equal_fidelity(q, q2, 1e-10));
    }
}

TEST_CASE("constant_fidelity detects depolarizing-type channels") {
    const auto one = constant_fidelity(identity_channel(2), 1e-10);
    REQUIRE(one.has_value());
    CHECK(*one == Catch::Approx(1.0).margin(1e-12));

    const auto half = constant_fidelity(depolarizing_channel(2, 0.5), 1e-10);
    REQUIRE(half.has_value());
    CHECK(*half == Catch::Approx(0.75).margin(1e-12));

    CHECK_FALSE(constant_fidelity(testutil::example_q(), 1e-8).has_value());
    // oracle: two states with different pointwise fidelity
    const PureState e0{3, basis_vector(3, 0)};
    CVec plus = {cdouble(1, 0), cdouble(1, 0), 0.0};
    for (auto& a : plus) a /= std::sqrt(2.0);
    const PureState sp{3, plus};
    CHECK(std::abs(gate_fidelity_at(testutil::example_q(), e0) -
                   gate_fidelity_at(testutil::example_q(), sp)) > 1e-3);
}

TEST_CASE("constant fidelity necessary condition") {
    // identity channel, n = 2: spectrum of F is (1,1,1,-1), middle two equal
    CHECK(constant_fidelity_necessary(identity_channel(2), 1e-10));
    for (double c : {0.4, 0.9})
        CHECK(constant_fidelity_necessary(testutil::constant_fidelity_map(3, c), 1e-10));

    RngStream rng(711, 0);
    int necessary_failures = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const Choi c = random_channel(2, rng);
        if (!constant_fidelity_necessary(c, 1e-8)) {
            ++necessary_failures;
            // necessity: failing the eigenvalue test implies non-constant fidelity
            CHECK_FALSE(constant_fidelity(c, 1e-8).has_value());
        }
    }
    CHECK(necessary_failures > 0);  // random channels are typically non-constant
}

TEST_CASE("channel-only operations reject maps that are not channels") {
    const Choi not_cp{2, flip(2)};  // Hermitian, TP, but not PSD
    CHECK_THROWS_AS(average_fidelity_choi(not_cp), std::invalid_argument);
    CHECK_THROWS_AS(min_gate_fidelity(not_cp, MinFidMethod::sdp_exact), std::invalid_argument);
    CHECK_THROWS_AS(min_fid_bounds(not_cp), std::invalid_argument);
    CHECK_THROWS_AS(equal_fidelity(identity_channel(2), identity_channel(3), 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(min_gate_fidelity(identity_channel(3), MinFidMethod::sdp_exact),
                    std::invalid_argument);  // exact SDP is qubit-only
}

TEST_CASE("minimum fidelity of reference channels") {
    const FidelityReport id = min_gate_fidelity(identity_channel(2), MinFidMethod::sdp_exact);
    CHECK(id.lambda1 == Catch::Approx(1.0).margin(1e-10));
    CHECK(id.minimum == Catch::Approx(1.0).margin(1e-8));

    const FidelityReport dep = min_gate_fidelity(depolarizing_channel(2, 0.0), MinFidMethod::sdp_exact);
    CHECK(dep.minimum == Catch::Approx(0.5).margin(1e-8));

    const FidelityReport ad = min_gate_fidelity(amplitude_damping_channel(0.3), MinFidMethod::sdp_exact);
    CHECK(ad.minimum == Catch::Approx(0.7).margin(1e-6));
}

TEST_CASE("minimum fidelity reports are internally consistent") {
    RngStream rng(712, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const Choi c = random_channel(2, rng);
        const FidelityReport rep_sdp = min_gate_fidelity(c, MinFidMethod::sdp_exact);
        CHECK(rep_sdp.lower <= rep_sdp.minimum + 1e-9);
        CHECK(rep_sdp.minimum <= rep_sdp.upper + 1e-9);
        CHECK(rep_sdp.minimum <= rep_sdp.average + 1e-9);
        CHECK(rep_sdp.average <= 1.0 + 1e-9);
        const PureState phi = random_pure_state(2, rng);
        CHECK(rep_sdp.minimum <= gate_fidelity_at(c, phi) + 1e-8);

        const FidelityReport rep_ss = min_gate_fidelity(c, MinFidMethod::ppt_and_seesaw);
        CHECK(rep_ss.lower <= rep_ss.upper + 1e-9);
        CHECK(std::abs(rep_ss.minimum - rep_sdp.minimum) < 1e-6);
    }
}

TEST_CASE("grid method matches the SDP on qubit channels") {
    RngStream rng(713, 0);
    const Choi c = random_channel(2, rng);
    const FidelityReport g = min_gate_fidelity(c, MinFidMethod::grid);
    const FidelityReport s = min_gate_fidelity(c, MinFidMethod::sdp_exact);
    CHECK(g.minimum == Catch::Approx(s.minimum).margin(1e-4));
    CHECK(g.minimum >= s.minimum - 1e-9);  // a grid value is attained, hence an upper bound
}

TEST_CASE("min_fid_bounds on flat-spectrum channels collapse") {
    const auto [lo_id, hi_id] = min_fid_bounds(identity_channel(2));
    CHECK(lo_id == Catch::Approx(1.0).margin(1e-10));
    CHECK(hi_id == Catch::Approx(1.0).margin(1e-10));

    const auto [lo_c, hi_c] = min_fid_bounds(depolarizing_channel(3, 0.4));
    const double cval = 0.4 + 0.6 / 3.0;
    CHECK(lo_c == Catch::Approx(cval).margin(1e-10));
    CHECK(hi_c == Catch::Approx(cval).margin(1e-10));
}

TEST_CASE("min_fid_bounds sandwich the SDP minimum") {
    RngStream rng(714, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const Choi c = random_channel(2, rng);
        const auto [lo, hi] = min_fid_bounds(c);
        const double minimum = min_gate_fidelity(c, MinFidMethod::sdp_exact).minimum;
        CHECK(lo <= minimum + 1e-8);
        CHECK(minimum <= hi + 1e-8);
    }
}

TEST_CASE("decompose_qubit of identical channels is trivial") {
    const Choi id = identity_channel(2);
    const QubitDecomposition dec = decompose_qubit(id, id);
    CHECK(dec.r == 0.0);
    CHECK(testutil::mat_diff(dec.e.mat, id.mat) == 0.0);
}

TEST_CASE("decompose_qubit recovers forward-constructed differences") {
    RngStream rng(715, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const cdouble c1(0.0, 0.2 * (rng.uniform() - 0.5));
        const cdouble c2(0.2 * (rng.uniform() - 0.5), 0.2 * (rng.uniform() - 0.5));
        const double r = 2.0 * std::abs(c2) + 2.0 * std::abs(c1);
        if (r < 1e-6) continue;
        CMat ce(4, 4);
        ce(0, 0) = 0.5; ce(1, 1) = 0.5; ce(2, 2) = 0.5; ce(3, 3) = 0.5;
        ce(0, 2) = -c2 / r; ce(0, 3) = std::conj(c1) / r; ce(1, 3) = c2 / r;
        ce(2, 0) = -std::conj(c2) / r; ce(3, 0) = c1 / r; ce(3, 1) = std::conj(c2) / r;
        const Choi e{2, ce};

        Choi cq{2, 0.85 * depolarizing_channel(2, 0.0).mat + 0.15 * random_channel(2, rng).mat};
        const Choi cr{2, cq.mat - r * (e.mat - dual_choi(e).mat)};
        REQUIRE(validate(cr, 1e-9).cp);

        const QubitDecomposition dec = decompose_qubit(cq, cr);
        const ValidationReport ve = validate(dec.e, 1e-9);
        CHECK(ve.cp);
        CHECK(ve.tp);
        CHECK(ve.unital);
        CHECK(dec.c1.real() == 0.0);  // purely imaginary by construction
        for (std::size_t row = 0; row < 4; ++row) {  // diagonally dominant Choi
            double off = 0.0;
            for (std::size_t col = 0; col < 4; ++col)
                if (col != row) off += std::abs(dec.e.mat(row, col));
            CHECK(off <= dec.e.mat(row, row).real() + 1e-12);
        }
        const CMat resid = (cq.mat - cr.mat) - dec.r * (dec.e.mat - dual_choi(dec.e).mat);
        CHECK(resid.frobenius_norm() <= 1e-8);
    }
}

TEST_CASE("decompose_qubit of a unital channel against its dual") {
    RngStream rng(716, 0);
    // mixed-unitary channels are unital and trace-preserving
    KrausSet mixed{2, {}};
    const double weights[3] = {0.5, 0.3, 0.2};
    for (double w : weights) mixed.ops.push_back(std::sqrt(w) * haar_unitary(2, rng));
    const Choi unital = choi_from_kraus(mixed);
    const ValidationReport v = validate(unital, 1e-9);
    REQUIRE((v.cp && v.tp && v.unital));

    const Choi dual = dual_choi(unital);
    const QubitDecomposition dec = decompose_qubit(unital, dual);
    const CMat resid = (unital.mat - dual.mat) - dec.r * (dec.e.mat - dual_choi(dec.e).mat);
    CHECK(resid.frobenius_norm() <= 1e-8);
}

TEST_CASE("decompose_qubit rejects unrelated channels") {
    const Choi a = identity_channel(2);
    const Choi b = depolarizing_channel(2, 0.5);
    CHECK_THROWS_AS(decompose_qubit(a, b), std::invalid_argument);
    CHECK_THROWS_AS(decompose_qubit(testutil::example_q(), testutil::example_r()),
                    std::invalid_argument);  // n = 3
}

TEST_CASE("mixed-state fidelity check") {
    RngStream rng(717, 0);
    const Choi dep = depolarizing_channel(2, 0.0);
    const DensityMatrix max_mixed{2, 0.5 * CMat::identity(2)};
    CHECK(min_fid_mixed_check(dep, max_mixed) == Catch::Approx(1.0).margin(1e-10));

    for (int rep = 0; rep < 5; ++rep) {
        const Choi c = random_channel(2, rng);
        const PureState phi = random_pure_state(2, rng);
        const DensityMatrix proj{2, outer(phi.amplitudes)};
        CHECK(min_fid_mixed_check(c, proj) == Catch::Approx(gate_fidelity_at(c, phi)).margin(1e-10));

        const double minimum = min_gate_fidelity(c, MinFidMethod::sdp_exact).minimum;
        for (int s = 0; s < 10; ++s) {
            const DensityMatrix rho = random_density(2, 1 + s % 2, rng);
            CHECK(min_fid_mixed_check(c, rho) >= minimum - 1e-7);
        }
    }
}
