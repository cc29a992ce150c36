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

#include <cmath>

#include "test_util.hpp"

using namespace choifid;

TEST_CASE("identical streams reproduce identical draws bit for bit") {
    RngStream a(0xDEADBEEF, 7);
    RngStream b(0xDEADBEEF, 7);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform() == b.uniform());

    RngStream c(0xDEADBEEF, 8);  // different stream index must diverge
    RngStream d(0xDEADBEEF, 7);
    bool any_diff = false;
    for (int i = 0; i < 16; ++i) any_diff |= (c.uniform() != d.uniform());
    CHECK(any_diff);

    const CMat u1 = haar_unitary(5, a);
    const CMat u2 = haar_unitary(5, b);
    CHECK(testutil::mat_diff(u1, u2) == 0.0);
}

TEST_CASE("the generator is genuine Philox4x32-10") {
    // Reference block for counter 0, key 0 is
    // {0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}; the first uniform
    // consumes the low two words as one 64-bit value >> 11, times 2^-53.
    RngStream rng(0, 0);
    const double want = static_cast<double>(0xe169c58d6627e8d5ull >> 11) * 0x1.0p-53;
    CHECK(rng.uniform() == want);
}

TEST_CASE("uniform draws live in [0, 1)") {
    RngStream rng(11, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("haar_unitary at d = 1 is a unit-modulus scalar") {
    RngStream rng(12, 0);
    const CMat u = haar_unitary(1, rng);
    CHECK(std::abs(u(0, 0)) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("haar_unitary is unitary to 1e-12 over 100 draws at d = 8") {
    RngStream rng(13, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const CMat u = haar_unitary(8, rng);
        REQUIRE(testutil::mat_diff(u.dagger() * u, CMat::identity(8)) < 1e-12);
    }
}

TEST_CASE("first column of a Haar unitary is sphere-uniform (moment test)") {
    RngStream rng(14, 0);
    const int draws = 100000;
    const std::size_t d = 2;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const CMat u = haar_unitary(d, rng);
        const double p = std::norm(u(0, 0));  // |<0|U|0>|^2
        sum += p;
        sumsq += p * p;
    }
    const double mean = sum / draws;
    const double var = sumsq / draws - mean * mean;
    const double se = std::sqrt(var / draws);
    CHECK(std::abs(mean - 1.0 / double(d)) <= 3.0 * se);
}

TEST_CASE("|Tr U|^2 has Haar mean 1 at d = 2") {
    RngStream rng(15, 0);
    const int draws = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const CMat u = haar_unitary(2, rng);
        const double t = std::norm(u(0, 0) + u(1, 1));
        sum += t;
        sumsq += t * t;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sumsq / draws - mean * mean) / draws);
    CHECK(std::abs(mean - 1.0) <= 3.0 * se);
}

TEST_CASE("random_channel draws validate as channels") {
    RngStream rng(16, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rep % 2;
        const Choi c = random_channel(n, rng);
        const ValidationReport rep_v = validate(c, 1e-9);
        REQUIRE(rep_v.cp);
        REQUIRE(rep_v.tp);
        CHECK(c.mat.trace().real() == Catch::Approx(double(n)).margin(1e-10));
    }
}

TEST_CASE("seeded qubit channel satisfies min <= avg") {
    RngStream rng(42, 0);
    const Choi c = random_channel(2, rng);
    const FidelityReport rep = min_gate_fidelity(c, MinFidMethod::sdp_exact);
    CHECK(rep.minimum <= rep.average + 1e-9);
}

TEST_CASE("random_pure_state is unit norm and sphere-uniform") {
    RngStream rng(17, 0);
    const int draws = 100000;
    const std::size_t n = 3;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const PureState s = random_pure_state(n, rng);
        REQUIRE(std::abs(vnorm(s.amplitudes) - 1.0) < 1e-12);
        const double p = std::norm(s.amplitudes[0]);
        sum += p;
        sumsq += p * p;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sumsq / draws - mean * mean) / draws);
    CHECK(std::abs(mean - 1.0 / double(n)) <= 3.0 * se);
}

TEST_CASE("random_density produces valid states of the requested rank") {
    RngStream rng(18, 0);
    const DensityMatrix pure = random_density(3, 1, rng);
    const EigDecomp ep = herm_eig(pure.mat);
    CHECK(ep.eigenvalues[0] == Catch::Approx(1.0).margin(1e-10));
    CHECK(std::abs(ep.eigenvalues[1]) < 1e-10);

    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const std::size_t rank = 1 + rep % n;
        const DensityMatrix rho = random_density(n, rank, rng);
        REQUIRE(std::abs(rho.mat.trace().real() - 1.0) < 1e-12);
        const EigDecomp e = herm_eig(rho.mat);
        CHECK(e.eigenvalues.back() >= -1e-12);
        if (rank == n) CHECK(e.eigenvalues.back() > 1e-8);  // full rank almost surely
    }
    CHECK_THROWS_AS(random_density(2, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(random_density(2, 0, rng), std::invalid_argument);
}
