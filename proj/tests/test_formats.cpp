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

#include <sstream>

#include "test_util.hpp"

using namespace choifid;

namespace {

std::string to_text(const Choi& c) {
    std::ostringstream out;
    write_choi(out, c);
    return out.str();
}

Choi from_text(const std::string& text) {
    std::istringstream in(text);
    return read_choi(in);
}

}  // namespace

TEST_CASE("write-then-parse is bit-exact on random channels") {
    RngStream rng(801, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const Choi c = random_channel(n, rng);
        const Choi back = from_text(to_text(c));
        REQUIRE(back.n == c.n);
        REQUIRE(back.mat.data() == c.mat.data());  // element-wise exact doubles
    }
}

TEST_CASE("shipped fixtures survive the round trip bit-exactly") {
    for (const char* name : {"identity.choi", "depolarizing.choi", "ampdamp_gamma03.choi",
                             "exampleQ.choi", "exampleR.choi"}) {
        const Choi c = read_choi_file(testutil::data_path(name));
        const Choi back = from_text(to_text(c));
        REQUIRE(back.mat.data() == c.mat.data());
    }
}

TEST_CASE("fixture contents match their in-code definitions") {
    CHECK(testutil::mat_diff(read_choi_file(testutil::data_path("identity.choi")).mat,
                             identity_channel(2).mat) == 0.0);
    CHECK(testutil::mat_diff(read_choi_file(testutil::data_path("depolarizing.choi")).mat,
                             depolarizing_channel(2, 0.0).mat) == 0.0);
    CHECK(testutil::mat_diff(read_choi_file(testutil::data_path("ampdamp_gamma03.choi")).mat,
                             amplitude_damping_channel(0.3).mat) < 1e-15);
    CHECK(testutil::mat_diff(read_choi_file(testutil::data_path("exampleQ.choi")).mat,
                             testutil::example_q().mat) == 0.0);
    CHECK(testutil::mat_diff(read_choi_file(testutil::data_path("exampleR.choi")).mat,
                             testutil::example_r().mat) == 0.0);
}

TEST_CASE("malformed inputs raise parse errors") {
    CHECK_THROWS_AS(from_text(""), ParseError);
    CHECK_THROWS_AS(from_text("CHO 2\n"), ParseError);
    CHECK_THROWS_AS(from_text("CHOI 0\n"), ParseError);
    CHECK_THROWS_AS(from_text("CHOI 2 junk\n"), ParseError);
    CHECK_THROWS_AS(from_text("CHOI 2\n1,0 0,0 0,0 1,0\n"), ParseError);       // missing rows
    CHECK_THROWS_AS(from_text("CHOI 2\n1,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n1,0 0,0 0,0 1,0\n"),
                    ParseError);                                               // short row
    CHECK_THROWS_AS(from_text("CHOI 2\n1,0 0,0 0,0 1,0 9,9\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n1,0 0,0 0,0 1,0\n"),
                    ParseError);                                               // long row
    const std::string body3 = "0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n";
    CHECK_THROWS_AS(from_text("CHOI 2\n1;0 0,0 0,0 1,0\n" + body3), ParseError);   // bad separator
    CHECK_THROWS_AS(from_text("CHOI 2\nx,0 0,0 0,0 1,0\n" + body3), ParseError);   // bad number
    CHECK_THROWS_AS(from_text("CHOI 2\nnan,0 0,0 0,0 1,0\n" + body3), ParseError); // non-finite
    CHECK_THROWS_AS(read_choi_file("/nonexistent/path.choi"), ParseError);
}

TEST_CASE("sample csv format, ordering and bounds") {
    const auto rows = sample_channels(2, 16, 2024, 1);
    REQUIRE(rows.size() == 16);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].index == i);
        CHECK(rows[i].min_fidelity >= -1e-9);
        CHECK(rows[i].min_fidelity <= rows[i].avg_fidelity + 1e-9);
        CHECK(rows[i].avg_fidelity <= 1.0 + 1e-9);
    }
    std::ostringstream out;
    write_sample_csv(out, rows);
    const std::string text = out.str();
    CHECK(text.rfind("index,avg_fidelity,min_fidelity\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);
}

TEST_CASE("sampling at n = 3 uses the certified interval route") {
    const auto rows = sample_channels(3, 2, 31, 1);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.min_fidelity >= -1e-9);
        CHECK(row.min_fidelity <= row.avg_fidelity + 1e-9);
        CHECK(row.avg_fidelity <= 1.0 + 1e-9);
    }
}

TEST_CASE("sampling is independent of the thread count") {
    const auto one = sample_channels(2, 12, 555, 1);
    const auto four = sample_channels(2, 12, 555, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        REQUIRE(one[i].index == four[i].index);
        REQUIRE(one[i].avg_fidelity == four[i].avg_fidelity);
        REQUIRE(one[i].min_fidelity == four[i].min_fidelity);
    }
    std::ostringstream a, b;
    write_sample_csv(a, one);
    write_sample_csv(b, four);
    REQUIRE(a.str() == b.str());
}
