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

#ifndef CHOIFID_FORMATS_HPP
#define CHOIFID_FORMATS_HPP

#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "choifid/channel.hpp"
#include "choifid/fidelity.hpp"
#include "choifid/sampling.hpp"

namespace choifid {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_double(std::string_view tok, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(std::string("invalid ") + what + ": '" + std::string(tok) + "'");
    return v;
}

/// Shortest representation that round-trips the exact double.
inline std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

}  // namespace detail

/// Choi matrix file: header line "CHOI <n>", then n^2 lines of n^2 entries
/// "<re>,<im>" separated by single spaces. Writing uses shortest round-trip
/// decimal, so parse(write(c)) is bit-exact.
inline Choi read_choi(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty input, expected 'CHOI <n>' header");
    std::istringstream header(line);
    std::string tag;
    long long n_signed = 0;
    if (!(header >> tag >> n_signed) || tag != "CHOI" || n_signed < 1)
        throw ParseError("malformed header, expected 'CHOI <n>'");
    std::string trailing;
    if (header >> trailing) throw ParseError("trailing tokens after 'CHOI <n>' header");
    const std::size_t n = static_cast<std::size_t>(n_signed);
    const std::size_t d = n * n;

    CMat mat(d, d);
    for (std::size_t row = 0; row < d; ++row) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of file in matrix body");
        std::istringstream ls(line);
        std::string entry;
        for (std::size_t col = 0; col < d; ++col) {
            if (!(ls >> entry)) throw ParseError("too few entries on a matrix row");
            const auto comma = entry.find(',');
            if (comma == std::string::npos || entry.find(',', comma + 1) != std::string::npos)
                throw ParseError("entry must be '<re>,<im>': '" + entry + "'");
            const double re = detail::parse_double(std::string_view(entry).substr(0, comma), "real part");
            const double im = detail::parse_double(std::string_view(entry).substr(comma + 1), "imaginary part");
            mat(row, col) = cdouble(re, im);
        }
        if (ls >> entry) throw ParseError("too many entries on a matrix row");
    }
    if (!mat.all_finite()) throw ParseError("matrix entries must be finite");
    return Choi{n, std::move(mat)};
}

inline Choi read_choi_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    return read_choi(f);
}

inline void write_choi(std::ostream& out, const Choi& c) {
    const std::size_t d = c.n * c.n;
    out << "CHOI " << c.n << "\n";
    for (std::size_t row = 0; row < d; ++row) {
        for (std::size_t col = 0; col < d; ++col) {
            if (col) out << ' ';
            out << detail::format_double(c.mat(row, col).real()) << ','
                << detail::format_double(c.mat(row, col).imag());
        }
        out << "\n";
    }
}

inline void write_choi_file(const std::string& path, const Choi& c) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open file for writing: " + path);
    write_choi(f, c);
}

// --- distribution runs over random channels ---

struct SampleRow {
    std::uint64_t index = 0;
    double avg_fidelity = 0.0;
    double min_fidelity = 0.0;
};

/// One sampled channel per stream index: the row depends only on
/// (seed, index), never on the thread that computed it.
inline SampleRow sample_one(std::size_t n, std::uint64_t seed, std::uint64_t index) {
    RngStream rng(seed, index);
    const Choi c = random_channel(n, rng);
    const MinFidMethod method = n == 2 ? MinFidMethod::sdp_exact : MinFidMethod::ppt_and_seesaw;
    const FidelityReport rep = min_gate_fidelity(c, method);
    return SampleRow{index, rep.average, rep.minimum};
}

inline std::vector<SampleRow> sample_channels(std::size_t n, std::uint64_t count,
                                              std::uint64_t seed, unsigned threads = 1) {
    std::vector<SampleRow> rows(count);
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) rows[i] = sample_one(n, seed, i);
        return rows;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                rows[i] = sample_one(n, seed, i);
        });
    for (auto& th : pool) th.join();
    return rows;
}

/// CSV: header "index,avg_fidelity,min_fidelity", 12 significant digits,
/// rows sorted by index.
inline void write_sample_csv(std::ostream& out, const std::vector<SampleRow>& rows) {
    out << "index,avg_fidelity,min_fidelity\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g",
                      static_cast<unsigned long long>(row.index), row.avg_fidelity, row.min_fidelity);
        out << buf << "\n";
    }
}

}  // namespace choifid

#endif  // CHOIFID_FORMATS_HPP
