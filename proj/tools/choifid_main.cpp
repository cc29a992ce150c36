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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "choifid/choifid.hpp"

namespace {

// Exit codes: 0 success, 1 validation failure, 2 parse error,
// 3 numerical failure, 4 usage error.
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kParseError = 2;
constexpr int kNumericalFailure = 3;
constexpr int kUsageError = 4;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

int run_validate(const std::string& file) {
    const choifid::Choi c = choifid::read_choi_file(file);
    const choifid::ValidationReport rep = choifid::validate(c, 1e-9);
    std::cout << "cp: " << yesno(rep.cp) << "\n"
              << "tp: " << yesno(rep.tp) << "\n"
              << "unital: " << yesno(rep.unital) << "\n"
              << "min_eigenvalue: " << fmt(rep.min_eigenvalue) << "\n";
    return (rep.cp && rep.tp) ? kOk : kValidationFailure;
}

int run_avg_fid(const std::string& file) {
    const choifid::Choi c = choifid::read_choi_file(file);
    std::cout << "avg_fidelity_choi: " << fmt(choifid::average_fidelity_choi(c)) << "\n"
              << "avg_fidelity_kraus: " << fmt(choifid::average_fidelity_kraus(choifid::kraus_from_choi(c)))
              << "\n";
    return kOk;
}

int run_min_fid(const std::string& file, const std::string& method, double tol) {
    const choifid::Choi c = choifid::read_choi_file(file);
    choifid::MinFidMethod m;
    if (method == "sdp")
        m = choifid::MinFidMethod::sdp_exact;
    else if (method == "seesaw")
        m = choifid::MinFidMethod::ppt_and_seesaw;
    else if (method == "grid")
        m = choifid::MinFidMethod::grid;
    else if (method == "auto")
        m = c.n == 2 ? choifid::MinFidMethod::sdp_exact : choifid::MinFidMethod::ppt_and_seesaw;
    else
        throw std::invalid_argument("unknown method: " + method);

    const choifid::FidelityReport rep = choifid::min_gate_fidelity(c, m);
    const char* tag = rep.method == choifid::MinFidMethod::sdp_exact ? "sdp_exact"
                      : rep.method == choifid::MinFidMethod::ppt_and_seesaw ? "ppt_and_seesaw"
                                                                            : "grid";
    std::cout << "minimum: " << fmt(rep.minimum) << "\n"
              << "interval: [" << fmt(rep.lower) << ", " << fmt(rep.upper) << "]\n"
              << "lambda1: " << fmt(rep.lambda1) << "\n"
              << "average: " << fmt(rep.average) << "\n"
              << "method: " << tag << "\n";
    if (rep.method == choifid::MinFidMethod::sdp_exact && rep.upper - rep.lower > tol)
        throw std::runtime_error("certified interval wider than the requested tolerance");
    return kOk;
}

int run_equal_fid(const std::string& file_a, const std::string& file_b, double tol) {
    const choifid::Choi a = choifid::read_choi_file(file_a);
    const choifid::Choi b = choifid::read_choi_file(file_b);
    const bool eq = choifid::equal_fidelity(a, b, tol);
    const double diff =
        choifid::frobenius_distance(choifid::compression(a).k, choifid::compression(b).k);
    std::cout << yesno(eq) << "\n"
              << "compression_diff_norm: " << fmt(diff) << "\n";
    return kOk;
}

int run_const_fid(const std::string& file, double tol) {
    const choifid::Choi c = choifid::read_choi_file(file);
    const auto constant = choifid::constant_fidelity(c, tol);
    if (constant)
        std::cout << "constant: " << fmt(*constant) << "\n";
    else
        std::cout << "non-constant\n";
    std::cout << "necessary_condition: " << yesno(choifid::constant_fidelity_necessary(c, tol)) << "\n";
    return kOk;
}

int run_decompose(const std::string& file_q, const std::string& file_r, const std::string& out) {
    const choifid::Choi q = choifid::read_choi_file(file_q);
    const choifid::Choi r = choifid::read_choi_file(file_r);
    const choifid::QubitDecomposition dec = choifid::decompose_qubit(q, r);
    choifid::write_choi_file(out, dec.e);
    std::cout << "r: " << fmt(dec.r) << "\n";
    return kOk;
}

int run_s1norm(const std::string& file, const std::string& mode) {
    const choifid::Choi x = choifid::read_choi_file(file);  // generic operator container
    if (mode == "exact") {
        if (x.n != 2) throw std::invalid_argument("exact mode requires a 2 (x) 2 operator");
        const choifid::S1Result r = choifid::s1_exact_qubit(x.mat);
        std::cout << "value: " << fmt(r.value) << "\n"
                  << "interval: [" << fmt(r.lower) << ", " << fmt(r.upper) << "]\n";
    } else if (mode == "upper") {
        std::cout << "upper: " << fmt(choifid::s1_ppt_upper(x.mat, x.n)) << "\n";
    } else if (mode == "lower") {
        const choifid::S1Result r = choifid::s1_seesaw_lower(x.mat, x.n);
        std::cout << "lower: " << fmt(r.value) << "\n";
        if (r.witness) {
            const auto print_state = [](const char* name, const choifid::PureState& s) {
                std::cout << name << ":";
                for (const auto& a : s.amplitudes)
                    std::cout << ' ' << choifid::detail::format_double(a.real()) << ','
                              << choifid::detail::format_double(a.imag());
                std::cout << "\n";
            };
            print_state("witness_phi", r.witness->first);
            print_state("witness_psi", r.witness->second);
        }
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }
    return kOk;
}

int run_sample(std::size_t n, std::uint64_t count, std::uint64_t seed, const std::string& out,
               unsigned threads) {
    const auto rows = choifid::sample_channels(n, count, seed, threads);
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open file for writing: " + out);
    choifid::write_sample_csv(f, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gate-fidelity analysis of quantum channels via Choi matrices"};
    app.require_subcommand(1);

    std::string file, file_b, out_file, method = "auto", mode = "exact";
    double tol = 1e-8;
    std::size_t dim = 2;
    std::uint64_t count = 1000, seed = 0;
    unsigned threads = 1;

    auto* validate_cmd = app.add_subcommand("validate", "report cp/tp/unital for a Choi file");
    validate_cmd->add_option("file", file, "Choi matrix file")->required();

    auto* avg_cmd = app.add_subcommand("avg-fid", "average gate fidelity via both routes");
    avg_cmd->add_option("file", file, "Choi matrix file")->required();

    auto* min_cmd = app.add_subcommand("min-fid", "minimum gate fidelity with a certified interval");
    min_cmd->add_option("file", file, "Choi matrix file")->required();
    min_cmd->add_option("--method", method, "sdp|seesaw|grid (default: sdp for n=2, seesaw otherwise)");
    min_cmd->add_option("--tol", tol, "required certificate width for the sdp method");

    auto* eq_cmd = app.add_subcommand("equal-fid", "test whether two channels share their gate fidelity");
    eq_cmd->add_option("file_a", file, "first Choi matrix file")->required();
    eq_cmd->add_option("file_b", file_b, "second Choi matrix file")->required();
    eq_cmd->add_option("--tol", tol, "relative Frobenius tolerance");

    auto* const_cmd = app.add_subcommand("const-fid", "detect constant gate fidelity");
    const_cmd->add_option("file", file, "Choi matrix file")->required();
    const_cmd->add_option("--tol", tol, "constancy tolerance");

    auto* dec_cmd = app.add_subcommand("decompose", "qubit equal-fidelity decomposition C_Q - C_R = r (C_E - C_E^dag)");
    dec_cmd->add_option("file_q", file, "Choi matrix file for Q")->required();
    dec_cmd->add_option("file_r", file_b, "Choi matrix file for R")->required();
    dec_cmd->add_option("--out", out_file, "output Choi file for E")->required();

    auto* s1_cmd = app.add_subcommand("s1norm", "S(1)-norm of a PSD operator (exact, upper or lower)");
    s1_cmd->add_option("file", file, "operator in Choi file format")->required();
    s1_cmd->add_option("--mode", mode, "exact|upper|lower");

    auto* sample_cmd = app.add_subcommand("sample", "sample random channels, write avg/min fidelity CSV");
    sample_cmd->add_option("--n", dim, "system dimension")->required();
    sample_cmd->add_option("--count", count, "number of channels")->required();
    sample_cmd->add_option("--seed", seed, "64-bit RNG seed")->required();
    sample_cmd->add_option("--out", out_file, "output CSV path")->required();
    sample_cmd->add_option("--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*validate_cmd) return run_validate(file);
        if (*avg_cmd) return run_avg_fid(file);
        if (*min_cmd) return run_min_fid(file, method, tol);
        if (*eq_cmd) return run_equal_fid(file, file_b, tol);
        if (*const_cmd) return run_const_fid(file, tol);
        if (*dec_cmd) return run_decompose(file, file_b, out_file);
        if (*s1_cmd) return run_s1norm(file, mode);
        if (*sample_cmd) return run_sample(dim, count, seed, out_file, threads);
    } catch (const choifid::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kUsageError;
}
