/*
   Copyright 2026 The perfect-stbc Authors

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

// perfect-stbc: construct, verify and simulate perfect space-time block codes.
// Exit status: 0 success, 1 construction or verification failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pstbc/claims.hpp"

namespace {

using namespace pstbc;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool known_name(const std::string& name) {
    if (name == "golden" || name == "3x3" || name == "4x4" || name == "6x6") return true;
    if (name.rfind("2x2:", 0) != 0) return false;
    std::string rest = name.substr(4);
    const std::string suffix = "-broken";
    if (rest.size() > suffix.size() && rest.ends_with(suffix)) rest.resize(rest.size() - suffix.size());
    return !rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string valid_names_message(const std::string& name) {
    std::string msg = "unknown code '" + name + "'; valid names:";
    for (const auto& v : valid_code_names()) msg += " " + v;
    return msg + " (or a code file written by construct --out)";
}

/// Resolves a code name, "2x2" with --p, or a serialized code file.
CodeSpec resolve_code(const std::string& name, const std::string& p) {
    if (name == "2x2") {
        if (p.empty()) throw UsageError("code 2x2 requires --p <prime>");
        return p == "5" ? make_code_2x2(5) : code_by_name("2x2:" + p);
    }
    if (!p.empty()) throw UsageError("--p applies only to code 2x2");
    if (known_name(name)) return code_by_name(name);
    if (std::filesystem::is_regular_file(name)) {
        std::ifstream in(name);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_code_spec(ss.str());
    }
    throw UsageError(valid_names_message(name));
}

std::string generator_text(const CodeSpec& s) {
    std::ostringstream os;
    os << std::setprecision(6) << std::fixed;
    const Eigen::MatrixXcd r = generator_matrix(s);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        os << "R:";
        for (Eigen::Index k = 0; k < r.cols(); ++k) {
            const auto z = r(i, k);
            os << " " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
        }
        os << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--ebn0: cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("--ebn0: empty list");
    return out;
}

int cmd_construct(const std::string& code, const std::string& p, const std::string& out) {
    CodeSpec s = resolve_code(code, p);
    const std::string text = serialize(s);
    if (!out.empty()) write_file(out, text);
    std::cout << text << generator_text(s);
    return kOk;
}

int cmd_verify(const std::string& code, int radius, const std::string& report) {
    std::ostringstream log;
    bool ok = true;
    if (code == "all") {
        ok = run_acceptance(log);
    } else {
        CodeSpec s = resolve_code(code, "");
        for (const auto& r : verify_code(s, radius)) {
            log << format_claim(r) << "\n";
            ok = ok && r.passed;
        }
    }
    std::cout << log.str();
    if (!report.empty()) write_file(report, log.str());
    std::cout << (ok ? "all claims verified" : "verification FAILED") << std::endl;
    return ok ? kOk : kFailed;
}

int cmd_simulate(const std::string& code, const std::string& constellation, const std::string& ebn0,
                 std::uint64_t seed, std::uint64_t max_codewords, std::uint64_t target_errors, unsigned threads,
                 const std::string& out) {
    SimConfig cfg{resolve_code(code, ""), constellation_by_name(constellation), parse_list(ebn0), max_codewords,
                  target_errors, seed, threads};
    if (cfg.constellation.ring != cfg.code.ring())
        throw UsageError("constellation " + constellation + " does not match the symbol ring of " + cfg.code.name);
    SimResult r = run_cer(cfg);
    std::ostringstream csv;
    write_csv(csv, r);
    write_file(out, csv.str());
    std::cout << csv.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct, verify and simulate perfect space-time block codes"};
    app.require_subcommand(1);

    std::string c_code, c_p, c_out;
    auto* construct = app.add_subcommand("construct", "Build a code and print its specification and generator");
    construct->add_option("code", c_code, "golden, 2x2 (with --p), 2x2:<p>, 3x3, 4x4, 6x6, 2x2:<p>-broken")->required();
    construct->add_option("--p", c_p, "prime for the 2x2 family");
    construct->add_option("--out", c_out, "write the code specification to this file");

    std::string v_code, v_report;
    int v_radius = 1;
    auto* verify = app.add_subcommand("verify", "Check the algebraic claims of a code, or 'all' for the full suite");
    verify->add_option("code", v_code, "code name or 'all'")->required();
    verify->add_option("--radius", v_radius, "symbol box |Re|,|Im| <= radius for determinant searches")
        ->check(CLI::Range(1, 8));
    verify->add_option("--report", v_report, "also write the report to this file");

    std::string s_code, s_con, s_ebn0, s_out;
    std::uint64_t s_seed = 1, s_max = 1000000, s_target = 100;
    unsigned s_threads = 1;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo codeword error rates with ML decoding");
    simulate->add_option("--code", s_code, "code name")->required();
    simulate->add_option("--constellation", s_con, "qam4 qam8 qam16 qam64 hex4 hex8 hex16")->required();
    simulate->add_option("--ebn0", s_ebn0, "comma-separated Eb/N0 values in dB")->required();
    simulate->add_option("--seed", s_seed, "random seed")->required();
    simulate->add_option("--max-codewords", s_max, "codewords per point at most")->check(CLI::PositiveNumber);
    simulate->add_option("--target-errors", s_target, "stop a point after this many codeword errors")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--threads", s_threads, "worker threads")->check(CLI::Range(1u, 256u));
    simulate->add_option("--out", s_out, "CSV output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*construct) return cmd_construct(c_code, c_p, c_out);
        if (*verify) return cmd_verify(v_code, v_radius, v_report);
        if (*simulate) return cmd_simulate(s_code, s_con, s_ebn0, s_seed, s_max, s_target, s_threads, s_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
