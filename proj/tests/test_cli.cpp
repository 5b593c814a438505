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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pstbc/code_constructions.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PSTBC_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("pstbc_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, VerifyGoldenRadiusOne) {
    auto r = run("verify golden --radius 1");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("min |det|^2 = 1/5"), std::string::npos) << r.out;
}

TEST(Cli, VerifyWritesReport) {
    const auto path = temp_path("report.txt");
    auto r = run("verify 3x3 --radius 1 --report " + path);
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(slurp(path).find("min |det|^2 = 1/49"), std::string::npos);
}

TEST(Cli, BrokenCodeFailsVerification) {
    auto r = run("verify 2x2:17-broken");
    EXPECT_EQ(r.status, 1) << r.out;
    EXPECT_NE(r.out.find("zero determinant found: yes"), std::string::npos);
}

TEST(Cli, ConstructRejectsP17) {
    auto r = run("construct 2x2 --p 17");
    EXPECT_EQ(r.status, 1) << r.out;
    EXPECT_NE(r.out.find("5 mod 8"), std::string::npos) << r.out;
    EXPECT_EQ(run("construct 2x2:17-broken").status, 0);
}

TEST(Cli, ConstructRoundTripsThroughFile) {
    const auto path = temp_path("code13.txt");
    auto r = run("construct 2x2 --p 13 --out " + path);
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("R:"), std::string::npos);
    auto spec = pstbc::parse_code_spec(slurp(path));
    EXPECT_EQ(spec.name, "2x2:13");
    EXPECT_EQ(pstbc::serialize(spec), pstbc::serialize(pstbc::make_code_2x2(13)));
    EXPECT_EQ(run("verify " + path).status, 0);
}

TEST(Cli, UsageErrors) {
    auto r = run("construct nope");
    EXPECT_EQ(r.status, 2);
    for (const char* name : {"golden", "2x2:p", "3x3", "4x4", "6x6", "2x2:17-broken"})
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("verify").status, 2);
    EXPECT_EQ(run("construct 2x2").status, 2);
    EXPECT_EQ(run("simulate --code golden --constellation qam4 --ebn0 4,x --seed 1 --out /dev/null").status, 2);
    EXPECT_EQ(run("simulate --code golden --constellation hex4 --ebn0 4 --seed 1 --out /dev/null").status, 2);
}

TEST(Cli, SimulateWritesCsv) {
    const auto path = temp_path("r.csv");
    auto r = run("simulate --code golden --constellation qam4 --ebn0 4,8,12 --seed 1 --max-codewords 20000 --out " +
                 path);
    EXPECT_EQ(r.status, 0) << r.out;
    std::istringstream csv(slurp(path));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "code,constellation,ebn0_db,sent,errors,cer,seconds");
    EXPECT_EQ(lines[1].rfind("golden,qam4,4,", 0), 0u);
    EXPECT_EQ(lines[3].rfind("golden,qam4,12,", 0), 0u);
}

TEST(Cli, SimulateIsReproducible) {
    const auto a = temp_path("a.csv"), b = temp_path("b.csv");
    const std::string args = "simulate --code 3x3 --constellation hex4 --ebn0 2,6 --seed 5 --max-codewords 3000 --out ";
    ASSERT_EQ(run(args + a).status, 0);
    ASSERT_EQ(run(args + b + " --threads 2").status, 0);
    auto strip = [](const std::string& text) {
        // drop the trailing wall-clock column
        std::istringstream in(text);
        std::string line, out;
        while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
        return out;
    };
    EXPECT_EQ(strip(slurp(a)), strip(slurp(b)));
}
