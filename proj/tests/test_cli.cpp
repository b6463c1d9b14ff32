// Copyright 2026 The idr-lab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "idr/cli.hpp"

namespace idr {
namespace {

using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

json single_line(const RunResult& r) {
  std::istringstream s(r.out);
  std::string line;
  std::getline(s, line);
  EXPECT_FALSE(line.empty());
  std::string rest;
  EXPECT_FALSE(std::getline(s, rest)) << "extra output: " << rest;
  return json::parse(line);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST(Cli, NewtonToCoeffs) {
  auto r = run({"newton", "to-coeffs"}, R"({"values": ["0", "1", "4", "9"]})");
  ASSERT_EQ(r.code, 0) << r.err;
  json j = single_line(r);
  EXPECT_EQ(j["command"], "newton to-coeffs");
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["payload"]["coeffs"], json({"0", "1", "2", "0"}));
}

TEST(Cli, IdrCheckBothAgrees) {
  auto r = run({"idr", "check", "--method", "both"}, R"({"values": [0, 0, 1, 1]})");
  ASSERT_EQ(r.code, 0) << r.err;
  json p = single_line(r)["payload"];
  EXPECT_EQ(p["bruteforce"]["violation"], json({{"a", 2}, {"b", 0}}));
  EXPECT_EQ(p["newton"]["failing_indices"].front(), 2);
  EXPECT_TRUE(p["agree"].get<bool>());
}

TEST(Cli, BigIntegersSurviveExactly) {
  std::string big = "123456789012345678901234567890123456789";
  auto r = run({"newton", "to-coeffs"}, R"({"values": [")" + big + R"("]})");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(single_line(r)["payload"]["coeffs"][0], big);
}

TEST(Cli, StreamsSeveralDocuments) {
  auto r = run({"lcm", "table", "--n", "3"});
  ASSERT_EQ(r.code, 0);
  auto multi = run({"idr", "check", "--method", "newton"}, "{\"values\":[1]}\n{\"values\":[0,0,1]}\n");
  ASSERT_EQ(multi.code, 0);
  std::istringstream s(multi.out);
  std::string l1, l2;
  std::getline(s, l1);
  std::getline(s, l2);
  EXPECT_TRUE(json::parse(l1)["payload"]["newton"]["holds"].get<bool>());
  EXPECT_FALSE(json::parse(l2)["payload"]["newton"]["holds"].get<bool>());
}

TEST(Cli, ReadsInputFile) {
  auto path = std::filesystem::temp_directory_path() / "idr_lab_cli_input.json";
  {
    std::ofstream f(path);
    f << R"({"values": ["1", "3", "9", "27", "81"]})";
  }
  auto r = run({"idr", "project", "--in", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(single_line(r)["payload"]["values"], json({"1", "3", "9", "25", "69"}));
}

TEST(Cli, RationalInputForms) {
  for (std::string coeff : {R"("1/2")", R"({"num": "1", "den": "2"})", R"({"num": "2", "den": "4"})"}) {
    auto r = run({"analyze", "polynomial", "--n", "4"}, R"({"coeffs": ["0", )" + coeff + "]}");
    ASSERT_EQ(r.code, 0) << r.err;
    json p = single_line(r)["payload"];
    EXPECT_FALSE(p["integral_high_coeffs"].get<bool>());
    EXPECT_EQ(p["violation"], json({{"a", 2}, {"b", 0}}));
  }
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"family", "verify", "--family", "hyper", "--a", "-2", "--k", "3", "--r", "1",
                                "--x-max", "12"};
  auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(run(args).out, first.out);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"lcm", "table"}).code, 1);  // --n is required
  EXPECT_EQ(run({"idr", "check", "--method", "magic"}, R"({"values":[1]})").code, 1);
  auto zero = run({"family", "eval", "--a", "0"});
  EXPECT_EQ(zero.code, 1);
  EXPECT_EQ(single_line(zero)["status"], "error");
  EXPECT_NE(zero.err.find("idr-lab"), std::string::npos);
}

TEST(Cli, MalformedJsonExitOne) {
  auto r = run({"newton", "to-coeffs"}, "{\"values\": [1, 2");
  EXPECT_EQ(r.code, 1);
  json j = single_line(r);
  EXPECT_EQ(j["status"], "error");
  EXPECT_NE(j["payload"]["message"].get<std::string>().find("malformed JSON"), std::string::npos);
  EXPECT_EQ(run({"newton", "to-coeffs"}, R"({"values": [1.5]})").code, 1);
  EXPECT_EQ(run({"newton", "to-coeffs"}, R"({"values": []})").code, 1);
  EXPECT_EQ(run({"newton", "to-coeffs"}, "").code, 1);
}

TEST(Cli, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("newton"), std::string::npos);
}

TEST(Cli, MatchesGoldenFiles) {
  std::size_t cases = 0;
  for (const auto& entry : std::filesystem::directory_iterator(IDR_GOLDEN_DIR)) {
    if (entry.path().extension() != ".args") continue;
    auto base = entry.path();
    base.replace_extension();
    std::vector<std::string> args;
    std::istringstream lines(slurp(entry.path()));
    for (std::string l; std::getline(lines, l);)
      if (!l.empty()) args.push_back(l);
    auto in_path = base;
    in_path += ".in";
    std::string input = std::filesystem::exists(in_path) ? slurp(in_path) : "";
    auto out_path = base;
    out_path += ".out";
    auto r = run(args, input);
    EXPECT_EQ(r.code, 0) << base;
    EXPECT_EQ(r.out, slurp(out_path)) << base;
    ++cases;
  }
  EXPECT_GE(cases, 10u);
}

}  // namespace
}  // namespace idr
