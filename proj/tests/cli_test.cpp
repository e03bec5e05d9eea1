#include "spinlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "spinlab/fidelity.hpp"

using namespace spinlab;
using namespace spinlab::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "spinlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : split(text, '\n'))
    if (!line.empty()) rows.push_back(split(line, ','));
  return rows;
}

// Runs the installed binary through the shell and captures stdout.
Run run_binary(const std::string& args) {
  const std::string cmd = std::string(SPINLAB_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out, ""};
}

}  // namespace

TEST(FormatNumber, FifteenSignificantDigits) {
  EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666666667");
  EXPECT_EQ(format_number(0.8), "0.8");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(-0.25), "-0.25");
}

TEST(Table, ReproducesFidelityColumns) {
  const auto r = invoke({"table", "--max-n", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "F_rotation", "F_parallel", "F_optimal"}));
  const double printed[] = {0.6667, 0.7887, 0.8449, 0.8873, 0.9114, 0.9306, 0.9429};
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(rows[n][0], std::to_string(n));
    EXPECT_NEAR(std::stod(rows[n][1]), printed[n - 1], 5e-5);
    EXPECT_NEAR(std::stod(rows[n][2]), (n + 1.0) / (n + 2.0), 1e-14);
    EXPECT_NEAR(std::stod(rows[n][3]), 1.0 / (1.0 + std::ldexp(1.0, -n)), 1e-14);
  }
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  EXPECT_EQ(r.out.back(), '\n');
}

TEST(Table, SingleRowCoincides) {
  const auto r = invoke({"table", "--max-n", "1"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  for (int c = 1; c <= 3; ++c) EXPECT_EQ(rows[1][c], "0.666666666666667");
}

TEST(Table, JsonRowsHaveCsvKeys) {
  const auto r = invoke({"table", "--max-n", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[1]["N"], 2);
  EXPECT_NEAR(j[1]["F_rotation"].get<double>(), (3.0 + std::sqrt(3.0)) / 6.0, 1e-14);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"N", "F_rotation", "F_parallel", "F_optimal"}));
}

TEST(Table, BadRangeIsUsageError) {
  EXPECT_EQ(invoke({"table", "--max-n", "0"}).code, 2);
  EXPECT_EQ(invoke({"table", "--max-n", "1001"}).code, 2);
  EXPECT_EQ(invoke({"table", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(Csv, RoundTripsThroughParseAndFormat) {
  for (const auto& args : {std::vector<std::string>{"table", "--max-n", "12"},
                           std::vector<std::string>{"asymptotic", "--max-n", "20"},
                           std::vector<std::string>{"infogain", "--mode", "closed"}}) {
    const auto r = invoke(args);
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      for (const auto& cell : rows[i]) {
        double v = 0.0;
        std::istringstream in(cell);
        in.imbue(std::locale::classic());
        if (!(in >> v)) continue;
        EXPECT_EQ(format_number(v), cell);
      }
    }
  }
}

TEST(Verify, FastPasses) {
  const auto r = invoke({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto rows = parse_csv(r.out);
  ASSERT_GT(rows.size(), 10u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"check", "residual", "tolerance", "status"}));
  bool saw_triangle_6 = false, saw_triangle_7 = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][3], "PASS") << rows[i][0];
    saw_triangle_6 |= rows[i][0] == "triangle.eigen_vs_poly.N=6";
    saw_triangle_7 |= rows[i][0] == "triangle.eigen_vs_poly.N=7";
  }
  EXPECT_TRUE(saw_triangle_6);
  EXPECT_FALSE(saw_triangle_7);
}

TEST(Verify, CorruptedMatrixFailsTableCheck) {
  VerifyOptions opts;
  opts.m_builder = [](int n) {
    auto m = fidelity::build_m(n);
    for (auto& c : m.offdiag) c = -c;
    return m;
  };
  const auto checks = run_verification(opts);
  bool found = false;
  for (const auto& c : checks) {
    if (c.name == "rotation_optimum.N=2") {
      found = true;
      EXPECT_FALSE(c.pass);
    }
  }
  EXPECT_TRUE(found);

  opts.m_builder = [](int n) {
    auto m = fidelity::build_m(n);
    if (!m.offdiag.empty()) m.offdiag[0] *= 1.01;
    return m;
  };
  for (const auto& c : run_verification(opts))
    if (c.name == "rotation_optimum.N=2") EXPECT_FALSE(c.pass);
}

TEST(Simulate, ReportAndDeterminism) {
  const auto a = invoke({"simulate", "--n", "2", "--povm", "octahedron", "--shots", "20000",
                         "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto b = invoke({"simulate", "--n", "2", "--povm", "octahedron", "--shots", "20000",
                         "--seed", "7"});
  EXPECT_EQ(a.out, b.out);
  const auto rows = parse_csv(a.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "povm", "shots", "seed", "f_hat", "stderr",
                                               "reference", "z"}));
  EXPECT_EQ(rows[1][1], "octahedron");
  EXPECT_EQ(rows[1][6], "0.8");
  EXPECT_LT(std::abs(std::stod(rows[1][7])), 4.0);
}

TEST(Simulate, FewShotsAndGrid) {
  const auto r = invoke({"simulate", "--n", "1", "--povm", "grid", "--shots", "10", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_GT(std::stod(rows[1][5]), 0.01);
  EXPECT_EQ(rows[1][6], "0.666666666666667");
}

TEST(Simulate, InvalidCombinationsAreUsageErrors) {
  EXPECT_EQ(invoke({"simulate", "--n", "3", "--povm", "octahedron"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "1", "--shots", "0"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "0"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--povm", "cube"}).code, 2);
}

TEST(Infogain, ClosedMode) {
  const auto r = invoke({"infogain", "--mode", "closed"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "d", "info_gain"}));
  EXPECT_NEAR(std::stod(rows[2][2]), 0.9180, 5e-5);
}

TEST(Infogain, QuadratureMode) {
  const auto r = invoke({"infogain", "--mode", "quadrature"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_LT(std::stod(rows[1][4]), 1e-6);
}

TEST(Infogain, AlphaScanLocatesMaximum) {
  const auto r = invoke({"infogain", "--mode", "alpha-scan", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  ASSERT_EQ(j.size(), 66u);
  const auto& last = j.back();
  EXPECT_EQ(last["kind"], "max");
  EXPECT_NEAR(last["alpha_over_pi"].get<double>(), 0.2317, 1e-3);
  EXPECT_NEAR(last["info_gain"].get<double>(), 0.8729, 5e-4);
  EXPECT_EQ(invoke({"infogain", "--mode", "alpha"}).code, 2);
}

TEST(Asymptotic, ScanAndHeader) {
  const auto r = invoke({"asymptotic", "--max-n", "200"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "F", "scaled_deficit", "xi_sq"}));
  int headers = 0;
  for (const auto& row : rows) headers += row[0] == "N";
  EXPECT_EQ(headers, 1);
  const double xi_sq = std::stod(rows.back()[3]);
  EXPECT_NEAR(xi_sq, 5.783185962946783, 1e-12);
  EXPECT_NEAR(std::stod(rows.back()[2]) / xi_sq, 1.0, 0.03);
  for (std::size_t i = 3; i < rows.size(); ++i)
    EXPECT_GT(std::stod(rows[i][2]), std::stod(rows[i - 2][2]));
  EXPECT_EQ(invoke({"asymptotic", "--max-n", "9"}).code, 2);
  EXPECT_EQ(invoke({"asymptotic"}).out, r.out);
}

TEST(Output, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "spinlab_cli_test_table.csv";
  std::filesystem::remove(path);
  const auto r = invoke({"table", "--max-n", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), invoke({"table", "--max-n", "3"}).out);
  std::filesystem::remove(path);
}

TEST(Binary, ExitCodes) {
  const auto ok = run_binary("table --max-n 2");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(parse_csv(ok.out).size(), 3u);
  EXPECT_EQ(run_binary("table --max-n 5000").code, 2);
  EXPECT_EQ(run_binary("--help").code, 0);
  for (const char* cmd : {"verify", "infogain", "asymptotic", "simulate --shots 100"})
    EXPECT_EQ(run_binary(cmd).code, 0) << cmd;
}
