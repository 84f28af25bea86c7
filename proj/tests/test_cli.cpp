#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace bitcred::cli;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code;
  std::string out, err, csv;
};

CliRun run(std::vector<std::string> args) {
  static int counter = 0;
  const fs::path path = fs::temp_directory_path() / ("bitcred_cli_" + std::to_string(::getpid()) + "_" +
                                                     std::to_string(counter++) + ".csv");
  args.insert(args.begin(), "bitcred");
  args.push_back("--out");
  args.push_back(path.string());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  CliRun r{code, out.str(), err.str(), fs::exists(path) ? slurp(path) : ""};
  fs::remove(path);
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesStoredCsv) {
  const auto& c = GetParam();
  const CliRun r = run(c.args);
  ASSERT_EQ(r.code, 0) << r.err;
  const fs::path golden = fs::path(BITCRED_GOLDEN_DIR) / (std::string(c.name) + ".csv");
  ASSERT_TRUE(fs::exists(golden)) << golden;
  EXPECT_EQ(r.csv, slurp(golden));
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"fig1", {"fig1", "--grid-points", "3", "--trials", "100"}},
        GoldenCase{"fig1_endpoints", {"fig1", "--grid-points", "3", "--include-endpoints", "--bits", "4"}},
        GoldenCase{"fig3", {"fig3", "--grid-points", "3", "--trials", "100"}},
        GoldenCase{"fig4", {"fig4", "--grid-points", "3", "--trials", "400"}},
        GoldenCase{"fig5", {"fig5", "--grid-points", "3", "--trials", "100"}},
        GoldenCase{"klevel", {"klevel", "--outcomes", "3", "--trials", "6", "--oracle"}},
        GoldenCase{"transform",
                   {"transform", "--outcomes", "3", "--trials", "50", "--factors", "1:2:30:40:50;2:3:60:70:80"}},
        GoldenCase{"mc_check", {"mc-check", "--reps", "200"}}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(Cli, HeadersAreStable) {
  EXPECT_EQ(parse_csv(run({"fig1", "--grid-points", "2"}).csv)[0],
            (std::vector<std::string>{"p", "prob_frequency", "prob_amplitude", "prob_arcsine"}));
  EXPECT_EQ(parse_csv(run({"fig3", "--grid-points", "2"}).csv)[0],
            (std::vector<std::string>{"p", "endpoint_prob_eta", "endpoint_prob_chi"}));
  EXPECT_EQ(parse_csv(run({"fig4", "--grid-points", "2"}).csv)[0],
            (std::vector<std::string>{"p_j", "n_times_D2_at_N100", "n_times_D2_at_N4000", "asymptote"}));
  EXPECT_EQ(parse_csv(run({"fig5", "--grid-points", "2", "--trials", "50"}).csv)[0],
            (std::vector<std::string>{"p1", "D2_eta1", "D2_eta2", "D2_eta_total", "D2_psi1", "D2_psi2",
                                      "D2_psi_total"}));
}

TEST(Cli, GridPointsControlsRowCount) {
  const auto rows = parse_csv(run({"fig1", "--grid-points", "3"}).csv);
  EXPECT_EQ(rows.size(), 4u);
  EXPECT_EQ(parse_csv(run({"fig3", "--grid-points", "7", "--trials", "50"}).csv).size(), 8u);
}

TEST(Cli, Fig4EndpointRowHasZeroDispersion) {
  const auto rows = parse_csv(run({"fig4", "--grid-points", "1", "--include-endpoints"}).csv);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[3][0], "1");
  EXPECT_EQ(rows[3][1], "0");
  EXPECT_EQ(rows[3][2], "0");
  EXPECT_EQ(rows[3][3], "0");
}

TEST(Cli, Fig5IdentityRotationCopiesEta) {
  const auto rows = parse_csv(run({"fig5", "--grid-points", "9", "--trials", "300", "--rotation", "0,50,110"}).csv);
  for (std::size_t r = 1; r < rows.size(); ++r)
    for (std::size_t c = 1; c <= 3; ++c) EXPECT_EQ(rows[r][c], rows[r][c + 3]);
}

TEST(Cli, TransformMatchesFig5) {
  const auto fig5 = parse_csv(run({"fig5", "--grid-points", "3", "--trials", "200"}).csv);
  // Row 2 is p1 = 0.5.
  const auto t = parse_csv(run({"transform", "--trials", "200", "--dist", "0.5,0.5", "--factors", "1:2:75:50:110"}).csv);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(std::stod(t[1][2]), std::stod(fig5[2][4]));
  EXPECT_EQ(std::stod(t[2][2]), std::stod(fig5[2][5]));
}

TEST(Cli, TransformWithoutFactorsIsIdentity) {
  const CliRun r = run({"transform", "--outcomes", "3", "--trials", "30"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("unitarity residual = 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("conservation residual |D2_after - D2_before| = 0\n"), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
  EXPECT_EQ(run({"mc-check", "--reps", "50", "--seed", "3"}).csv, run({"mc-check", "--reps", "50", "--seed", "3"}).csv);
  EXPECT_EQ(run({"fig5", "--grid-points", "5", "--trials", "70"}).csv,
            run({"fig5", "--grid-points", "5", "--trials", "70"}).csv);
}

TEST(Cli, McCheckSingleReplicationPasses) {
  const CliRun r = run({"mc-check", "--reps", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("20/20 cells"), std::string::npos);
}

TEST(Cli, ErrorsAndExitCodes) {
  const CliRun bad_index = run({"transform", "--outcomes", "2", "--factors", "1:3:10:20:30"});
  EXPECT_EQ(bad_index.code, 2);
  EXPECT_NE(bad_index.err.find("exceeds"), std::string::npos);
  EXPECT_EQ(run({"transform", "--factors", "1:2:10"}).code, 2);
  EXPECT_EQ(run({"transform", "--factors", "2:1:10:20:30"}).code, 2);
  EXPECT_EQ(run({"fig3", "--outcomes", "3"}).code, 2);
  EXPECT_EQ(run({"klevel", "--dist", "0.5,0.6"}).code, 2);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"fig1", "--trials", "0"}).code, 2);

  std::ostringstream out, err;
  const char* argv[] = {"bitcred", "fig1", "--grid-points", "2", "--out", "/nonexistent-dir/x.csv"};
  EXPECT_EQ(main_entry(6, argv, out, err), 3);
  EXPECT_NE(err.str().find("cannot open"), std::string::npos);
}

TEST(Cli, FactorParsing) {
  const auto fs = parse_factors("1:2:90:0:0; 2:4:45:90:180");
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].i, 0u);
  EXPECT_EQ(fs[0].j, 1u);
  EXPECT_EQ(fs[1].j, 3u);
  EXPECT_NEAR(fs[1].rotation.phi, 3.141592653589793, 1e-15);
  EXPECT_THROW(parse_factors("0:1:1:1:1"), std::domain_error);
  EXPECT_THROW(parse_factors("a:b:c:d:e"), std::domain_error);
}

TEST(Cli, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.0), "0");
  std::ostringstream s;
  write_csv({{"a", "b"}, {{"1", "2"}, {"3", "4"}}}, s);
  EXPECT_EQ(s.str(), "a,b\n1,2\n3,4\n");
}
