#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "rainbow/rainbow.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("rainbow_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the tool with the given arguments; env is prepended verbatim.
Run run(const std::string& args, const std::string& env = "") {
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = env + " '" RAINBOW_CLI_PATH "' " + args + " 2>'" + err.string() + "'";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

json error_of(const Run& r) { return json::parse(r.err); }

}  // namespace

TEST(Cli, InitialIdealTwoByThree) {
  const auto r = run("initial-ideal -n 2 -m 3");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["generators"], 3);
  std::set<std::string> gens(j["ideal"].begin(), j["ideal"].end());
  std::set<std::string> expect;
  for (const auto& m : oracle::monos({"x11*x22", "x11*x23", "x12*x23"})) expect.insert(m.to_string());
  EXPECT_EQ(gens, expect);
  EXPECT_EQ(j["manifest"]["command"], "initial-ideal");
  EXPECT_EQ(j["manifest"]["order"]["tiebreak"], "row-major");
}

TEST(Cli, MoreRowsThanColumnsExitsTwo) {
  const auto r = run("initial-ideal -n 3 -m 2");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(error_of(r)["error"], "InvalidArgument");
}

TEST(Cli, SizeCap) {
  const auto r = run("initial-ideal -n 2 -m 9");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(error_of(r)["error"], "SizeCap");
  const auto forced = run("initial-ideal -n 2 -m 9 --allow-large");
  EXPECT_EQ(forced.status, 0);
  EXPECT_NE(forced.err.find("warning"), std::string::npos);
  EXPECT_EQ(json::parse(forced.out)["generators"], 36);
}

TEST(Cli, SparseWithCertificate) {
  const auto r = run("sparse-en -n 2 -m 4 --certify-cw");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["ranks"], json({1, 6, 8, 3}));
  EXPECT_EQ(j["is_complex"], true);
  EXPECT_EQ(j["is_resolution"], true);
  EXPECT_EQ(j["cw_certificate"]["verdict"], true);
  EXPECT_EQ(j["poset"]["nodes"].size(), 18u);
}

TEST(Cli, SparseDot) {
  const auto r = run("sparse-en -n 2 -m 3 --export dot");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("// manifest ", 0), 0u);
  EXPECT_NE(r.out.find("digraph face_poset"), std::string::npos);
}

TEST(Cli, StrandOfWorkedExample) {
  const auto r = run("strand -n 3 -m 5 --delete '1,2,3;3,4,5'");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["ranks"], json({1, 8, 11, 4}));
  EXPECT_EQ(j["is_linear_strand"], true);
  EXPECT_EQ(j["betti_totals"], json({1, 8, 11, 4}));
  EXPECT_EQ(j["manifest"]["dual"]["facets"], json({{1, 2, 3}, {3, 4, 5}}));
}

TEST(Cli, StrandFromDeltaFileMatchesDelete) {
  const auto delta = rainbow::alexander_dual_complex(rainbow::PureComplex(3, 5, {{1, 2, 3}, {3, 4, 5}}));
  const auto path = scratch() / "delta.json";
  std::ofstream(path) << delta.to_json().dump();
  const auto a = json::parse(run("strand -n 3 -m 5 --delta-file '" + path.string() + "'").out);
  const auto b = json::parse(run("strand -n 3 -m 5 --delete '1,2,3;3,4,5'").out);
  EXPECT_EQ(a["strand"], b["strand"]);
  EXPECT_EQ(run("strand -n 3 -m 5 --delete 1,2,3 --delta-file '" + path.string() + "'").status, 2);
}

TEST(Cli, BettiCsv) {
  const auto r = run("betti -n 3 -m 5 --delete '1,2,3;3,4,5'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# manifest ", 0), 0u);
  EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST(Cli, BadDeleteSyntax) {
  const auto r = run("betti -n 3 -m 5 --delete '1,x,3'");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(error_of(r)["error"], "ParseError");
}

TEST(Cli, FreeSequenceOfWorkedExample) {
  const auto r = run("free-seq -n 3 -m 5 --delete '1,2,3;3,4,5'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["free_sequence"]["found"], true);
}

TEST(Cli, Polarize) {
  const auto r = run("polarize -n 3 -m 5 --delete '1,2,3;3,4,5'");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rep = json::parse(r.out)["report"];
  EXPECT_EQ(rep["polarization"], true);
  EXPECT_EQ(rep["power_of_max"], false);
  const auto csv = run("polarize -n 3 -m 5 --delete '1,2,3;3,4,5' --format csv");
  EXPECT_NE(csv.out.find("\nn,m,r,linear,free_seq,polarization,power_of_max\n3,5,2,1,1,1,0\n"), std::string::npos);
}

TEST(Cli, PolarizeOutsideSetup) {
  const auto r = run("polarize -n 3 -m 5 --delete '1,2,3;1,2,4'");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(error_of(r)["error"], "SetupViolated");
}

TEST(Cli, CwCheck) {
  const auto r = run("cw-check -n 3 -m 4 --random-order --seed 5");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["cw_certificate"]["verdict"], true);
  EXPECT_EQ(j["manifest"]["seed"], 5);
}

TEST(Cli, OrderFile) {
  const auto path = scratch() / "order.json";
  std::ofstream(path) << rainbow::TermOrder(oracle::kLeftWeights).to_json().dump();
  const auto r = run("initial-ideal -n 2 -m 4 --order-file '" + path.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  std::set<std::string> gens(j["ideal"].begin(), j["ideal"].end());
  std::set<std::string> expect;
  for (const auto& m : oracle::left_vertices()) expect.insert(m.to_string());
  EXPECT_EQ(gens, expect);
  EXPECT_EQ(run("initial-ideal -n 2 -m 5 --order-file '" + path.string() + "'").status, 2);
}

TEST(Cli, ExperimentIsDeterministic) {
  const std::string args = "experiment -n 2 -m 4 --samples 6 --seed 9";
  const auto a = run(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 8);
  const auto b = run("experiment -n 2 -m 4 --samples 3 --mode free-vertex-orders --orders 2 --seed 9");
  ASSERT_EQ(b.status, 0) << b.err;
  EXPECT_NE(b.out.find("sample,n,m,r,orders_tried,found\n"), std::string::npos);
}

TEST(Cli, PrimeFromEnvironment) {
  const auto r = run("sparse-en -n 2 -m 3", "RAINBOW_PRIME=2");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["manifest"]["prime"], 2);
  EXPECT_EQ(json::parse(r.out)["is_resolution"], true);
  const auto bad = run("sparse-en -n 2 -m 3", "RAINBOW_PRIME=4");
  EXPECT_EQ(bad.status, 2);
  EXPECT_EQ(error_of(bad)["error"], "NotPrime");
}

TEST(Cli, RerunsAreByteIdentical) {
  const std::string args = "strand -n 3 -m 5 --random-order --seed 7 --delete '1,2,4'";
  const auto a = run(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, run(args).out);
  EXPECT_NE(a.out, run("strand -n 3 -m 5 --random-order --seed 8 --delete '1,2,4'").out);
}

TEST(Cli, OutputFileIsWrittenWhole) {
  const auto path = scratch() / "ideal.json";
  fs::remove(path);
  const auto r = run("initial-ideal -n 2 -m 4 -o '" + path.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), run("initial-ideal -n 2 -m 4").out);
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Cli, UsageErrorsAreNonzero) {
  EXPECT_NE(run("initial-ideal -m 3").status, 0);
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("sparse-en -n 2 -m 3 --export svg").status, 0);
}
