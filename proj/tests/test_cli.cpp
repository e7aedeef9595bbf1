#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cmmbp/cli.hpp"
#include "test_common.hpp"

using namespace cmmbp;
using testutil::fixture_path;
using testutil::read_file;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("solve prints the oracle result for the four-cycle", "[cli]") {
  const CliResult r =
      run({"solve", fixture_path("cycle4.graph"), "--engine", "brute"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out ==
        "status: Optimal\n"
        "V1: 1 4\n"
        "V2: 2 3\n"
        "cut_edges: (1,2) (3,4)\n"
        "coordinate_sums: 4 8\n"
        "weight: 4\n");
}

TEST_CASE("solve defaults to the exact search engine", "[cli]") {
  const CliResult r = run({"solve", fixture_path("six.graph")});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "status: Optimal\n"
        "V1: 1 5 6\n"
        "V2: 2 3 4\n"
        "cut_edges: (1,2) (1,3) (1,4) (3,5) (3,6) (4,5)\n"
        "coordinate_sums: 17 16\n"
        "weight: 16\n");
}

TEST_CASE("solve with the heuristic engine is self-consistent", "[cli]") {
  const CliResult r =
      run({"solve", fixture_path("six.graph"), "--engine", "ls", "--seed", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.rfind("status: Feasible\n", 0) == 0);

  // the reported weight matches an independent recomputation of the partition
  std::istringstream lines(r.out);
  std::string line, v1_line, weight_line;
  while (std::getline(lines, line)) {
    if (line.rfind("V1:", 0) == 0) v1_line = line.substr(3);
    if (line.rfind("weight: ", 0) == 0) weight_line = line.substr(8);
  }
  std::istringstream vs(v1_line);
  std::vector<int> side;
  int v;
  while (vs >> v) side.push_back(v);
  const Graph g = testutil::load_fixture("six.graph");
  CHECK(format_number(cut_weight(g, side).weight) == weight_line);

  const CliResult again =
      run({"solve", fixture_path("six.graph"), "--engine", "ls", "--seed", "3"});
  CHECK(again.out == r.out);
}

TEST_CASE("solve reports infeasible instances with exit 2", "[cli]") {
  const CliResult r = run({"solve", fixture_path("star6.graph")});
  CHECK(r.code == 2);
  CHECK(r.out == "status: Infeasible\n");
}

TEST_CASE("verify accepts either side of the partition", "[cli]") {
  const CliResult r =
      run({"verify", fixture_path("six.graph"), "--partition", "2,3,4"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "feasible: yes\n"
        "cut_edges: (1,2) (1,3) (1,4) (3,5) (3,6) (4,5)\n"
        "coordinate_sums: 17 16\n"
        "weight: 16\n");
}

TEST_CASE("verify flags a disconnected side with exit 2", "[cli]") {
  const CliResult r =
      run({"verify", fixture_path("cycle4.graph"), "--partition", "1,3"});
  CHECK(r.code == 2);
  CHECK(r.out == "feasible: no\n");
}

TEST_CASE("certificate prints the worked six-vertex witness", "[cli]") {
  const CliResult r =
      run({"certificate", fixture_path("six.graph"), "--partition", "1,5,6"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "p: 1\n"
        "q: 3\n"
        "nonzero variables:\n"
        "x_1 = 1\n"
        "x_5 = 1\n"
        "x_6 = 1\n"
        "t_1_2 = 1\n"
        "t_1_3 = 1\n"
        "t_1_4 = 1\n"
        "t_3_5 = 1\n"
        "t_3_6 = 1\n"
        "t_4_5 = 1\n"
        "y_1_6 = 1\n"
        "y_5_6 = 1\n"
        "y_0_1 = 1\n"
        "z_2_3 = 1\n"
        "z_3_4 = 1\n"
        "z_0_3 = 1\n"
        "u_1_6 = 2\n"
        "u_2_3 = -1\n"
        "u_3_4 = 1\n"
        "u_5_6 = -1\n"
        "u_0_1 = 3\n"
        "u_0_3 = 3\n"
        "U = 16\n"
        "check: 0 violations (tol=0)\n");
}

TEST_CASE("certificate refuses an infeasible partition with exit 2", "[cli]") {
  const CliResult r =
      run({"certificate", fixture_path("cycle4.graph"), "--partition", "1,3"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error:", 0) == 0);
}

TEST_CASE("emit-lp writes the golden model", "[cli]") {
  const std::string golden = read_file(fixture_path("n2_k1.lp"));
  const CliResult to_stdout = run({"emit-lp", fixture_path("n2_k1.graph")});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out == golden);

  const std::string path = temp_file("cmmbp_test_emit.lp");
  const CliResult to_file = run({"emit-lp", fixture_path("n2_k1.graph"), "-o", path});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(read_file(path) == golden);
  std::remove(path.c_str());
}

TEST_CASE("check-solution validates the shipped witness", "[cli]") {
  const CliResult r = run({"check-solution", fixture_path("six.graph"),
                           "--lp-solution", fixture_path("six.sol")});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "feasible: yes\n"
        "V1: 1 5 6\n"
        "V2: 2 3 4\n"
        "cut_edges: (1,2) (1,3) (1,4) (3,5) (3,6) (4,5)\n"
        "coordinate_sums: 17 16\n"
        "weight: 16\n");
}

TEST_CASE("check-solution pinpoints a corrupted flow", "[cli]") {
  std::string sol = read_file(fixture_path("six.sol"));
  const auto pos = sol.find("u_0_1 3");
  REQUIRE(pos != std::string::npos);
  sol.replace(pos, 7, "u_0_1 2");
  const std::string path = temp_file("cmmbp_test_bad.sol");
  {
    std::ofstream f(path);
    f << sol;
  }
  const CliResult r = run(
      {"check-solution", fixture_path("six.graph"), "--lp-solution", path});
  CHECK(r.code == 2);
  CHECK(r.out ==
        "feasible: no\n"
        "violated: c17_1\n"
        "violated: c18_1\n");
  std::remove(path.c_str());
}

TEST_CASE("check-solution rejects listings naming unknown variables", "[cli]") {
  const std::string path = temp_file("cmmbp_test_unknown.sol");
  {
    std::ofstream f(path);
    f << "x_99 1\n";
  }
  const CliResult r = run(
      {"check-solution", fixture_path("six.graph"), "--lp-solution", path});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error:", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("generate emits a parsable connected instance", "[cli]") {
  const CliResult r = run({"generate", "--n", "8", "--p", "0.5", "--k", "2",
                           "--seed", "42"});
  REQUIRE(r.code == 0);
  const Graph g = parse_instance(r.out);
  CHECK(g.n == 8);
  CHECK(g.k == 2);
  std::vector<int> all;
  for (int v = 1; v <= g.n; ++v) all.push_back(v);
  CHECK(is_connected(g, all));

  const CliResult again = run({"generate", "--n", "8", "--p", "0.5", "--k", "2",
                               "--seed", "42"});
  CHECK(again.out == r.out);

  const CliResult odd = run({"generate", "--n", "5", "--p", "0.5"});
  CHECK(odd.code == 1);
  CHECK(odd.err.rfind("error:", 0) == 0);
}

TEST_CASE("usage problems exit with 1", "[cli]") {
  CHECK(run({}).code == 1);
  CHECK(run({"solve"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", fixture_path("six.graph"), "--engine", "magic"}).code == 1);
  CHECK(run({"verify", fixture_path("six.graph"), "--partition", "1,,3"}).code == 1);

  const CliResult missing = run({"solve", "no_such_file.graph"});
  CHECK(missing.code == 1);
  CHECK(missing.err.rfind("error:", 0) == 0);

  const CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
}

TEST_CASE("parse errors surface their line number", "[cli]") {
  const std::string path = temp_file("cmmbp_test_broken.graph");
  {
    std::ofstream f(path);
    f << "4 4 2\n1 2 0 3\n";
  }
  const CliResult r = run({"solve", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("(line 2)") != std::string::npos);
  std::remove(path.c_str());
}
