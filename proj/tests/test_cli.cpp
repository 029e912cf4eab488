// Exercises the installed command-line surface: exit codes, formats and the
// point/sweep equivalence. The binary path comes in via ENTDIST_CLI_PATH.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/entdist_cli_out.txt";
  const std::string command =
      std::string(ENTDIST_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(command.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::size_t split_count(const std::string& text) {
  std::size_t lines = 0;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) ++lines;
  return lines;
}

}  // namespace

TEST_CASE("point evaluates and serialises") {
  const auto csv = run_cli("point --eta 0.5 --lambda 0.5 --n 1");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output ==
        "eta,lambda,N,M,p_b,q,p_star,p_prime,p_C,r,ln_r\n"
        "0.5,0.5,1,2,0.5,0.857142857143,0.25,0.25,0.214285714286,2,"
        "0.69314718056\n");

  const auto json = run_cli("point --eta 0.5 --lambda 0.5 --n 1 --format json");
  CHECK(json.exit_code == 0);
  const auto parsed = nlohmann::json::parse(json.output);
  CHECK(parsed["p_b"].get<double>() == 0.5);
  CHECK(parsed["r"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(parsed["r_gt_one"].get<bool>());
}

TEST_CASE("point at a lossless link") {
  const auto r = run_cli("point --eta 1 --lambda 0.5 --n 1 --format json");
  CHECK(r.exit_code == 0);
  const auto parsed = nlohmann::json::parse(r.output);
  CHECK(parsed["p_b"].get<double>() == 1.0);
  CHECK(parsed["q"].get<double>() == 1.0);
}

TEST_CASE("validation failures exit with code 2 and a diagnostic") {
  const auto r = run_cli("point --eta 0.5 --lambda 1.2 --n 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("|lambda| must lie in [0,1)") != std::string::npos);

  CHECK(run_cli("point --eta 1.5 --lambda 0.5 --n 1").exit_code == 2);
  CHECK(run_cli("point --eta 0.5 --lambda 0.5 --n 31").exit_code == 2);
  CHECK(run_cli("point --eta 0.5 --lambda 0.5 --n 1 --format xml").exit_code ==
        2);
  CHECK(run_cli("no-such-command").exit_code == 2);
}

TEST_CASE("unwritable output paths exit with code 3") {
  const auto r =
      run_cli("sweep --out /nonexistent-dir/rows.csv");
  CHECK(r.exit_code == 3);
}

TEST_CASE("a one-cell sweep matches the point output byte for byte") {
  const auto point = run_cli("point --eta 0.5 --lambda 0.5 --n 1");
  const auto sweep = run_cli(
      "sweep --eta 0.5 --lambda 0.5 --n-min 1 --n-max 1");
  CHECK(point.exit_code == 0);
  CHECK(sweep.exit_code == 0);
  CHECK(point.output == sweep.output);
}

TEST_CASE("sweep respects a config file with flag overrides") {
  {
    std::ofstream conf("/tmp/entdist_cli_sweep.conf");
    conf << "eta = 0.5\nlambda = 0.2, 0.5\nn_min = 1\nn_max = 2\n";
  }
  const auto r = run_cli("sweep --config /tmp/entdist_cli_sweep.conf");
  CHECK(r.exit_code == 0);
  CHECK(split_count(r.output) == 1 + 4);  // header + 1*2*2 rows

  const auto overridden = run_cli(
      "sweep --config /tmp/entdist_cli_sweep.conf --lambda 0.3 --n-max 1");
  CHECK(overridden.exit_code == 0);
  CHECK(split_count(overridden.output) == 1 + 1);
}

TEST_CASE("crossover reports the smallest winning N") {
  const auto r = run_cli("crossover --eta 0.5 --lambda 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "eta,lambda,crossover_N,r,ln_r\n0.5,0.5,1,2,0.69314718056\n");

  const auto j = run_cli("crossover --eta 0.75 --lambda 0.75 --format json");
  CHECK(j.exit_code == 0);
  const auto parsed = nlohmann::json::parse(j.output);
  CHECK(parsed["crossover_N"].get<int>() == 2);

  CHECK(run_cli("crossover --eta 0.5 --lambda 0").exit_code == 2);
}

TEST_CASE("oracle-check degenerate cutoff is rejected") {
  const auto r = run_cli("oracle-check --trunc 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("tail budget") != std::string::npos);

  CHECK(run_cli("oracle-check --trunc 51").exit_code == 2);
  CHECK(run_cli("oracle-check --trunc 30 --lambda 0.9").exit_code == 2);
}

TEST_CASE("oracle-check at the identity channel passes") {
  const auto r = run_cli("oracle-check --trunc 12 --eta 1.0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
}
