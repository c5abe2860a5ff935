#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(OTCSS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("negativity single points") {
  auto r = run("negativity --lambda 0 --gamma 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("0,0,0\n") != std::string::npos);
  r = run("negativity --lambda 0.5 --gamma 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("# quantity=log_negativity") == 0);
  const auto line = r.out.substr(r.out.rfind("0.5,0,"));
  CHECK(std::abs(std::stod(line.substr(6)) - 1.0) < 1e-12);
}

TEST_CASE("bell sweep through the CLI") {
  auto r = run("bell --lambda 1 --gamma 0 --j 0.01 --theta pi --phi 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("2.1109213521913") != std::string::npos);
  r = run("bell --lambda 0 --j 0.1 --clip-at-2 --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"bell\": null") != std::string::npos);
}

TEST_CASE("fidelity through the CLI") {
  auto r = run("fidelity --lambda 0 --gamma 0 --r 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.32402713683194") != std::string::npos);
  r = run("fidelity --lambda 0.3 --gamma 0.5 --r 0:1:3 --difference");
  CHECK(r.code == 0);
  CHECK(r.out.find("fidelity_difference") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("negativity --lambda 7").code == 1);
  CHECK(run("negativity --lambda 1:0:5").code == 1);
  CHECK(run("bell --j -1").code == 1);
  CHECK(run("fidelity --r 9").code == 1);
  CHECK(run("negativity --format xml").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("negativity --output /nonexistent-dir/out.csv").code == 3);
  CHECK(run("--version").code == 0);
}

TEST_CASE("verify surfaces a too-small cutoff") {
  const auto r = run("verify --cutoff 12 --lambda 0.8 --gamma 0");
  CHECK(r.code == 2);
  CHECK(r.out.find("too small") != std::string::npos);
  CHECK(run("verify --lambda 6").code == 1);
}

TEST_CASE("verify passes at a single point") {
  const auto r = run("verify --cutoff 30 --lambda 0.3 --gamma 0.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("covariance") != std::string::npos);
}

TEST_CASE("repeated sweeps write identical files") {
  const auto dir = std::filesystem::temp_directory_path() / "otcss_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.csv", b = dir / "b.csv";
  const std::string args = "negativity --lambda 0:1.5:30 --gamma -2:2:30 --output ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string()).code == 0);
  CHECK(!slurp(a).empty());
  CHECK(slurp(a) == slurp(b));
  std::filesystem::remove_all(dir);
}
