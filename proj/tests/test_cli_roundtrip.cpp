#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed binary with the given arguments, capturing stdout.
CmdResult run_cli(const std::string& args) {
  const char* bin = std::getenv("CFSTAMMER_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CFSTAMMER_BIN must point at the cli binary");
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("generate prints family heads") {
  CHECK(run_cli("generate baum-sweet --count 6").out == "2 2 1 2 2 1\n");
  CHECK(run_cli("generate rudin-shapiro --count 8").out == "1 1 1 2 1 1 2 1\n");
  CHECK(run_cli("generate davison --theta golden --k 2 --count 8").out == "1 2 2 1 2 2 1 1\n");
  CHECK(run_cli("generate paperfolding --count 7").out == "1 1 2 1 1 2 2\n");
}

TEST_CASE("analyzing a word file matches analyzing the family directly") {
  const auto direct = run_cli("analyze rudin-shapiro --prefix 2000 --scales 4");
  REQUIRE(direct.exit_code == 0);

  const auto generated = run_cli("generate rudin-shapiro --count 2000");
  REQUIRE(generated.exit_code == 0);
  const auto path = temp_file("cfstammer_roundtrip.txt");
  {
    std::ofstream f(path);
    f << "# regenerated prefix\n" << generated.out;
  }
  const auto from_file =
      run_cli("analyze --input " + path.string() + " --prefix 2000 --scales 4");
  REQUIRE(from_file.exit_code == 0);
  std::filesystem::remove(path);

  const auto a = nlohmann::json::parse(direct.out);
  const auto b = nlohmann::json::parse(from_file.out);
  CHECK(a["family"] == "rudin-shapiro");
  CHECK(b["family"] == "file");
  CHECK(a["prefix_len"] == b["prefix_len"]);
  CHECK(a["head"] == b["head"]);
  CHECK(a["condition"] == b["condition"]);
  CHECK(a["witnesses"] == b["witnesses"]);
  CHECK(a["growth"] == b["growth"]);
  CHECK(a["verdict"] == b["verdict"]);
}

TEST_CASE("analyzing a periodic file succeeds with an inconclusive verdict") {
  const auto path = temp_file("cfstammer_periodic.txt");
  {
    std::ofstream f(path);
    for (int i = 0; i < 300; ++i) f << "1 2 ";
    f << "\n";
  }
  const auto res = run_cli("analyze --input " + path.string() + " --prefix 600");
  std::filesystem::remove(path);
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["verdict"]["rule"] == "Inconclusive");
  REQUIRE_FALSE(j["periodicity"].is_null());
  CHECK(j["periodicity"]["preperiod"] == 0);
  CHECK(j["periodicity"]["period"] == 2);
}

TEST_CASE("bad invocations exit with status 2") {
  CHECK(run_cli("generate nosuch --count 4").exit_code == 2);
  CHECK(run_cli("analyze baum-sweet --prefix 20").exit_code == 2);
  CHECK(run_cli("verify bogus-suite").exit_code == 2);
  CHECK(run_cli("matrix-report --alphabet 1,2").exit_code == 2);
  CHECK(run_cli("generate baum-sweet --no-such-flag 1").exit_code == 2);
}

TEST_CASE("matrix report prints the spectrum") {
  const auto res = run_cli("matrix-report --alphabet 1,2,3");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["rho"].size() == 3);
  CHECK(j["gamma"] == 0.885);
  CHECK(j["threshold"].get<double>() == doctest::Approx(3.2598870056497176).epsilon(1e-12));
}

TEST_CASE("self-check suites pass at reduced sizes") {
  for (const char* args : {"verify floor-identities --theta golden --n-max 5 --cap 2000",
                           "verify continuants --trials 60 --max-len 30",
                           "verify matrix-growth --trials 25",
                           "verify cross-oracles --count 3000"}) {
    const auto res = run_cli(args);
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("PASS") != std::string::npos);
  }
}
