#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "pnetkit/corpus.hpp"

using namespace pnetkit;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PNET_CLI) + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fpath(const char* key) { return fixture_dir() + "/" + fixture(key).file; }

}  // namespace

TEST_CASE("subcommands answer the documented examples") {
  RunResult prr = run("prr " + fpath("deadwmg"));
  CHECK(prr.code == 0);
  CHECK(prr.out.find("NOT EQUAL") != std::string::npos);
  CHECK(prr.out.find("p1=1") != std::string::npos);
  CHECK(prr.out.find("Y=(t=1)") != std::string::npos);

  RunResult reach =
      run("reach --marking \"p1=1,p2=0,p3=2,p4=3\" " + fpath("fig1"));
  CHECK(reach.code == 0);
  CHECK(reach.out.find("REACHABLE via t2 t1 t3") != std::string::npos);

  RunResult live = run("live --method circuit " + fpath("deadwmg") + " --strict");
  // deadwmg is not a circuit; the CLI reports a usage-level error
  CHECK(live.code == 2);
}

TEST_CASE("strict mode distinguishes unknown verdicts") {
  // a pump is detected, so boundedness is a firm no even in strict mode
  RunResult b = run("bounded " + fpath("deadwmg") + " --strict");
  CHECK(b.code == 0);
}

TEST_CASE("json output is schema-tagged and deterministic") {
  for (const char* args : {"classify", "prr", "lrb", "rg"}) {
    std::string cmd = std::string(args) + " --json " + fpath("twoewmg");
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"schema\": \"pnetkit/1\"") != std::string::npos);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("frobnicate x").code == 2);
  CHECK(run("live /nonexistent.pnet").code == 2);
  CHECK(run("reach " + fpath("fig1")).code == 2);  // --marking missing
}

TEST_CASE("reverse prints a parseable net") {
  RunResult r = run("reverse " + fpath("fig1"));
  CHECK(r.code == 0);
  System rev = parse_net(r.out);
  CHECK(rev.net.same_structure(reverse_net(load_fixture("fig1").net)));
}

TEST_CASE("fixture listing includes every corpus entry") {
  RunResult r = run("fixtures");
  CHECK(r.code == 0);
  for (const auto& f : fixtures()) CHECK(r.out.find(f.key) != std::string::npos);
}
