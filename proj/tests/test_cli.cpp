// End-to-end tests of the command-line tool: spawns the built binary and
// checks stdout and exit codes.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

#ifndef QCURV_CLI_PATH
#error "QCURV_CLI_PATH must point at the built tool"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QCURV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  RunResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_file(const std::string& contents) {
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                       : "/tmp") +
                     "/qcurv_cli_test.metric";
  std::ofstream f(path);
  f << contents;
  return path;
}

}  // namespace

TEST_CASE("classify a catalog metric") {
  RunResult r = run("classify --catalog e3 --samples 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("flat") != std::string::npos);
  CHECK(r.out.find("constant_curvature") != std::string::npos);
}

TEST_CASE("bad metric files exit with code 2") {
  std::string path = temp_file("dim = 2\ncoords = u, v\ng[1][1] = 1+*2\n");
  RunResult r = run("classify --file " + path);
  CHECK(r.exit_code == 2);
  RunResult missing = run("classify --file /does/not/exist.metric");
  CHECK(missing.exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("numerical failures exit with code 3") {
  std::string path = temp_file(
      "dim = 2\ncoords = u, v\ng[1][1] = -1\ng[2][2] = 1\n");
  RunResult r = run("classify --file " + path + " --samples 1");
  CHECK(r.exit_code == 3);
  std::remove(path.c_str());
}

TEST_CASE("verify subcommand: PASS and FAIL-free runs exit 0") {
  RunResult r = run("verify PROP --catalog sol --samples 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);

  RunResult na = run("verify T3 --catalog generic4 --samples 2");
  CHECK(na.exit_code == 0);
  CHECK(na.out.find("NOT-APPLICABLE") != std::string::npos);

  RunResult unknown = run("verify NOPE --catalog sol");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("identical configs produce byte-identical JSON across processes") {
  RunResult a = run("classify --catalog nil --samples 6 --seed 7 --json");
  RunResult b = run("classify --catalog nil --samples 6 --seed 7 --json");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  RunResult c = run("classify --catalog nil --samples 6 --seed 8 --json");
  CHECK(a.out != c.out);
}

TEST_CASE("catalog list and export round trip") {
  RunResult list = run("catalog list");
  CHECK(list.exit_code == 0);
  for (const char* name : {"e3", "s3", "h3", "s2xe1", "h2xe1", "nil", "sol",
                           "sl2r", "s2xh2", "warped", "generic4"})
    CHECK(list.out.find(name) != std::string::npos);

  RunResult lj = run("catalog list --json");
  nlohmann::json entries = nlohmann::json::parse(lj.out);
  CHECK(entries.is_array());
  CHECK(entries.size() >= 12);
  CHECK(entries[0].contains("name"));
  CHECK(entries[0].contains("expected_labels"));
  CHECK(entries[0].contains("notes"));

  RunResult exp = run("catalog export sol");
  CHECK(exp.exit_code == 0);
  std::string path = temp_file(exp.out);
  RunResult from_file =
      run("classify --file " + path + " --samples 5 --tol-label 1e-8 --json");
  RunResult from_catalog = run("classify --catalog sol --samples 5 --json");
  nlohmann::json jf = nlohmann::json::parse(from_file.out);
  nlohmann::json jc = nlohmann::json::parse(from_catalog.out);
  CHECK(jf["points"] == jc["points"]);
  CHECK(jf["aggregate"] == jc["aggregate"]);
  std::remove(path.c_str());

  CHECK(run("catalog export nope").exit_code == 2);
}

TEST_CASE("point override") {
  RunResult r = run(
      "classify --catalog e3 --point 0.1,0.2,0.3 --point 0,0,0 --json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["points"].size() == 2);
  CHECK(j["points"][0]["coords"][0].get<double>() == doctest::Approx(0.1));
}
