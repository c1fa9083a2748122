#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the lpw_cli binary. The build passes the binary
// location in LPW_CLI_PATH; every case shells out and inspects exit code
// plus captured stdout/stderr.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// unique-enough scratch names; ctest may run suites in parallel
std::string scratch(const char* tag) {
  static int counter = 0;
  std::ostringstream ss;
  ss << "cli_scratch_" << getpid() << "_" << counter++ << "_" << tag;
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  RunResult r;
  std::string out_path = scratch("out"), err_path = scratch("err");
  std::string cmd = std::string("\"") + LPW_CLI_PATH + "\" " + args + " >" +
                    out_path + " 2>" + err_path;
  int rc = std::system(cmd.c_str());
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

const char* kSmallSweep = R"({
  "dim": 1,
  "half_width": 16.0,
  "n_list": [256, 512],
  "s_list": [0.3],
  "p_list": [2.0],
  "gamma_list": [0.0],
  "spaces": ["H"],
  "workers": 1
})";

} // namespace

TEST_CASE("verify: suites pass and report per-check lines") {
  RunResult r = run_cli("verify all");
  CHECK(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 2);
  int checks = 0;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    CHECK(lines[i].rfind("PASS ", 0) == 0);
    CHECK(lines[i].find("value=") != std::string::npos);
    CHECK(lines[i].find("bound=") != std::string::npos);
    ++checks;
  }
  std::ostringstream expect_tail;
  expect_tail << checks << "/" << checks << " checks passed";
  CHECK(lines.back() == expect_tail.str());
}

TEST_CASE("verify: unknown suite exits 2 with a message") {
  RunResult r = run_cli("verify nonsense");
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("usage errors exit 2; help exits 0") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--definitely-not-a-flag").code == 2);
  CHECK(run_cli("sweep").code == 2); // --config is required
  RunResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("sweep") != std::string::npos);
}

TEST_CASE("sweep: csv to stdout, json via --format") {
  std::string cfg = scratch("sweep.json");
  write_file(cfg, kSmallSweep);

  RunResult csv = run_cli("sweep --config " + cfg);
  CHECK(csv.code == 0);
  auto lines = lines_of(csv.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "s,p,gamma,N,family,space,ratio,admissible");
  // 5 ladder members at N=256 plus 7 at N=512, one space
  CHECK(lines.size() == 1 + 12);
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].rfind("0.3,2,0,", 0) == 0);

  RunResult js = run_cli("sweep --config " + cfg + " --format json");
  CHECK(js.code == 0);
  CHECK(js.out.rfind("{", 0) == 0);
  CHECK(js.out.find("\"rows\"") != std::string::npos);
  CHECK(js.out.find("\"ladder_j00\"") != std::string::npos);

  std::remove(cfg.c_str());
}

TEST_CASE("sweep: --out writes the same bytes as stdout") {
  std::string cfg = scratch("sweep.json"), out = scratch("rows.csv");
  write_file(cfg, kSmallSweep);

  RunResult direct = run_cli("sweep --config " + cfg);
  RunResult filed = run_cli("sweep --config " + cfg + " --out " + out);
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(out) == direct.out);

  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST_CASE("sweep: worker count never changes the bytes") {
  std::string cfg = scratch("sweep.json");
  write_file(cfg, kSmallSweep);
  RunResult w1 = run_cli("sweep --config " + cfg + " --workers 1");
  RunResult w8 = run_cli("sweep --config " + cfg + " --workers 8");
  CHECK(w1.code == 0);
  CHECK(w8.code == 0);
  CHECK(w1.out == w8.out);
  // --seed is accepted (the ladder itself is deterministic)
  CHECK(run_cli("sweep --config " + cfg + " --seed 9").code == 0);
  std::remove(cfg.c_str());
}

TEST_CASE("sweep: config and format errors exit 2") {
  RunResult missing = run_cli("sweep --config no_such_file.json");
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("error: ", 0) == 0);

  std::string cfg = scratch("sweep.json");
  write_file(cfg, kSmallSweep);
  CHECK(run_cli("sweep --config " + cfg + " --format xml").code == 2);
  std::remove(cfg.c_str());

  std::string bad = scratch("bad.json");
  write_file(bad, R"({"spaces": ["X3"]})");
  RunResult r = run_cli("sweep --config " + bad);
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: ", 0) == 0);
  std::remove(bad.c_str());

  std::string mangled = scratch("mangled.json");
  write_file(mangled, "{not json");
  CHECK(run_cli("sweep --config " + mangled).code == 2);
  std::remove(mangled.c_str());
}

TEST_CASE("norm: prints one labelled value per requested space") {
  std::string cfg = scratch("norm.json");
  write_file(cfg, R"({
    "dim": 1, "half_width": 16.0, "n": 512,
    "field": {"kind": "gaussian", "center": [0.5], "width": 1.0},
    "spaces": [
      {"kind": "Lp", "p": 2.0},
      {"kind": "H", "s": 0.3, "p": 2.0},
      {"kind": "B", "s": 0.3, "p": 2.0, "q": 1.0, "gamma": 0.5},
      {"kind": "F", "s": 0.3, "p": 2.0, "q": "inf", "gamma": 0.5},
      {"kind": "W", "m": 1, "p": 2.0}
    ]
  })");

  RunResult r = run_cli("norm --config " + cfg);
  CHECK(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  const char* prefixes[] = {"Lp(", "H(", "B(", "F(", "W("};
  for (int i = 0; i < 5; ++i) {
    CHECK(lines[i].rfind(prefixes[i], 0) == 0);
    double v = std::strtod(lines[i].c_str() + lines[i].rfind(' ') + 1, nullptr);
    CHECK(v > 0.0);
  }

  // repeat runs are bit-identical
  RunResult again = run_cli("norm --config " + cfg);
  CHECK(again.out == r.out);
  std::remove(cfg.c_str());
}

TEST_CASE("norm: a config without a field section exits 2") {
  std::string cfg = scratch("norm.json");
  write_file(cfg, R"({"dim": 1, "spaces": [{"kind": "Lp"}]})");
  RunResult r = run_cli("norm --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: ", 0) == 0);
  std::remove(cfg.c_str());
}
