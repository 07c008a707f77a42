// End-to-end checks of the CLI binary: exit codes, formats, determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef QPENT_CLI_BIN
#error "QPENT_CLI_BIN must point at the built qpent binary"
#endif

namespace {

int run(const std::string& args, const std::string& out_file) {
  const std::string cmd =
      std::string(QPENT_CLI_BIN) + " " + args + " >" + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* tag) {
    path = std::string("cli_out_") + tag + ".tmp";
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("exit codes") {
  TempFile out("codes");
  CHECK(run("rogers --a 0.5 --z 0.5", out.path) == 0);
  CHECK(run("verify-pentagon --degree -1", out.path) == 2);
  CHECK(run("eval --q 1.5", out.path) == 2);
  CHECK(run("definitely-not-a-command", out.path) == 2);
  CHECK(run("", out.path) == 2);
  CHECK(run("verify-e7 --max-m 4 --max-n 4", out.path) == 0);
}

TEST_CASE("rogers text output contains the residual") {
  TempFile out("rogers");
  REQUIRE(run("rogers --a 0.5 --z 0.5", out.path) == 0);
  const std::string text = slurp(out.path);
  CHECK(text.find("rogers residual") != std::string::npos);
  CHECK(text.find("RESULT: PASS") != std::string::npos);
}

TEST_CASE("csv output is byte-identical across runs") {
  TempFile out1("det1"), out2("det2");
  const std::string args = "limit-scan --a 0.5 --z 0.5 --k-min 4 --k-max 9 --format csv";
  REQUIRE(run(args, out1.path) == 0);
  REQUIRE(run(args, out2.path) == 0);
  const std::string first = slurp(out1.path);
  CHECK(!first.empty());
  CHECK(first == slurp(out2.path));
  CHECK(first.rfind("k,q,h,lnSg,L,R,target_F,target_R,residual_L,residual_R\n", 0) == 0);
  // 6 records + header
  CHECK(std::count(first.begin(), first.end(), '\n') == 7);
}

TEST_CASE("json output carries the config echo") {
  TempFile out("json");
  REQUIRE(run("bounds --q 0.9 --a 0.5 --z 0.5 --x 0.25 --format json", out.path) == 0);
  const std::string text = slurp(out.path);
  CHECK(text.find("\"command\":\"bounds\"") != std::string::npos);
  CHECK(text.find("\"version\":") != std::string::npos);
  CHECK(text.find("\"tol_rel\":") != std::string::npos);
  CHECK(text.find("\"all_pass\":true") != std::string::npos);
}

TEST_CASE("--out writes the same bytes as stdout") {
  TempFile via_stdout("o1"), via_flag("o2");
  REQUIRE(run("eval --q 0.9 --a 0.4 --z 0.6 --x 0.3 --format csv", via_stdout.path) == 0);
  REQUIRE(run("eval --q 0.9 --a 0.4 --z 0.6 --x 0.3 --format csv --out " + via_flag.path,
              std::string("cli_ignore.tmp")) == 0);
  CHECK(slurp(via_stdout.path) == slurp(via_flag.path));
  std::remove("cli_ignore.tmp");
}

TEST_CASE("bad output path exits with a usage error") {
  TempFile out("badpath");
  CHECK(run("rogers --a 0.5 --z 0.5 --out /nonexistent-dir/x/y.txt", out.path) == 2);
}
