#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "../tools/cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qfl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("qfl_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("run rabi writes a ledger") {
  TempDir dir;
  const auto csv = (dir.path / "rabi.csv").string();
  const auto r = run({"run", "rabi", "--omega", "3.141592653589793", "--steps", "500", "--out", csv});
  CHECK(r.code == 0);
  CHECK(r.out.find("C      = 1") != std::string::npos);
  REQUIRE(fs::exists(csv));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("t,U,W", 0) == 0);
}

TEST_CASE("run se and zeeman") {
  auto r = run({"run", "se", "--gamma", "1", "--steps", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("t in [0, 10]") != std::string::npos);
  CHECK(r.out.find("Q_cal  = -0.0465") != std::string::npos);
  r = run({"run", "zeeman", "--b-field", "2", "--shift-coeff", "0.25"});
  CHECK(r.code == 0);
  CHECK(r.out.find("W      = 0.5") != std::string::npos);
  r = run({"run", "isothermal", "--temperature", "1", "--ee-end", "2", "--steps", "100"});
  CHECK(r.code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"run"}).code == 2);
  CHECK(run({"run", "rabi"}).code == 2);  // missing omega
  CHECK(run({"run", "carnot"}).code == 2);
  CHECK(run({"run", "rabi", "--omega", "x"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto r = run({"run", "rabi", "--steps", "1", "--omega", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("InvalidSpec") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("emit and analyze a trajectory") {
  TempDir dir;
  const auto json = (dir.path / "traj.json").string();
  const auto csv1 = (dir.path / "a.csv").string();
  const auto csv2 = (dir.path / "b.csv").string();
  CHECK(run({"run", "rabi", "--omega", "2", "--steps", "100", "--out", csv1, "--emit-trajectory", json}).code == 0);
  CHECK(run({"analyze", json, "--out", csv2}).code == 0);
  std::ifstream a(csv1), b(csv2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());

  std::ofstream(dir.path / "bad.json") << "{\"samples\": 3}";
  const auto r = run({"analyze", (dir.path / "bad.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("samples") != std::string::npos);
  CHECK(run({"analyze", (dir.path / "absent.json").string()}).code == 1);
}

TEST_CASE("sweep runs one scenario per value") {
  TempDir dir;
  const auto csv = (dir.path / "s.csv").string();
  const auto r = run({"run", "zeeman", "--sweep", "shift=0.1,0.2,0.3", "--out", csv});
  CHECK(r.code == 0);
  for (int i = 0; i < 3; ++i) CHECK(fs::exists(dir.path / ("s_" + std::to_string(i) + ".csv")));
  CHECK(r.out.find("W      = 0.2") != std::string::npos);
  CHECK(run({"run", "zeeman", "--sweep", "nothing=1"}).code == 2);
  CHECK(run({"run", "zeeman", "--sweep", "shift=a"}).code == 2);
}

TEST_CASE("verify reports one line per criterion") {
  const auto r = run({"verify"});
  CHECK(count(r.out, "[PASS]") + count(r.out, "[FAIL]") == 8);
  CHECK((r.code == 0) == (count(r.out, "[FAIL]") == 0));
}

TEST_CASE("verify catches a perturbed reference") {
  const auto r = run({"verify", "--perturb-rabi-reference", "1e-3"});
  CHECK(r.code == 1);
  CHECK(r.out.find("[FAIL] 1.") != std::string::npos);
}
