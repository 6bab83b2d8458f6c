#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "qfl/scenarios.hpp"
#include "qfl/synthetic.hpp"
#include "qfl/trajectory_io.hpp"

using namespace qfl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("qfl_io_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ErrorCode code_of(const std::string& text, std::string* message = nullptr) {
  try {
    parse_trajectory(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode::InvalidSpec;
}

nlohmann::json diag_sample(double t, double p0, double p1) {
  return {{"t", t},
          {"H", {{"re", {{0.0, 0.0}, {0.0, 1.0}}}}},
          {"rho", {{"re", {{p0, 0.0}, {0.0, p1}}}, {"im", {{0.0, 0.0}, {0.0, 0.0}}}}}};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("round trip reproduces the ledger") {
  ScenarioSpec spec;
  spec.omega = std::numbers::pi;
  spec.steps = 200;
  const auto traj = build_trajectory(spec);
  const auto again = parse_trajectory(format_trajectory(traj));
  REQUIRE(again.size() == traj.size());
  const auto a = analyze(traj);
  const auto b = analyze(again);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(std::abs(a.rows[i].coherence - b.rows[i].coherence) <= 1e-12);
    CHECK(std::abs(a.rows[i].energy - b.rows[i].energy) <= 1e-12);
  }
  CHECK(format_ledger(a) == format_ledger(b));
}

TEST_CASE("complex samples survive a round trip") {
  const auto traj = random_smooth_trajectory({3, 20, 1.0, 2});
  const auto again = parse_trajectory(format_trajectory(traj));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(again[i].t == traj[i].t);
    CHECK(again[i].rho.matrix() == traj[i].rho.matrix());
    CHECK(again[i].h.matrix() == traj[i].h.matrix());
  }
}

TEST_CASE("non-trace-preserving sample is named") {
  nlohmann::json doc;
  for (int i = 0; i < 10; ++i) doc["samples"].push_back(diag_sample(0.1 * i, 0.5, 0.5));
  doc["samples"][7] = diag_sample(0.7, 0.5, 0.4);
  std::string msg;
  CHECK(code_of(doc.dump(), &msg) == ErrorCode::NotTracePreserving);
  CHECK(msg.find("sample 7") != std::string::npos);
}

TEST_CASE("parse errors name the field") {
  nlohmann::json doc;
  doc["samples"] = {diag_sample(0.0, 1.0, 0.0), diag_sample(1.0, 1.0, 0.0)};
  std::string msg;

  auto bad = doc;
  bad["samples"][1].erase("rho");
  CHECK(code_of(bad.dump(), &msg) == ErrorCode::ParseError);
  CHECK(msg.find("samples[1].rho") != std::string::npos);

  bad = doc;
  bad["samples"][0]["H"]["re"][1] = {0.0};
  CHECK(code_of(bad.dump(), &msg) == ErrorCode::ParseError);
  CHECK(msg.find("samples[0].H") != std::string::npos);

  bad = doc;
  bad["samples"][1]["t"] = "late";
  CHECK(code_of(bad.dump(), &msg) == ErrorCode::ParseError);
  CHECK(msg.find("samples[1].t") != std::string::npos);

  bad = doc;
  bad["units"] = {{"energy", -1.0}};
  CHECK(code_of(bad.dump(), &msg) == ErrorCode::ParseError);

  CHECK(code_of("{not json") == ErrorCode::ParseError);
  CHECK(code_of("[]") == ErrorCode::ParseError);

  bad = doc;
  bad["samples"][1]["t"] = 0.0;
  CHECK(code_of(bad.dump()) == ErrorCode::InvalidTrajectory);

  bad = doc;
  bad["samples"][0]["H"]["re"] = {{0.0, 1.0}, {0.0, 1.0}};
  CHECK(code_of(bad.dump(), &msg) == ErrorCode::NotHermitian);
  CHECK(msg.find("sample 0") != std::string::npos);
}

TEST_CASE("ledger CSV") {
  ScenarioSpec spec;
  spec.omega = std::numbers::pi;
  spec.steps = 10;
  const auto text = format_ledger(analyze(build_trajectory(spec)));
  CHECK(text.rfind(std::string(kLedgerHeader) + "\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  CHECK(text == format_ledger(analyze(build_trajectory(spec))));
  // Fields parse back to the exact doubles.
  const auto ledger = analyze(build_trajectory(spec));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  CHECK(std::stod(line.substr(0, line.find(','))) == ledger.rows[1].t);
}

TEST_CASE("files are written atomically") {
  TempDir dir;
  const auto target = dir.path / "ledger.csv";
  write_file_atomic(target, "first\n");
  write_file_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  CHECK_FALSE(fs::exists(dir.path / "ledger.csv.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir.path / "missing" / "x.csv", "x"), Error);
  CHECK_THROWS_AS(read_trajectory_file(dir.path / "nope.json"), Error);

  const auto traj = random_smooth_trajectory({2, 5, 1.0, 3});
  write_trajectory_file(dir.path / "t.json", traj);
  CHECK(read_trajectory_file(dir.path / "t.json").size() == traj.size());
}
