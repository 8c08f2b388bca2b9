#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rcplan/io/trajectory_csv.hpp"
#include "rcplan/safety/trajectory.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("rcplan_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Run run_cli(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + RCPLAN_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

const std::string kEx3 = rcplan::testing::fixture("example3.scn");

}  // namespace

TEST_CASE("plan then verify, and reruns are byte-identical") {
  const auto d = scratch("roundtrip");
  const auto a = run_cli("plan \"" + kEx3 + "\" --seed 3 --out \"" + (d / "a").string() + "\"", d);
  REQUIRE(a.code == 0);
  CHECK(contains(a.out, "status=solved"));
  for (const char* f : {"trajectory.csv", "safety_report.txt", "manifest.json"}) CHECK(fs::exists(d / "a" / f));

  const auto v = run_cli("verify \"" + kEx3 + "\" \"" + (d / "a" / "trajectory.csv").string() + "\"", d);
  CHECK(v.code == 0);
  CHECK(contains(v.out, "safe"));

  const auto b = run_cli("plan \"" + kEx3 + "\" --seed 3 --out \"" + (d / "b").string() + "\"", d);
  REQUIRE(b.code == 0);
  CHECK(slurp(d / "a" / "trajectory.csv") == slurp(d / "b" / "trajectory.csv"));
  CHECK(slurp(d / "a" / "manifest.json") == slurp(d / "b" / "manifest.json"));
  CHECK(slurp(d / "a" / "safety_report.txt") == slurp(d / "b" / "safety_report.txt"));

  const auto m = run_cli("mc \"" + kEx3 + "\" --trajectory \"" + (d / "a" / "trajectory.csv").string() +
                            "\" --times 200 --samples 10000",
                        d);
  CHECK(m.code == 0);
  CHECK(contains(m.out, "within_delta_plus_3_stderr=yes"));
}

TEST_CASE("dynamic plan verifies through the CLI") {
  const auto d = scratch("dynamic");
  const auto scn = rcplan::testing::fixture("delivery.scn");
  const auto p = run_cli("plan \"" + scn + "\" --mode rrt-dynamic --segments 4 --seed 2 --out \"" + d.string() + "\"", d);
  REQUIRE(p.code == 0);
  CHECK(run_cli("verify \"" + scn + "\" \"" + (d / "trajectory.csv").string() + "\"", d).code == 0);
}

TEST_CASE("a straight line through the obstacle fails verification") {
  const auto d = scratch("through");
  const auto line = rcplan::safety::Trajectory::piecewise_linear({{-1, -1}, {1, 1}}, {0, 1});
  spit(d / "line.csv", rcplan::io::write_trajectory_csv(line, {"x1", "x2"}));
  const auto v = run_cli("verify \"" + kEx3 + "\" \"" + (d / "line.csv").string() + "\"", d);
  CHECK(v.code == 1);
  CHECK(contains(v.out, "violated"));
}

TEST_CASE("input errors exit 2 with a located message") {
  const auto d = scratch("errors");
  CHECK(run_cli("", d).code == 2);
  CHECK(run_cli("plan \"" + kEx3 + "\"", d).code == 2);  // --seed is required
  CHECK(run_cli("plan /nonexistent.scn --seed 1", d).code == 2);
  CHECK(run_cli("plan \"" + kEx3 + "\" --seed 1 --mode sideways", d).code == 2);

  // Goal inside the disc.
  std::string text = slurp(kEx3);
  text.replace(text.find("goal: [1, 1]"), 12, "goal: [0, 0]");
  spit(d / "bad_goal.scn", text);
  const auto g = run_cli("plan \"" + (d / "bad_goal.scn").string() + "\" --seed 1 --out \"" + d.string() + "\"", d);
  CHECK(g.code == 2);
  CHECK(contains(g.err, "'disc'"));

  // Second segment starts away from where the first ended.
  const auto traj = rcplan::safety::Trajectory::piecewise_linear({{-1, -1}, {-1, 1}, {1, 1}}, {0, 0.5, 1});
  std::string csv = rcplan::io::write_trajectory_csv(traj, {"x1", "x2"});
  const auto row = csv.find("\n1,0.5,1,x1,");
  REQUIRE(row != std::string::npos);
  const auto val = row + std::string("\n1,0.5,1,x1,").size();
  csv.replace(val, csv.find(',', val) - val, "-0.5");
  spit(d / "gap.csv", csv);
  const auto v = run_cli("verify \"" + kEx3 + "\" \"" + (d / "gap.csv").string() + "\"", d);
  CHECK(v.code == 2);
  CHECK(contains(v.err, "gap.csv:"));
}

TEST_CASE("no solution exits 1") {
  const auto d = scratch("wall");
  // A slab |x1| < w across the whole workspace separates start from goal.
  spit(d / "wall.scn", R"(format_version: 1
state_vars: [x1, x2]
workspace: {min: [-1, -1], max: [1, 1]}
horizon: [0, 1]
delta: 0.1
start: [-1, 0]
goal: [1, 0]
obstacles:
  - name: wall
    uncertain_vars:
      w: {type: uniform, lower: 0.1, upper: 0.11}
    terms:
      - {coeff: 1, powers: {w: 2}}
      - {coeff: -1, powers: {x1: 2}}
)");
  const auto p = run_cli("plan \"" + (d / "wall.scn").string() + "\" --seed 1 --max-iterations 300 --out \"" +
                            d.string() + "\"",
                        d);
  CHECK(p.code == 1);
  CHECK(contains(p.out, "status=no_solution"));
  CHECK_FALSE(fs::exists(d / "trajectory.csv"));
  CHECK(fs::exists(d / "manifest.json"));
}

TEST_CASE("contour and point Monte Carlo outputs") {
  const auto d = scratch("contour");
  const auto scn = rcplan::testing::fixture("example1.scn");
  const auto c = run_cli("contour \"" + scn + "\" --delta 0.1,0.05 --grid 21 --out \"" + d.string() + "\"", d);
  REQUIRE(c.code == 0);
  CHECK(fs::exists(d / "manifest.json"));
  std::size_t csvs = 0, pgms = 0;
  for (const auto& e : fs::directory_iterator(d)) {
    csvs += e.path().extension() == ".csv";
    pgms += e.path().extension() == ".pgm";
  }
  CHECK(csvs == 2);
  CHECK(pgms == 2);

  const auto m = run_cli("mc \"" + scn + "\" --point 0,0 --samples 1000", d);
  CHECK(m.code == 0);
  CHECK(contains(m.out, "disc,1,"));
  CHECK(run_cli("mc \"" + scn + "\" --point 0,0 --samples 10", d).code == 2);
  CHECK(run_cli("mc \"" + scn + "\" --validate-grid 11 --samples 2000", d).code == 0);
}
