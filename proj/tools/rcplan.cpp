// rcplan: risk contours, risk-bounded planning, continuous-time verification
// and Monte Carlo checks from YAML scenario files.
//
// Exit codes: 0 success, 1 no solution / unsafe trajectory, 2 input error,
// 3 internal failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcplan/error.hpp"
#include "rcplan/io/manifest.hpp"
#include "rcplan/io/raster_io.hpp"
#include "rcplan/io/scenario_file.hpp"
#include "rcplan/io/trajectory_csv.hpp"
#include "rcplan/oracle/monte_carlo.hpp"
#include "rcplan/planner/planner.hpp"
#include "rcplan/risk/raster.hpp"
#include "rcplan/safety/verify.hpp"

namespace fs = std::filesystem;
using namespace rcplan;

namespace {

constexpr int kOk = 0, kNegative = 1, kInput = 2, kInternal = 3;

/// Marks failures while reading user files; they exit with kInput even
/// when the underlying error is structural.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  planner::Scenario scenario;
  std::string sha256;
};

Loaded load(const std::string& path) {
  try {
    const std::string text = io::read_file(path);
    return {io::parse_scenario(text, path), io::sha256_hex(text)};
  } catch (const StructuralError& e) {
    throw LoadError(e.what());
  }
}

io::TrajectoryFile load_trajectory(const std::string& path, const planner::Scenario& sc) {
  try {
    auto tf = io::read_trajectory_csv(io::read_file(path), path);
    if (tf.vars != sc.state_vars) throw LoadError(path + ": variables do not match the scenario's state_vars");
    return tf;
  } catch (const StructuralError& e) {
    throw LoadError(e.what());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << bytes;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw InputError(std::string(what) + ": not a number: '" + cell + "'");
    }
  }
  return v;
}

// --- contour ---------------------------------------------------------------

struct ContourArgs {
  std::string scenario;
  std::string deltas = "";
  int grid = 101;
  std::optional<double> time;
  std::string out = "rcplan_out";
};

int cmd_contour(const ContourArgs& a) {
  const auto [sc, sha] = load(a.scenario);
  std::vector<double> deltas = a.deltas.empty() ? std::vector<double>{sc.delta} : parse_list(a.deltas, "--delta");
  if (a.grid < 2) throw InputError("--grid must be at least 2");
  fs::create_directories(a.out);
  const auto grid = risk::GridSpec::uniform(sc.workspace_lo, sc.workspace_hi, a.grid);

  io::RunManifest m;
  m.command = "contour";
  m.parameters["deltas"] = deltas;
  m.parameters["grid"] = a.grid;
  if (a.time) m.parameters["time"] = *a.time;
  m.input_path = a.scenario;
  m.input_sha256 = sha;
  for (const auto& o : sc.obstacles) {
    if (o->dynamic() && !a.time)
      throw InputError("obstacle '" + o->name() + "' moves; pass --time");
    for (double d : deltas) {
      const auto c = risk::build_contour(o, d);
      const auto r = risk::rasterize(c, grid, o->dynamic() ? a.time : std::nullopt);
      const std::string stem = "contour_" + o->name() + "_d" + fmt(d);
      write(fs::path(a.out) / (stem + ".csv"), io::raster_csv(r, o->name(), sc.state_vars));
      m.outputs.push_back(stem + ".csv");
      if (grid.dim() == 2) {
        write(fs::path(a.out) / (stem + ".pgm"), io::raster_pgm(r));
        m.outputs.push_back(stem + ".pgm");
      }
      std::printf("obstacle=%s delta=%g members=%zu/%zu\n", o->name().c_str(), d, r.member_count(),
                  r.cells.size());
    }
  }
  m.outputs.push_back("manifest.json");
  write(fs::path(a.out) / "manifest.json", io::to_json(m));
  return kOk;
}

// --- plan ------------------------------------------------------------------

struct PlanArgs {
  std::string scenario;
  std::string mode = "rrt";
  std::uint64_t seed = 0;
  planner::PlannerParams pp;
  bool optimize = false;
  planner::OptimizeParams op;
  std::string out = "rcplan_out";
};

int cmd_plan(PlanArgs a) {
  const auto [sc, sha] = load(a.scenario);
  a.pp.seed = a.seed;
  a.op.seed = a.seed;
  planner::PlanResult r;
  if (a.mode == "rrt") {
    r = planner::plan_rrt_static(sc, a.pp);
  } else if (a.mode == "rrt-dynamic") {
    r = planner::plan_rrt_dynamic(sc, a.pp);
  } else {
    throw InputError("--mode must be rrt or rrt-dynamic");
  }

  io::RunManifest m;
  m.command = "plan";
  m.seed = a.seed;
  m.parameters["mode"] = a.mode;
  m.parameters["max_iterations"] = a.pp.max_iterations;
  m.parameters["step"] = a.pp.step;
  m.parameters["goal_connect_period"] = a.pp.goal_connect_period;
  m.parameters["line_init"] = a.pp.line_init;
  m.parameters["w0"] = a.pp.w0;
  m.parameters["growth"] = a.pp.growth;
  m.parameters["growth_every"] = a.pp.growth_every;
  m.parameters["segments"] = a.pp.segments;
  m.parameters["refine"] = a.pp.refine;
  m.parameters["optimize"] = a.optimize;
  if (a.optimize) {
    m.parameters["optimize_iterations"] = a.op.iterations;
    m.parameters["optimize_step"] = a.op.step;
    m.parameters["optimize_decay"] = a.op.decay;
  }
  m.input_path = a.scenario;
  m.input_sha256 = sha;
  fs::create_directories(a.out);

  std::printf("status=%s iterations=%zu vertices=%zu edge_checks=%zu rejected_edges=%zu\n",
              std::string(planner::to_string(r.status)).c_str(), r.stats.iterations,
              r.stats.vertices, r.stats.edge_checks, r.stats.rejected_edges);
  if (r.solved()) {
    safety::Trajectory traj = *r.trajectory;
    if (a.optimize) traj = planner::optimize_local(traj, sc, a.op);
    // Whatever is written has just been verified from scratch.
    const auto report = safety::verify_trajectory(sc.contours, traj);
    if (!report.safe) throw StructuralError("planner produced a trajectory that fails verification");
    write(fs::path(a.out) / "trajectory.csv", io::write_trajectory_csv(traj, sc.state_vars));
    write(fs::path(a.out) / "safety_report.txt", safety::to_text(report));
    m.outputs = {"trajectory.csv", "safety_report.txt"};
    std::printf("segments=%zu energy=%.9g lower_bound=%.9g\n", traj.segments().size(),
                planner::trajectory_energy(traj), r.energy_lower_bound);
  }
  m.parameters["status"] = std::string(planner::to_string(r.status));
  m.outputs.push_back("manifest.json");
  write(fs::path(a.out) / "manifest.json", io::to_json(m));
  return r.solved() ? kOk : kNegative;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const std::string& scenario, const std::string& trajectory, const std::string& out) {
  const auto [sc, sha] = load(scenario);
  const auto tf = load_trajectory(trajectory, sc);
  const auto report = safety::verify_trajectory(sc.contours, tf.trajectory);
  const std::string text = safety::to_text(report);
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write(out, text);
    std::printf("overall=%s\n", report.safe ? "safe" : "violated");
  }
  return report.safe ? kOk : kNegative;
}

// --- mc --------------------------------------------------------------------

struct McArgs {
  std::string scenario;
  std::string point;
  std::string trajectory;
  std::optional<double> time;
  std::size_t times = 1000;
  int validate_grid = 0;
  std::string deltas;
  oracle::McConfig cfg;
  std::string out;
};

int cmd_mc(const McArgs& a) {
  const auto [sc, sha] = load(a.scenario);
  a.cfg.validate();
  const int modes = !a.point.empty() + !a.trajectory.empty() + (a.validate_grid > 0);
  if (modes != 1) throw InputError("give exactly one of --point, --trajectory, --validate-grid");

  if (!a.point.empty()) {
    const auto x = parse_list(a.point, "--point");
    if (x.size() != sc.dim()) throw InputError("--point needs " + std::to_string(sc.dim()) + " coordinates");
    std::printf("obstacle,p_hat,stderr,n,seed\n");
    for (const auto& o : sc.obstacles) {
      if (o->dynamic() && !a.time) throw InputError("obstacle '" + o->name() + "' moves; pass --time");
      const auto e = oracle::mc_point_risk(*o, x, o->dynamic() ? a.time : std::nullopt, a.cfg);
      std::printf("%s,%.9g,%.9g,%zu,%llu\n", o->name().c_str(), e.p_hat, e.stderr_, e.n,
                  static_cast<unsigned long long>(e.seed));
    }
    return kOk;
  }

  if (!a.trajectory.empty()) {
    const auto tf = load_trajectory(a.trajectory, sc);
    const auto risk = oracle::mc_trajectory_risk(tf.trajectory, sc.obstacles, a.times, a.cfg);
    std::printf("obstacle,max_p_hat,max_stderr,t_at_max,avg_p_hat,avg_stderr,bounded\n");
    for (const auto& p : risk.per_obstacle) {
      std::printf("%s,%.9g,%.9g,%.9g,%.9g,%.9g,%s\n", p.obstacle.c_str(), p.max().p_hat,
                  p.max().stderr_, p.times[p.argmax], p.average, p.average_stderr,
                  p.bounded_by(sc.delta) ? "yes" : "no");
    }
    std::printf("delta=%g within_delta_plus_3_stderr=%s\n", sc.delta,
                risk.bounded_by(sc.delta) ? "yes" : "no");
    return risk.bounded_by(sc.delta) ? kOk : kNegative;
  }

  const std::vector<double> deltas =
      a.deltas.empty() ? std::vector<double>{sc.delta} : parse_list(a.deltas, "--delta");
  const auto grid = risk::GridSpec::uniform(sc.workspace_lo, sc.workspace_hi, a.validate_grid);
  if (!a.out.empty()) fs::create_directories(a.out);
  std::size_t violations = 0;
  for (const auto& o : sc.obstacles) {
    if (o->dynamic() && !a.time) throw InputError("obstacle '" + o->name() + "' moves; pass --time");
    std::vector<risk::RiskContour> contours;
    for (double d : deltas) contours.push_back(risk::build_contour(o, d));
    const auto reports = oracle::validate_contours(contours, grid, o->dynamic() ? a.time : std::nullopt, a.cfg);
    for (const auto& r : reports) {
      std::fputs(oracle::to_text(r).c_str(), stdout);
      violations += r.violations;
      if (!a.out.empty())
        write(fs::path(a.out) / ("validation_" + o->name() + "_d" + fmt(r.delta) + ".csv"), oracle::to_csv(r));
    }
  }
  return violations == 0 ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-bounded continuous-time trajectory planning"};
  app.require_subcommand(1);

  ContourArgs ca;
  auto* contour = app.add_subcommand("contour", "Rasterize risk contours");
  contour->add_option("scenario", ca.scenario, "Scenario file")->required();
  contour->add_option("--delta", ca.deltas, "Comma-separated risk levels (default: scenario delta)");
  contour->add_option("--grid", ca.grid, "Grid points per axis");
  contour->add_option("--time", ca.time, "Time for moving obstacles");
  contour->add_option("--out", ca.out, "Output directory");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Plan a risk-bounded trajectory");
  plan->add_option("scenario", pa.scenario, "Scenario file")->required();
  plan->add_option("--mode", pa.mode, "rrt | rrt-dynamic")->check(CLI::IsMember({"rrt", "rrt-dynamic"}));
  plan->add_option("--seed", pa.seed, "RNG seed")->required();
  plan->add_option("--segments", pa.pp.segments, "Linear pieces (rrt-dynamic)");
  plan->add_option("--max-iterations", pa.pp.max_iterations, "Sampling budget");
  plan->add_option("--step", pa.pp.step, "Steering step (rrt)");
  plan->add_option("--w0", pa.pp.w0, "Initial line-neighborhood half-width");
  plan->add_option("--growth", pa.pp.growth, "Neighborhood growth factor");
  plan->add_option("--growth-every", pa.pp.growth_every, "Failed goal connections per growth");
  plan->add_flag("!--no-line-init", pa.pp.line_init, "Sample the whole workspace from the start");
  plan->add_flag("--refine,!--no-refine", pa.pp.refine, "Shortest-path refinement (rrt)");
  plan->add_flag("--optimize", pa.optimize, "Local energy optimization after planning");
  plan->add_option("--optimize-iterations", pa.op.iterations, "Local optimization moves");
  plan->add_option("--out", pa.out, "Output directory");

  std::string vs, vt, vout;
  auto* verify = app.add_subcommand("verify", "Certify a trajectory against the scenario's contours");
  verify->add_option("scenario", vs, "Scenario file")->required();
  verify->add_option("trajectory", vt, "Trajectory CSV")->required();
  verify->add_option("--out", vout, "Write the report here instead of stdout");

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo collision probabilities");
  mc->add_option("scenario", ma.scenario, "Scenario file")->required();
  mc->add_option("--point", ma.point, "Comma-separated state");
  mc->add_option("--trajectory", ma.trajectory, "Trajectory CSV");
  mc->add_option("--validate-grid", ma.validate_grid, "Validate contours on a grid with this many points per axis");
  mc->add_option("--delta", ma.deltas, "Risk levels for --validate-grid");
  mc->add_option("--time", ma.time, "Time for moving obstacles (--point, --validate-grid)");
  mc->add_option("--times", ma.times, "Time samples along a trajectory");
  mc->add_option("--samples", ma.cfg.samples, "Samples per estimate");
  mc->add_option("--seed", ma.cfg.seed, "RNG seed");
  mc->add_option("--out", ma.out, "Directory for validation CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*contour) return cmd_contour(ca);
    if (*plan) return cmd_plan(pa);
    if (*verify) return cmd_verify(vs, vt, vout);
    if (*mc) return cmd_mc(ma);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  } catch (const LoadError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  } catch (const UnsupportedError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kInternal;
}
