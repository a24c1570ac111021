// Command-line front end: validate, run, compare and sweep scenario files.
//
// Exit codes: 0 success, 1 validation failure or goal not reached,
// 2 tube violation, 3 configuration or usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcnav/config.hpp"
#include "tcnav/io.hpp"
#include "tcnav/report.hpp"
#include "tcnav/sim.hpp"
#include "tcnav/svg.hpp"

namespace fs = std::filesystem;
using namespace tcnav;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitTube = 2;
constexpr int kExitConfig = 3;

constexpr const char* kOutDirEnv = "TCNAV_OUT_DIR";
constexpr const char* kDefaultOutDir = "tcnav_out";

struct Overrides {
  std::string out;
  std::optional<double> dt;
  std::optional<double> duration;
  std::optional<std::uint64_t> seed;
  bool clamp_input = false;
  unsigned threads = 1;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out", o.out, "output directory (default: config, then $TCNAV_OUT_DIR)");
  cmd->add_option("--dt", o.dt, "integration step [s]")->check(CLI::PositiveNumber);
  cmd->add_option("--duration", o.duration, "simulated horizon [s]")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for sampled start positions");
  cmd->add_flag("--clamp-input", o.clamp_input, "saturate |u| at the robot input limit");
}

ScenarioConfig apply(ScenarioConfig cfg, const Overrides& o) {
  if (o.dt) cfg.sim.dt = *o.dt;
  if (o.duration) cfg.sim.duration = *o.duration;
  if (o.seed) cfg.sim.seed = *o.seed;
  if (o.clamp_input) cfg.sim.input_clamp = cfg.scenario.robot.input_limit;
  return cfg;
}

fs::path output_dir(const ScenarioConfig& cfg, const Overrides& o) {
  if (!o.out.empty()) return o.out;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return kDefaultOutDir;
}

/// Loads and fully validates; prints diagnostics and returns nullopt on failure.
std::optional<ScenarioConfig> load_checked(const std::string& path, const Overrides& o) {
  try {
    const std::string text = read_text_file(path);
    ScenarioConfig cfg = apply(parse_config_unchecked(text, fs::path(path).parent_path()), o);
    const auto problems = config_problems(cfg);
    if (!problems.empty()) {
      for (const auto& p : problems) std::cerr << path << ": " << p << '\n';
      return std::nullopt;
    }
    return cfg;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return std::nullopt;
  }
}

double eq_input_bound(const ScenarioConfig& cfg) {
  const Scenario& s = cfg.scenario;
  return input_bound(s.controller, s.planner.alpha, s.robot.offset);
}

int cmd_validate(const std::string& path) {
  ScenarioConfig cfg;
  try {
    cfg = parse_config_unchecked(read_text_file(path), fs::path(path).parent_path());
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return kExitConfig;
  }
  std::vector<std::string> problems = config_problems(cfg);
  const double bound = eq_input_bound(cfg);
  std::printf("input bound (k rho + alpha + d_m + delta) / |l| = %.6g\n", bound);
  std::printf("input limit u_m = %.6g\n", cfg.scenario.robot.input_limit);
  if (bound > cfg.scenario.robot.input_limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "input bound %.6g exceeds input limit %.6g; reduce k, rho, alpha or d_m, or "
                  "increase |l|",
                  bound, cfg.scenario.robot.input_limit);
    problems.emplace_back(buf);
  }
  const double sup = cfg.scenario.disturbance.declared_bound();
  if (sup > cfg.scenario.controller.bound) {
    std::fprintf(stderr, "warning: disturbance bound %.6g exceeds d_m = %.6g\n", sup,
                 cfg.scenario.controller.bound);
  }
  for (const auto& w : validate_world(cfg.scenario.world).warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  if (!problems.empty()) {
    for (const auto& p : problems) std::printf("violation: %s\n", p.c_str());
    return kExitFailed;
  }
  std::printf("ok: %zu obstacles, world valid\n", cfg.scenario.world.obstacles.size());
  return kExitOk;
}

RunMode mode_for(PlannerKind planner, bool reference_only) {
  if (planner == PlannerKind::kPotentialField) {
    return reference_only ? RunMode::kPfReference : RunMode::kPfClosedLoop;
  }
  return reference_only ? RunMode::kReference : RunMode::kClosedLoop;
}

Scenario with_planner(Scenario s, PlannerKind planner) {
  s.planner.mode = planner == PlannerKind::kTangentConeDiscontinuous ? FieldMode::kDiscontinuous
                                                                     : FieldMode::kContinuous;
  return s;
}

int exit_for(const Metrics& m) {
  if (m.tube_violated) return kExitTube;
  return m.reached_goal ? kExitOk : kExitFailed;
}

PlotScene scene_for(const Scenario& s, const Trajectory& tr, bool reference_only) {
  PlotScene scene;
  scene.goal = s.planner.goal;
  scene.starts = {tr.rows.empty() ? s.start : tr.rows.front().reference};
  PlotPath ref;
  ref.color = "#1d4ed8";
  ref.label = "reference x_d";
  PlotPath act;
  act.color = "#111111";
  act.width_px = 1.0;
  act.label = "actual x";
  for (const auto& row : tr.rows) {
    ref.points.push_back(row.reference);
    act.points.push_back(row.point);
  }
  if (!reference_only && tr.tube_radius > 0.0) {
    scene.tube_centerline = ref.points;
    scene.tube_radius = tr.tube_radius;
  }
  scene.paths.push_back(std::move(ref));
  if (!reference_only) scene.paths.push_back(std::move(act));
  return scene;
}

int cmd_run(const std::string& path, const Overrides& o, bool reference_only,
            const std::string& planner_name) {
  const auto planner = planner_from_string(planner_name);
  if (!planner) {
    std::cerr << "unknown planner '" << planner_name << "' (tc, tc-disc, pf)\n";
    return kExitConfig;
  }
  const auto cfg = load_checked(path, o);
  if (!cfg) return kExitConfig;

  const Scenario scenario = with_planner(cfg->scenario, *planner);
  Trajectory tr;
  try {
    tr = run_scenario(scenario, mode_for(*planner, reference_only), scenario.start, cfg->sim);
  } catch (const NavError& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return kExitConfig;
  }
  const Metrics m = compute_metrics(tr);

  const fs::path dir = output_dir(*cfg, o);
  try {
    write_text_file(dir / "trajectory.csv", trajectory_to_csv(tr));
    write_text_file(dir / "metrics.json", metrics_to_json(m, tr));
    PlotScene scene = scene_for(scenario, tr, reference_only);
    scene.title = std::string(to_string(*planner)) + (reference_only ? " reference" : " closed loop");
    write_text_file(dir / "plot.svg", render_svg(scenario.world, scene));
  } catch (const std::exception& e) {
    std::cerr << "cannot write outputs: " << e.what() << '\n';
    return kExitFailed;
  }

  std::printf("status %s, steps %zu, path length %.6g (ref) %.6g (act), max |x_e| %.6g, max |u| %.6g\n",
              to_string(tr.status), tr.rows.size(), m.path_length_reference, m.path_length_actual,
              m.max_tracking_error, m.max_input_norm);
  if (!tr.diagnostic.empty()) std::fprintf(stderr, "%s\n", tr.diagnostic.c_str());
  std::printf("wrote %s\n", dir.string().c_str());
  return exit_for(m);
}

std::vector<Vec2> sweep_starts(const ScenarioConfig& cfg) {
  return sample_free_starts(cfg.scenario.world, cfg.sweep_count, cfg.sim.seed,
                            cfg.sweep_clearance);
}

int cmd_compare(const std::string& path, const Overrides& o, const std::vector<std::string>& names,
                bool closed_loop) {
  std::vector<PlannerKind> planners;
  for (const auto& n : names) {
    const auto p = planner_from_string(n);
    if (!p) {
      std::cerr << "unknown planner '" << n << "' (tc, tc-disc, pf)\n";
      return kExitConfig;
    }
    planners.push_back(*p);
  }
  if (planners.size() < 2) {
    std::cerr << "compare needs at least two planners\n";
    return kExitConfig;
  }
  const auto cfg = load_checked(path, o);
  if (!cfg) return kExitConfig;

  ComparisonReport report;
  try {
    CompareOptions opts;
    opts.closed_loop = closed_loop;
    opts.threads = o.threads;
    report = compare(cfg->scenario, planners, sweep_starts(*cfg), cfg->sim, opts);
  } catch (const NavError& e) {
    std::cerr << "compare failed: " << e.what() << '\n';
    return kExitConfig;
  }

  const fs::path dir = output_dir(*cfg, o);
  try {
    write_text_file(dir / "compare.csv", comparison_csv(report));
    write_text_file(dir / "aggregate.csv", aggregate_csv(report));
    write_text_file(dir / "speed.csv", speed_csv(report));
    write_text_file(dir / "paths.svg",
                    comparison_paths_svg(cfg->scenario.world, cfg->scenario.planner.goal, report));
    write_text_file(dir / "speed.svg", comparison_speed_svg(report, cfg->scenario.planner.alpha));
  } catch (const std::exception& e) {
    std::cerr << "cannot write outputs: " << e.what() << '\n';
    return kExitFailed;
  }

  std::printf("%-8s %5s %8s %12s %10s %10s\n", "planner", "runs", "success", "mean_length",
              "max_speed", "max_|u|");
  for (const auto& a : report.aggregates) {
    std::printf("%-8s %5zu %8.3f %12.6g %10.6g %10.6g\n", to_string(a.planner), a.runs,
                a.success_rate, a.mean_path_length, a.max_speed, a.max_input_norm);
  }
  std::printf("wrote %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_sweep(const std::string& path, const Overrides& o, bool reference_only,
              const std::string& planner_name) {
  const auto planner = planner_from_string(planner_name);
  if (!planner) {
    std::cerr << "unknown planner '" << planner_name << "' (tc, tc-disc, pf)\n";
    return kExitConfig;
  }
  const auto cfg = load_checked(path, o);
  if (!cfg) return kExitConfig;

  const Scenario scenario = with_planner(cfg->scenario, *planner);
  std::vector<Vec2> starts;
  try {
    starts = sweep_starts(*cfg);
  } catch (const NavError& e) {
    std::cerr << "sweep failed: " << e.what() << '\n';
    return kExitConfig;
  }
  const auto results =
      batch_run(scenario, mode_for(*planner, reference_only), starts, cfg->sim, o.threads);

  std::ostringstream csv;
  csv << "start,start_x,start_y,status,reached_goal,tube_violated,path_length_ref,"
         "path_length_act,min_clearance_ref,min_clearance_act,max_tracking_error,max_input_norm,"
         "max_reference_speed,error\n";
  PlotScene scene;
  scene.goal = scenario.planner.goal;
  scene.starts = starts;
  scene.title = std::string(to_string(*planner)) + " sweep";
  int code = kExitOk;
  std::size_t reached = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const RunResult& r = results[i];
    const Metrics& m = r.metrics;
    csv << i << ',' << format_double(starts[i].x()) << ',' << format_double(starts[i].y()) << ',';
    if (!r.ok()) {
      csv << "error,0,0,,,,,,,,\"" << r.error << "\"\n";
      code = std::max(code, kExitFailed);
      continue;
    }
    csv << to_string(r.trajectory.status) << ',' << (m.reached_goal ? 1 : 0) << ','
        << (m.tube_violated ? 1 : 0) << ',' << format_double(m.path_length_reference) << ','
        << format_double(m.path_length_actual) << ',' << format_double(m.min_clearance_reference)
        << ',' << format_double(m.min_clearance_actual) << ','
        << format_double(m.max_tracking_error) << ',' << format_double(m.max_input_norm) << ','
        << format_double(m.max_reference_speed) << ",\n";
    if (m.reached_goal) ++reached;
    code = std::max(code, exit_for(m));
    PlotPath p;
    p.color = m.reached_goal ? "#1d4ed8" : "#dc2626";
    p.width_px = 1.0;
    for (std::size_t k = 0; k < r.trajectory.rows.size(); k += 10) {
      p.points.push_back(reference_only ? r.trajectory.rows[k].reference
                                        : r.trajectory.rows[k].point);
    }
    scene.paths.push_back(std::move(p));
  }

  const fs::path dir = output_dir(*cfg, o);
  try {
    write_text_file(dir / "sweep.csv", csv.str());
    write_text_file(dir / "sweep.svg", render_svg(scenario.world, scene));
  } catch (const std::exception& e) {
    std::cerr << "cannot write outputs: " << e.what() << '\n';
    return kExitFailed;
  }
  std::printf("%zu/%zu runs reached the goal\nwrote %s\n", reached, results.size(),
              dir.string().c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tangent-cone navigation with adaptive tube tracking"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides over;
  bool reference_only = false;
  bool closed_loop = false;
  std::string planner = "tc";
  std::vector<std::string> planners = {"tc", "pf"};

  auto* validate = app.add_subcommand("validate", "check a scenario and print the input bound");
  validate->add_option("config", config_path, "scenario file")->required();

  auto* run = app.add_subcommand("run", "simulate one scenario and write csv, json and svg");
  run->add_option("config", config_path, "scenario file")->required();
  run->add_flag("--reference-only", reference_only, "integrate the planner only");
  run->add_option("--planner", planner, "tc | tc-disc | pf");
  add_overrides(run, over);

  auto* cmp = app.add_subcommand("compare", "run several planners from the same sampled starts");
  cmp->add_option("config", config_path, "scenario file")->required();
  cmp->add_option("--planners", planners, "two or more of tc, tc-disc, pf")->delimiter(',');
  cmp->add_flag("--closed-loop", closed_loop, "compare disturbed closed-loop runs");
  cmp->add_option("--threads", over.threads, "worker threads")->check(CLI::PositiveNumber);
  add_overrides(cmp, over);

  auto* sweep = app.add_subcommand("sweep", "run one planner from sampled starts");
  sweep->add_option("config", config_path, "scenario file")->required();
  sweep->add_flag("--reference-only", reference_only, "integrate the planner only");
  sweep->add_option("--planner", planner, "tc | tc-disc | pf");
  sweep->add_option("--threads", over.threads, "worker threads")->check(CLI::PositiveNumber);
  add_overrides(sweep, over);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (validate->parsed()) return cmd_validate(config_path);
  if (run->parsed()) return cmd_run(config_path, over, reference_only, planner);
  if (cmp->parsed()) return cmd_compare(config_path, over, planners, closed_loop);
  if (sweep->parsed()) return cmd_sweep(config_path, over, reference_only, planner);
  return kExitConfig;
}
