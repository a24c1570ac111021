#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "support.hpp"
#include "tcnav/config.hpp"
#include "tcnav/io.hpp"
#include "tcnav/report.hpp"

namespace fs = std::filesystem;

namespace tcnav {
namespace {

const fs::path kConfigDir = TCNAV_CONFIG_DIR;
const fs::path kDataDir = TCNAV_TEST_DATA_DIR;

std::string table1_text() { return read_text_file(kConfigDir / "table1.cfg"); }

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const NavError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    return e.what();
  }
  ADD_FAILURE() << "expected a config error";
  return {};
}

TEST(Config, ReferenceFileMatchesLiteralScenario) {
  const ScenarioConfig cfg = load_config(kConfigDir / "table1.cfg");
  const Scenario expected = testing::table1_scenario();
  EXPECT_EQ(cfg.scenario.world, expected.world);
  EXPECT_EQ(cfg.scenario.planner, expected.planner);
  EXPECT_EQ(cfg.scenario.controller, expected.controller);
  EXPECT_EQ(cfg.scenario.robot.offset, expected.robot.offset);
  EXPECT_EQ(cfg.scenario.robot.input_limit, expected.robot.input_limit);
  EXPECT_EQ(cfg.scenario.start, expected.start);
  EXPECT_NEAR(cfg.scenario.disturbance.declared_bound(), 0.01 * std::sqrt(13.0), 1e-15);
  EXPECT_EQ(cfg.sim.seed, 7u);
  EXPECT_EQ(cfg.sweep_count, 20u);
  EXPECT_TRUE(config_problems(cfg).empty());
}

TEST(Config, ArenaFileIsValid) {
  const ScenarioConfig cfg = load_config(kConfigDir / "arena_exp1.cfg");
  EXPECT_TRUE(config_problems(cfg).empty());
  EXPECT_LE(input_bound(cfg.scenario.controller, cfg.scenario.planner.alpha, cfg.scenario.robot.offset),
            cfg.scenario.robot.input_limit);
}

TEST(Config, InfluenceAboveClearanceIsRejected) {
  const std::string msg = config_error(replace_once(table1_text(), "influence = 0.2", "influence = 0.25"));
  EXPECT_NE(msg.find("world"), std::string::npos) << msg;
}

TEST(Config, MissingDisturbanceSectionMeansNone) {
  std::string text = table1_text();
  const auto begin = text.find("[disturbance]");
  const auto end = text.find("[sim]");
  text.erase(begin, end - begin);
  const ScenarioConfig cfg = parse_config(text);
  EXPECT_EQ(cfg.scenario.disturbance.kind(), DisturbanceModel::Kind::kNone);
  EXPECT_EQ(cfg.scenario.disturbance.declared_bound(), 0.0);
}

TEST(Config, UnknownKeyReportsLineAndField) {
  const std::string msg = config_error(replace_once(table1_text(), "beta = 0.005", "beta = 0.005\nbetta = 0.005"));
  EXPECT_NE(msg.find("planner.betta"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line "), std::string::npos) << msg;
}

TEST(Config, MissingKeyReportsField) {
  const std::string msg = config_error(replace_once(table1_text(), "alpha = 0.03\n", ""));
  EXPECT_NE(msg.find("planner.alpha"), std::string::npos) << msg;
}

TEST(Config, SyntaxErrorReportsLine) {
  try {
    load_config(kDataDir / "bad_syntax.cfg");
    FAIL();
  } catch (const NavError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
  }
}

TEST(Config, OverlappingObstaclesAreReported) {
  const ScenarioConfig cfg = parse_config_unchecked(read_text_file(kDataDir / "overlap.cfg"));
  const auto problems = config_problems(cfg);
  ASSERT_FALSE(problems.empty());
  EXPECT_NE(problems.front().find("world"), std::string::npos);
}

TEST(Config, StartInsideMarginIsReported) {
  const std::string msg =
      config_error(replace_once(table1_text(), "start = [-2.6, -1.2]", "start = [-2.0, -0.3]"));
  EXPECT_NE(msg.find("planner.start"), std::string::npos) << msg;
}

TEST(Config, EmitParseRoundTrip) {
  for (const char* name : {"table1.cfg", "arena_exp1.cfg"}) {
    const ScenarioConfig cfg = load_config(kConfigDir / name);
    const std::string emitted = emit_config(cfg);
    EXPECT_EQ(parse_config(emitted), cfg) << name;
    EXPECT_EQ(emit_config(parse_config(emitted)), emitted);
  }
}

TEST(Config, RoundTripKeepsAwkwardDoubles) {
  ScenarioConfig cfg = load_config(kConfigDir / "table1.cfg");
  cfg.scenario.planner.alpha = 0.1 + 0.2;
  cfg.scenario.controller.smoothing = 1.0 / 3.0;
  cfg.sim.duration = 123.456789012345678;
  EXPECT_EQ(parse_config(emit_config(cfg)), cfg);
}

TEST(Csv, RoundTripIsLossless) {
  const Scenario s = testing::table1_scenario();
  SimConfig sim;
  sim.duration = 5.0;
  const Trajectory tr = run_scenario(s, RunMode::kClosedLoop, s.start, sim);
  const std::string csv = trajectory_to_csv(tr);
  EXPECT_EQ(csv.substr(0, kTrajectoryCsvHeader.size()), kTrajectoryCsvHeader);
  const auto rows = trajectory_rows_from_csv(csv);
  ASSERT_EQ(rows.size(), tr.rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& a = rows[k];
    const auto& b = tr.rows[k];
    ASSERT_EQ(a.t, b.t);
    ASSERT_EQ(a.reference, b.reference);
    ASSERT_EQ(a.pose.x, b.pose.x);
    ASSERT_EQ(a.pose.y, b.pose.y);
    ASSERT_EQ(a.pose.theta, b.pose.theta);
    ASSERT_EQ(a.point, b.point);
    ASSERT_EQ(a.xe_norm, b.xe_norm);
    ASSERT_EQ(a.xi, b.xi);
    ASSERT_EQ(a.u, b.u);
    ASSERT_EQ(a.dhat, b.dhat);
    ASSERT_EQ(a.clearance_ref, b.clearance_ref);
    ASSERT_EQ(a.clearance_act, b.clearance_act);
  }
}

TEST(Csv, FormatDoubleIsLossless) {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(Json, MetricsDocumentHasStatus) {
  const Scenario s = testing::table1_scenario();
  SimConfig sim;
  const Trajectory tr = integrate_reference(s.world, s.planner, s.planner.goal, sim);
  const std::string json = metrics_to_json(compute_metrics(tr), tr);
  EXPECT_NE(json.find("\"reached_goal\": true"), std::string::npos) << json;
}

TEST(Compare, NeedsTwoDistinctPlanners) {
  const Scenario s = testing::table1_scenario();
  const std::vector<Vec2> starts = {s.start};
  EXPECT_THROW(compare(s, {PlannerKind::kTangentCone}, starts, SimConfig{}), NavError);
  EXPECT_THROW(compare(s, {PlannerKind::kTangentCone, PlannerKind::kTangentCone}, starts, SimConfig{}),
               NavError);
}

TEST(Compare, RowsAlignAcrossPlanners) {
  const Scenario s = testing::table1_scenario();
  const auto starts = sample_free_starts(s.world, 4, 7);
  const ComparisonReport r =
      compare(s, {PlannerKind::kTangentCone, PlannerKind::kPotentialField}, starts, SimConfig{});
  ASSERT_EQ(r.entries.size(), 2u);
  for (const auto& row : r.entries) {
    ASSERT_EQ(row.size(), starts.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      EXPECT_EQ(row[i].start_index, i);
      ASSERT_FALSE(row[i].path.empty());
      EXPECT_EQ(row[i].path.front(), starts[i]);
    }
  }
  ASSERT_EQ(r.aggregates.size(), 2u);
  EXPECT_EQ(r.aggregates[0].runs, starts.size());
  EXPECT_LE(r.aggregates[0].max_speed, s.planner.alpha + 1e-12);
  // Header plus one line per (planner, start).
  const std::string csv = comparison_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * static_cast<long>(starts.size()));
  EXPECT_EQ(planner_from_string("tc-disc"), PlannerKind::kTangentConeDiscontinuous);
  EXPECT_FALSE(planner_from_string("rrt").has_value());
}

// CLI exit codes, driven through the built binary.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tcnav_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + TCNAV_CLI_PATH + "\" " + args + " > \"" +
                            (dir_ / "stdout.txt").string() + "\" 2> \"" +
                            (dir_ / "stderr.txt").string() + "\"";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  std::string stdout_text() const { return read_text_file(dir_ / "stdout.txt"); }

  fs::path write_config(const std::string& text) const {
    const fs::path p = dir_ / "scenario.cfg";
    write_text_file(p, text);
    return p;
  }

  fs::path out() const { return dir_ / "out"; }

  fs::path dir_;
};

TEST_F(Cli, RunWritesArtifacts) {
  const std::string cfg = (kConfigDir / "table1.cfg").string();
  EXPECT_EQ(run("run \"" + cfg + "\" --out \"" + out().string() + "\""), 0);
  EXPECT_TRUE(fs::exists(out() / "trajectory.csv"));
  EXPECT_TRUE(fs::exists(out() / "metrics.json"));
  EXPECT_TRUE(fs::exists(out() / "plot.svg"));
  const auto rows = trajectory_rows_from_csv(read_text_file(out() / "trajectory.csv"));
  ASSERT_FALSE(rows.empty());
  EXPECT_LT((rows.back().point - Vec2(2.5, 1.0)).norm(), 0.01 + 1e-12);
}

TEST_F(Cli, ReferenceOnlyRun) {
  const std::string cfg = (kConfigDir / "table1.cfg").string();
  EXPECT_EQ(run("run \"" + cfg + "\" --reference-only --out \"" + out().string() + "\""), 0);
  const auto rows = trajectory_rows_from_csv(read_text_file(out() / "trajectory.csv"));
  for (const auto& r : rows) ASSERT_EQ(r.xe_norm, 0.0);
}

TEST_F(Cli, ShortDurationTimesOut) {
  const std::string cfg = (kConfigDir / "table1.cfg").string();
  EXPECT_EQ(run("run \"" + cfg + "\" --duration 5 --out \"" + out().string() + "\""), 1);
}

TEST_F(Cli, PotentialFieldRunLeavesTube) {
  const std::string cfg = (kConfigDir / "table1.cfg").string();
  EXPECT_EQ(run("run \"" + cfg + "\" --planner pf --out \"" + out().string() + "\""), 2);
}

TEST_F(Cli, BadConfigExitsThreeWithoutArtifacts) {
  const std::string cfg = (kDataDir / "bad_syntax.cfg").string();
  EXPECT_EQ(run("run \"" + cfg + "\" --out \"" + out().string() + "\""), 3);
  EXPECT_FALSE(fs::exists(out() / "trajectory.csv"));
  EXPECT_EQ(run("validate \"" + cfg + "\""), 3);
  EXPECT_EQ(run("run \"" + (dir_ / "missing.cfg").string() + "\""), 3);
}

TEST_F(Cli, ValidatePrintsInputBound) {
  EXPECT_EQ(run("validate \"" + (kConfigDir / "table1.cfg").string() + "\""), 0);
  EXPECT_NE(stdout_text().find("1.42"), std::string::npos) << stdout_text();
}

TEST_F(Cli, ValidateRejectsUnreachableInputBound) {
  const fs::path p = write_config(replace_once(table1_text(), "gain = 0.1", "gain = 10.0"));
  EXPECT_EQ(run("validate \"" + p.string() + "\""), 1);
}

TEST_F(Cli, ValidateRejectsOverlappingObstacles) {
  EXPECT_EQ(run("validate \"" + (kDataDir / "overlap.cfg").string() + "\""), 1);
}

TEST_F(Cli, CompareNeedsTwoPlanners) {
  const std::string cfg = (kConfigDir / "table1.cfg").string();
  EXPECT_EQ(run("compare \"" + cfg + "\" --planners tc --out \"" + out().string() + "\""), 3);
  EXPECT_EQ(run("compare \"" + cfg + "\" --planners tc,rrt --out \"" + out().string() + "\""), 3);
}

TEST_F(Cli, UnknownSubcommandIsUsageError) { EXPECT_EQ(run("fly"), 3); }

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const std::string cfg = (kConfigDir / "table1.cfg").string();
  const std::string env = "TCNAV_OUT_DIR=\"" + (dir_ / "env").string() + "\" ";
  const std::string cmd = env + "\"" + TCNAV_CLI_PATH + "\" run \"" + cfg +
                          "\" --reference-only > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(raw));
  EXPECT_EQ(WEXITSTATUS(raw), 0);
  EXPECT_TRUE(fs::exists(dir_ / "env" / "trajectory.csv"));
}

}  // namespace
}  // namespace tcnav
