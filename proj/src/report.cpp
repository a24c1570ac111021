#include "tcnav/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tcnav/io.hpp"
#include "tcnav/svg.hpp"

namespace tcnav {
namespace {

const char* color_for(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kTangentCone: return "#1d4ed8";
    case PlannerKind::kTangentConeDiscontinuous: return "#059669";
    case PlannerKind::kPotentialField: return "#dc2626";
  }
  return "#000000";
}

RunMode mode_for(PlannerKind kind, bool closed_loop) {
  if (kind == PlannerKind::kPotentialField) {
    return closed_loop ? RunMode::kPfClosedLoop : RunMode::kPfReference;
  }
  return closed_loop ? RunMode::kClosedLoop : RunMode::kReference;
}

ComparisonEntry summarize(std::size_t index, const RunResult& result, bool closed_loop,
                          std::size_t decimation) {
  ComparisonEntry e;
  e.start_index = index;
  if (!result.ok()) {
    e.error = result.error;
    e.status = RunStatus::kOutOfDomain;
    e.path_length = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  const Trajectory& tr = result.trajectory;
  e.status = tr.status;
  e.error = tr.diagnostic;
  e.metrics = result.metrics;
  e.path_length = closed_loop ? e.metrics.path_length_actual : e.metrics.path_length_reference;
  for (std::size_t i = 0; i < tr.rows.size(); ++i) {
    if (i % decimation != 0 && i + 1 != tr.rows.size()) continue;
    const TrajectoryRow& row = tr.rows[i];
    e.speed_t.push_back(row.t);
    e.speed.push_back(row.tau.norm());
    e.path.push_back(closed_loop ? row.point : row.reference);
  }
  return e;
}

}  // namespace

const char* to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kTangentCone: return "tc";
    case PlannerKind::kTangentConeDiscontinuous: return "tc-disc";
    case PlannerKind::kPotentialField: return "pf";
  }
  return "?";
}

std::optional<PlannerKind> planner_from_string(std::string_view name) {
  if (name == "tc") return PlannerKind::kTangentCone;
  if (name == "tc-disc") return PlannerKind::kTangentConeDiscontinuous;
  if (name == "pf") return PlannerKind::kPotentialField;
  return std::nullopt;
}

ComparisonReport compare(const Scenario& scenario, const std::vector<PlannerKind>& planners,
                         const std::vector<Vec2>& starts, const SimConfig& config,
                         const CompareOptions& options) {
  if (planners.size() < 2) {
    throw NavError(ErrorKind::kConfig, "compare needs at least two planners");
  }
  for (std::size_t i = 0; i < planners.size(); ++i) {
    for (std::size_t j = i + 1; j < planners.size(); ++j) {
      if (planners[i] == planners[j]) {
        throw NavError(ErrorKind::kConfig,
                       std::string("planner listed twice: ") + to_string(planners[i]));
      }
    }
  }
  const std::size_t decimation = std::max<std::size_t>(1, options.decimation);

  ComparisonReport report;
  report.planners = planners;
  report.starts = starts;
  report.closed_loop = options.closed_loop;
  for (const PlannerKind kind : planners) {
    Scenario s = scenario;
    s.planner.mode = kind == PlannerKind::kTangentConeDiscontinuous ? FieldMode::kDiscontinuous
                                                                    : FieldMode::kContinuous;
    const auto results =
        batch_run(s, mode_for(kind, options.closed_loop), starts, config, options.threads);

    std::vector<ComparisonEntry> row;
    row.reserve(results.size());
    PlannerAggregate agg;
    agg.planner = kind;
    agg.runs = results.size();
    double length_sum = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      row.push_back(summarize(i, results[i], options.closed_loop, decimation));
      const ComparisonEntry& e = row.back();
      if (!results[i].ok()) continue;
      agg.max_speed = std::max(agg.max_speed, e.metrics.max_reference_speed);
      agg.max_input_norm = std::max(agg.max_input_norm, e.metrics.max_input_norm);
      if (e.metrics.reached_goal) {
        ++agg.reached;
        length_sum += e.path_length;
      }
    }
    agg.mean_path_length = agg.reached > 0 ? length_sum / static_cast<double>(agg.reached)
                                           : std::numeric_limits<double>::quiet_NaN();
    agg.success_rate =
        agg.runs > 0 ? static_cast<double>(agg.reached) / static_cast<double>(agg.runs) : 0.0;
    report.entries.push_back(std::move(row));
    report.aggregates.push_back(agg);
  }
  return report;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "planner,start,start_x,start_y,status,reached_goal,path_length,min_clearance,max_speed,"
        "max_input_norm,max_tracking_error,settling_time\n";
  for (std::size_t p = 0; p < report.planners.size(); ++p) {
    for (const ComparisonEntry& e : report.entries[p]) {
      const Vec2& s = report.starts[e.start_index];
      const Metrics& m = e.metrics;
      const double clearance =
          report.closed_loop ? m.min_clearance_actual : m.min_clearance_reference;
      os << to_string(report.planners[p]) << ',' << e.start_index << ',' << format_double(s.x())
         << ',' << format_double(s.y()) << ',' << to_string(e.status)
         << ',' << (m.reached_goal ? 1 : 0) << ',' << format_double(e.path_length) << ','
         << format_double(clearance) << ',' << format_double(m.max_reference_speed) << ','
         << format_double(m.max_input_norm) << ',' << format_double(m.max_tracking_error) << ','
         << (m.settling_time ? format_double(*m.settling_time) : std::string()) << '\n';
    }
  }
  return os.str();
}

std::string aggregate_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "planner,runs,reached,mean_path_length,success_rate,max_speed,max_input_norm\n";
  for (const PlannerAggregate& a : report.aggregates) {
    os << to_string(a.planner) << ',' << a.runs << ',' << a.reached << ','
       << format_double(a.mean_path_length) << ',' << format_double(a.success_rate) << ','
       << format_double(a.max_speed) << ',' << format_double(a.max_input_norm) << '\n';
  }
  return os.str();
}

std::string speed_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os << "planner,start,t,speed\n";
  for (std::size_t p = 0; p < report.planners.size(); ++p) {
    for (const ComparisonEntry& e : report.entries[p]) {
      for (std::size_t i = 0; i < e.speed.size(); ++i) {
        os << to_string(report.planners[p]) << ',' << e.start_index << ','
           << format_double(e.speed_t[i]) << ',' << format_double(e.speed[i]) << '\n';
      }
    }
  }
  return os.str();
}

std::string comparison_paths_svg(const World& world, const Vec2& goal,
                                 const ComparisonReport& report) {
  PlotScene scene;
  scene.goal = goal;
  scene.starts = report.starts;
  scene.title = "path comparison";
  for (std::size_t p = 0; p < report.planners.size(); ++p) {
    bool first = true;
    for (const ComparisonEntry& e : report.entries[p]) {
      if (e.path.empty()) continue;
      PlotPath path;
      path.points = e.path;
      path.color = color_for(report.planners[p]);
      path.width_px = 1.2;
      path.dashed = report.planners[p] == PlannerKind::kTangentConeDiscontinuous;
      if (first) path.label = to_string(report.planners[p]);
      first = false;
      scene.paths.push_back(std::move(path));
    }
  }
  return render_svg(world, scene);
}

std::string comparison_speed_svg(const ComparisonReport& report, double alpha) {
  std::vector<TimeSeries> series;
  for (std::size_t p = 0; p < report.planners.size(); ++p) {
    bool first = true;
    for (const ComparisonEntry& e : report.entries[p]) {
      if (e.speed.empty()) continue;
      TimeSeries s;
      s.t = e.speed_t;
      s.value = e.speed;
      s.color = color_for(report.planners[p]);
      if (first) s.label = to_string(report.planners[p]);
      first = false;
      series.push_back(std::move(s));
    }
  }
  return render_time_series_svg(series, "reference speed", "|tau_d| [m/s]", alpha);
}

}  // namespace tcnav
