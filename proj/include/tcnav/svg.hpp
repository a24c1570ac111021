#pragma once

#include <string>
#include <vector>

#include "tcnav/geometry.hpp"

namespace tcnav {

struct PlotPath {
  std::vector<Vec2> points;
  std::string color = "#000000";
  std::string label;
  double width_px = 1.5;
  bool dashed = false;
};

struct PlotScene {
  std::vector<PlotPath> paths;
  std::vector<Vec2> tube_centerline;  ///< drawn as a band of radius tube_radius
  double tube_radius = 0.0;
  std::vector<Vec2> starts;
  Vec2 goal = Vec2::Zero();
  std::string title;
};

/// Self-contained SVG: workspace and its eroded bands, obstacles with their
/// robot-inflated and margin regions, dashed influence circles, paths, tube.
std::string render_svg(const World& world, const PlotScene& scene);

/// Time series plot, one polyline per series (e.g. velocity norms).
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> value;
  std::string color = "#000000";
  std::string label;
};

std::string render_time_series_svg(const std::vector<TimeSeries>& series, const std::string& title,
                                   const std::string& y_label, double reference_line = -1.0);

}  // namespace tcnav
