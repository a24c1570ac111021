#include "tcnav/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <variant>

namespace tcnav {
namespace {

constexpr double kPixelsPerMetre = 140.0;
constexpr double kPad = 30.0;
constexpr std::size_t kMaxPolylinePoints = 4000;

std::string f3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  Vec2 lo;
  Vec2 hi;

  double width() const { return (hi.x() - lo.x()) * kPixelsPerMetre + 2 * kPad; }
  double height() const { return (hi.y() - lo.y()) * kPixelsPerMetre + 2 * kPad + 24; }
  double px(double x) const { return kPad + (x - lo.x()) * kPixelsPerMetre; }
  double py(double y) const { return 24 + kPad + (hi.y() - y) * kPixelsPerMetre; }
  double len(double d) const { return d * kPixelsPerMetre; }
};

Frame frame_for(const World& world) {
  if (const auto* rect = std::get_if<RectangleShape>(&world.workspace.shape)) {
    return Frame{rect->center - rect->half_extents, rect->center + rect->half_extents};
  }
  const auto& disc = std::get<DiscShape>(world.workspace.shape);
  return Frame{disc.center - Vec2::Constant(disc.radius), disc.center + Vec2::Constant(disc.radius)};
}

void workspace_shape(std::ostringstream& os, const Frame& fr, const World& world, double shrink,
                     const std::string& fill) {
  if (const auto* rect = std::get_if<RectangleShape>(&world.workspace.shape)) {
    const Vec2 half = (rect->half_extents - Vec2::Constant(shrink)).cwiseMax(0.0);
    os << "<rect x=\"" << f3(fr.px(rect->center.x() - half.x())) << "\" y=\""
       << f3(fr.py(rect->center.y() + half.y())) << "\" width=\"" << f3(fr.len(2 * half.x()))
       << "\" height=\"" << f3(fr.len(2 * half.y())) << "\" fill=\"" << fill << "\"/>\n";
  } else {
    const auto& disc = std::get<DiscShape>(world.workspace.shape);
    os << "<circle cx=\"" << f3(fr.px(disc.center.x())) << "\" cy=\"" << f3(fr.py(disc.center.y()))
       << "\" r=\"" << f3(fr.len(std::max(0.0, disc.radius - shrink))) << "\" fill=\"" << fill
       << "\"/>\n";
  }
}

void circle(std::ostringstream& os, const Frame& fr, const Vec2& c, double r, const std::string& attrs) {
  os << "<circle cx=\"" << f3(fr.px(c.x())) << "\" cy=\"" << f3(fr.py(c.y())) << "\" r=\""
     << f3(fr.len(r)) << "\" " << attrs << "/>\n";
}

std::string points_attr(const Frame& fr, const std::vector<Vec2>& pts) {
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / kMaxPolylinePoints);
  std::ostringstream os;
  for (std::size_t i = 0; i < pts.size(); i += stride) {
    os << f3(fr.px(pts[i].x())) << ',' << f3(fr.py(pts[i].y())) << ' ';
  }
  if (!pts.empty()) os << f3(fr.px(pts.back().x())) << ',' << f3(fr.py(pts.back().y()));
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const World& world, const PlotScene& scene) {
  const Frame fr = frame_for(world);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f3(fr.width()) << "\" height=\""
     << f3(fr.height()) << "\" viewBox=\"0 0 " << f3(fr.width()) << ' ' << f3(fr.height())
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!scene.title.empty()) {
    os << "<text x=\"" << kPad << "\" y=\"18\">" << escape(scene.title) << "</text>\n";
  }

  // W* (gray), W (margin band, light blue), W^eps (free, white)
  workspace_shape(os, fr, world, 0.0, "#bdbdbd");
  workspace_shape(os, fr, world, world.robot_radius, "#cfe8f5");
  workspace_shape(os, fr, world, world.robot_radius + world.margin, "#ffffff");

  for (const Obstacle& o : world.obstacles) {
    circle(os, fr, o.center, world.robot_radius + o.radius + world.influence,
           "fill=\"none\" stroke=\"#7f7f7f\" stroke-dasharray=\"4 3\"");
    circle(os, fr, o.center, world.robot_radius + o.radius + world.margin, "fill=\"#cfe8f5\"");
    circle(os, fr, o.center, world.robot_radius + o.radius, "fill=\"#bdbdbd\"");
    circle(os, fr, o.center, o.radius, "fill=\"#4d4d4d\"");
  }

  if (scene.tube_radius > 0.0 && scene.tube_centerline.size() > 1) {
    os << "<polyline points=\"" << points_attr(fr, scene.tube_centerline)
       << "\" fill=\"none\" stroke=\"#f4a261\" stroke-opacity=\"0.35\" stroke-width=\""
       << f3(fr.len(2 * scene.tube_radius))
       << "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
  }

  for (const PlotPath& path : scene.paths) {
    if (path.points.empty()) continue;
    os << "<polyline points=\"" << points_attr(fr, path.points) << "\" fill=\"none\" stroke=\""
       << path.color << "\" stroke-width=\"" << f3(path.width_px) << "\"";
    if (path.dashed) os << " stroke-dasharray=\"6 3\"";
    os << "/>\n";
  }

  for (const Vec2& s : scene.starts) circle(os, fr, s, 0.025, "fill=\"#7b2cbf\"");
  circle(os, fr, scene.goal, 0.035, "fill=\"#d00000\"");

  double legend_y = fr.height() - 8.0;
  for (auto it = scene.paths.rbegin(); it != scene.paths.rend(); ++it) {
    if (it->label.empty()) continue;
    os << "<line x1=\"" << kPad << "\" y1=\"" << f3(legend_y - 4) << "\" x2=\"" << kPad + 24
       << "\" y2=\"" << f3(legend_y - 4) << "\" stroke=\"" << it->color << "\" stroke-width=\"2\"/>"
       << "<text x=\"" << kPad + 30 << "\" y=\"" << f3(legend_y) << "\">" << escape(it->label)
       << "</text>\n";
    legend_y -= 16.0;
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_time_series_svg(const std::vector<TimeSeries>& series, const std::string& title,
                                   const std::string& y_label, double reference_line) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 360.0;
  constexpr double kLeft = 60.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 30.0;
  constexpr double kBottom = 40.0;

  double t_max = 0.0;
  double v_max = reference_line > 0.0 ? reference_line : 0.0;
  for (const auto& s : series) {
    for (const double t : s.t) t_max = std::max(t_max, t);
    for (const double v : s.value) {
      if (std::isfinite(v)) v_max = std::max(v_max, v);
    }
  }
  if (t_max <= 0.0) t_max = 1.0;
  if (v_max <= 0.0) v_max = 1.0;
  v_max *= 1.05;

  auto px = [&](double t) { return kLeft + t / t_max * (kWidth - kLeft - kRight); };
  auto py = [&](double v) { return kHeight - kBottom - v / v_max * (kHeight - kTop - kBottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
     << "<text x=\"" << kLeft << "\" y=\"18\">" << escape(title) << "</text>\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
     << py(0) << "\" stroke=\"#000\"/>\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << py(0)
     << "\" stroke=\"#000\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8 << "\">t [s] (0 .. " << f3(t_max)
     << ")</text>\n"
     << "<text x=\"4\" y=\"" << kTop - 8 << "\">" << escape(y_label) << " (max " << f3(v_max)
     << ")</text>\n";
  if (reference_line > 0.0) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << f3(py(reference_line)) << "\" x2=\""
       << kWidth - kRight << "\" y2=\"" << f3(py(reference_line))
       << "\" stroke=\"#d00000\" stroke-dasharray=\"5 4\"/>\n";
  }
  double legend_y = kTop + 14;
  for (const auto& s : series) {
    const std::size_t n = std::min(s.t.size(), s.value.size());
    const std::size_t stride = std::max<std::size_t>(1, n / kMaxPolylinePoints);
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
      if (std::isfinite(s.value[i])) os << f3(px(s.t[i])) << ',' << f3(py(s.value[i])) << ' ';
    }
    os << "\"/>\n";
    if (!s.label.empty()) {
      os << "<text x=\"" << kWidth - 200 << "\" y=\"" << legend_y << "\" fill=\"" << s.color
         << "\">" << escape(s.label) << "</text>\n";
      legend_y += 14;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tcnav
