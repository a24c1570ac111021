#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "tcnav/config.hpp"
#include "tcnav/controller.hpp"
#include "tcnav/planner.hpp"
#include "tcnav/sim.hpp"

namespace py = pybind11;
using namespace tcnav;

namespace {

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["path_length_reference"] = m.path_length_reference;
  d["path_length_actual"] = m.path_length_actual;
  d["min_clearance_reference"] = m.min_clearance_reference;
  d["min_clearance_actual"] = m.min_clearance_actual;
  d["min_depth_reference"] = m.min_depth_reference;
  d["max_tracking_error"] = m.max_tracking_error;
  d["max_input_norm"] = m.max_input_norm;
  d["max_reference_speed"] = m.max_reference_speed;
  d["settling_time"] = m.settling_time ? py::cast(*m.settling_time) : py::none();
  d["terminal_goal_distance"] = m.terminal_goal_distance;
  d["tube_violated"] = m.tube_violated;
  d["reached_goal"] = m.reached_goal;
  return d;
}

/// Column arrays plus status and metrics.
py::dict trajectory_dict(const Trajectory& tr) {
  const auto n = static_cast<py::ssize_t>(tr.rows.size());
  py::array_t<double> t(n), xe(n), xi(n), dhat(n);
  py::array_t<double> ref({n, py::ssize_t{2}}), point({n, py::ssize_t{2}}), u({n, py::ssize_t{2}});
  py::array_t<double> pose({n, py::ssize_t{3}});
  auto tv = t.mutable_unchecked<1>();
  auto xev = xe.mutable_unchecked<1>();
  auto xiv = xi.mutable_unchecked<1>();
  auto dv = dhat.mutable_unchecked<1>();
  auto rv = ref.mutable_unchecked<2>();
  auto pv = point.mutable_unchecked<2>();
  auto uv = u.mutable_unchecked<2>();
  auto qv = pose.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i) {
    const TrajectoryRow& r = tr.rows[static_cast<std::size_t>(i)];
    tv(i) = r.t;
    xev(i) = r.xe_norm;
    xiv(i) = r.xi;
    dv(i) = r.dhat;
    for (py::ssize_t k = 0; k < 2; ++k) {
      rv(i, k) = r.reference(k);
      pv(i, k) = r.point(k);
      uv(i, k) = r.u(k);
    }
    qv(i, 0) = r.pose.x;
    qv(i, 1) = r.pose.y;
    qv(i, 2) = r.pose.theta;
  }
  py::dict d;
  d["t"] = t;
  d["reference"] = ref;
  d["pose"] = pose;
  d["point"] = point;
  d["xe_norm"] = xe;
  d["xi"] = xi;
  d["u"] = u;
  d["dhat"] = dhat;
  d["status"] = to_string(tr.status);
  d["diagnostic"] = tr.diagnostic;
  d["metrics"] = metrics_dict(compute_metrics(tr));
  return d;
}

Vec2 start_or_default(const ScenarioConfig& cfg, const std::optional<Vec2>& start) {
  return start ? *start : cfg.scenario.start;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tangent-cone planner, adaptive tube controller and simulator";

  py::register_exception<NavError>(m, "NavError", PyExc_ValueError);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("duration", &SimConfig::duration)
      .def_readwrite("goal_tol", &SimConfig::goal_tol)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("project_to_margin", &SimConfig::project_to_margin)
      .def_property(
          "integrator",
          [](const SimConfig& c) { return c.integrator == Integrator::kRk4 ? "rk4" : "euler"; },
          [](SimConfig& c, const std::string& name) {
            if (name != "rk4" && name != "euler") {
              throw NavError(ErrorKind::kConfig, "integrator must be rk4 or euler");
            }
            c.integrator = name == "rk4" ? Integrator::kRk4 : Integrator::kEuler;
          });

  py::class_<ScenarioConfig>(m, "Scenario")
      .def_readwrite("sim", &ScenarioConfig::sim)
      .def_property_readonly("goal", [](const ScenarioConfig& c) { return c.scenario.planner.goal; })
      .def_property_readonly("start", [](const ScenarioConfig& c) { return c.scenario.start; })
      .def_property_readonly("obstacles",
                             [](const ScenarioConfig& c) {
                               py::list out;
                               for (const auto& o : c.scenario.world.obstacles) {
                                 out.append(py::make_tuple(o.center, o.radius));
                               }
                               return out;
                             })
      .def_property_readonly("margin", [](const ScenarioConfig& c) { return c.scenario.world.margin; })
      .def_property_readonly("alpha", [](const ScenarioConfig& c) { return c.scenario.planner.alpha; })
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
  m.def("emit_config", &emit_config, py::arg("scenario"));

  m.def(
      "validate_world",
      [](const ScenarioConfig& c) {
        std::vector<std::string> out;
        for (const auto& v : validate_world(c.scenario.world).violations) out.push_back(v.message);
        return out;
      },
      py::arg("scenario"), "Violation messages; empty when the world is valid.");

  m.def(
      "obstacle_distance",
      [](const ScenarioConfig& c, const Vec2& x) {
        const NearestObstacle n = obstacle_distance(c.scenario.world, x);
        return py::make_tuple(n.distance, n.index ? py::cast(*n.index) : py::none());
      },
      py::arg("scenario"), py::arg("x"));

  m.def(
      "field",
      [](const ScenarioConfig& c, const Vec2& x) {
        return field(c.scenario.planner, c.scenario.world, x);
      },
      py::arg("scenario"), py::arg("x"));

  m.def(
      "stationary_point",
      [](const ScenarioConfig& c, std::size_t i) {
        return stationary_point(c.scenario.planner, c.scenario.world, i);
      },
      py::arg("scenario"), py::arg("index"));

  m.def(
      "pf_field",
      [](const ScenarioConfig& c, const Vec2& x) {
        return pf_field(c.scenario.pf, c.scenario.world, c.scenario.planner.goal, x);
      },
      py::arg("scenario"), py::arg("x"));

  m.def(
      "transformed_error",
      [](const ScenarioConfig& c, const Vec2& x_e) {
        return transformed_error(c.scenario.controller, x_e);
      },
      py::arg("scenario"), py::arg("x_e"));

  m.def(
      "robust_term",
      [](const ScenarioConfig& c, double dhat, const Vec2& z) {
        return robust_term(c.scenario.controller, AdaptiveState{dhat}, z);
      },
      py::arg("scenario"), py::arg("dhat"), py::arg("z"));

  m.def(
      "control_law",
      [](const ScenarioConfig& c, double dhat, double theta, const Vec2& x_e, const Vec2& tau_d) {
        return control_law(c.scenario.controller, AdaptiveState{dhat}, c.scenario.robot.offset,
                           theta, x_e, tau_d);
      },
      py::arg("scenario"), py::arg("dhat"), py::arg("theta"), py::arg("x_e"), py::arg("tau_d"));

  m.def(
      "input_bound",
      [](const ScenarioConfig& c) {
        return input_bound(c.scenario.controller, c.scenario.planner.alpha,
                           c.scenario.robot.offset);
      },
      py::arg("scenario"));

  m.def(
      "run_reference",
      [](const ScenarioConfig& c, std::optional<Vec2> start) {
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = integrate_reference(c.scenario.world, c.scenario.planner, start_or_default(c, start),
                                   c.sim);
        }
        return trajectory_dict(tr);
      },
      py::arg("scenario"), py::arg("start") = py::none());

  m.def(
      "run_closed_loop",
      [](const ScenarioConfig& c, std::optional<Vec2> start) {
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = run_scenario(c.scenario, RunMode::kClosedLoop, start_or_default(c, start), c.sim);
        }
        return trajectory_dict(tr);
      },
      py::arg("scenario"), py::arg("start") = py::none());

  m.def(
      "run_pf",
      [](const ScenarioConfig& c, std::optional<Vec2> start, bool disturbed) {
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = run_scenario(c.scenario, disturbed ? RunMode::kPfClosedLoop : RunMode::kPfReference,
                            start_or_default(c, start), c.sim);
        }
        return trajectory_dict(tr);
      },
      py::arg("scenario"), py::arg("start") = py::none(), py::arg("disturbed") = false);

  m.def(
      "sample_free_starts",
      [](const ScenarioConfig& c, std::size_t count, std::uint64_t seed) {
        return sample_free_starts(c.scenario.world, count, seed, c.sweep_clearance);
      },
      py::arg("scenario"), py::arg("count"), py::arg("seed"));
}
