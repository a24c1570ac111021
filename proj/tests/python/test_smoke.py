import math
import os
from pathlib import Path

import numpy as np
import pytest

import tcnav

CONFIG_DIR = Path(os.environ.get("TCNAV_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


@pytest.fixture(scope="module")
def scenario():
    return tcnav.load_config(str(CONFIG_DIR / "table1.cfg"))


def test_config_round_trip(scenario):
    assert tcnav.parse_config(tcnav.emit_config(scenario)) == scenario
    assert len(scenario.obstacles) == 8
    assert scenario.alpha == pytest.approx(0.03)


def test_bad_config_raises():
    with pytest.raises(tcnav.NavError, match="line"):
        tcnav.parse_config("[world]\nshape = \n")
    with pytest.raises(ValueError):
        tcnav.parse_config("[planner]\nalpha = 0.03\n")


def test_world_and_queries(scenario):
    assert tcnav.validate_world(scenario) == []
    d, idx = tcnav.obstacle_distance(scenario, np.array([0.0, 0.0]))
    assert idx == 4
    assert d == pytest.approx(math.hypot(0.4, 0.55) - 0.45, abs=1e-12)
    s = tcnav.stationary_point(scenario, 0)
    assert tcnav.obstacle_distance(scenario, s)[0] == pytest.approx(scenario.margin, abs=1e-12)


def test_field_is_saturated(scenario):
    for x in tcnav.sample_free_starts(scenario, 200, 3):
        assert np.linalg.norm(tcnav.field(scenario, x)) <= scenario.alpha + 1e-12


def test_controller_helpers(scenario):
    assert tcnav.input_bound(scenario) == pytest.approx(1.42, abs=1e-12)
    assert tcnav.transformed_error(scenario, np.array([0.03, 0.0])) == pytest.approx(0.25)
    w = tcnav.robust_term(scenario, 0.02, np.array([0.1, 0.0]))
    assert w[0] == pytest.approx(0.0074278, abs=1e-7)
    with pytest.raises(tcnav.NavError):
        tcnav.control_law(scenario, 0.01, 0.0, np.array([0.1, 0.0]), np.zeros(2))


def test_reference_run(scenario):
    out = tcnav.run_reference(scenario)
    assert out["status"] == "reached_goal"
    ref = out["reference"]
    assert ref.shape == (len(out["t"]), 2)
    assert np.linalg.norm(ref[-1] - scenario.goal) <= 0.01


def test_closed_loop_run(scenario):
    out = tcnav.run_closed_loop(scenario)
    m = out["metrics"]
    assert m["reached_goal"]
    assert not m["tube_violated"]
    assert m["max_tracking_error"] < 0.06
    assert np.all(out["dhat"] >= 0.0) and np.all(out["dhat"] <= 0.035)


def test_pf_run_leaves_tube_when_disturbed(scenario):
    assert tcnav.run_pf(scenario)["metrics"]["reached_goal"]
    assert tcnav.run_pf(scenario, disturbed=True)["metrics"]["max_tracking_error"] > 0.06


def test_sim_config_is_mutable(scenario):
    sim = scenario.sim
    sim.duration = 10.0
    sim.integrator = "euler"
    scenario.sim = sim
    assert tcnav.run_reference(scenario)["status"] == "timed_out"
    with pytest.raises(tcnav.NavError):
        sim.integrator = "midpoint"
