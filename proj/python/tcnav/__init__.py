"""Tangent-cone navigation with adaptive tube tracking."""

from ._core import (
    NavError,
    Scenario,
    SimConfig,
    field,
    stationary_point,
    validate_world,
    obstacle_distance,
    transformed_error,
    robust_term,
    control_law,
    input_bound,
    pf_field,
    parse_config,
    load_config,
    emit_config,
    run_reference,
    run_closed_loop,
    run_pf,
    sample_free_starts,
)

__all__ = [
    "NavError",
    "Scenario",
    "SimConfig",
    "field",
    "stationary_point",
    "validate_world",
    "obstacle_distance",
    "transformed_error",
    "robust_term",
    "control_law",
    "input_bound",
    "pf_field",
    "parse_config",
    "load_config",
    "emit_config",
    "run_reference",
    "run_closed_loop",
    "run_pf",
    "sample_free_starts",
]
