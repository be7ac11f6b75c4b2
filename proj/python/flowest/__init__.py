"""Flow-field estimation from vehicle heading-change maneuvers."""

from ._flowest import (
    EstimateReport,
    FlowParams,
    FlowestError,
    Polytope,
    benchmark,
    circle_fit,
    estimate_vg,
    estimate_xy,
    quad_fit,
    robust_estimate,
    simulate,
    to_ground_speed,
)

__all__ = [
    "EstimateReport",
    "FlowParams",
    "FlowestError",
    "Polytope",
    "benchmark",
    "circle_fit",
    "estimate_vg",
    "estimate_xy",
    "quad_fit",
    "robust_estimate",
    "simulate",
    "to_ground_speed",
]
