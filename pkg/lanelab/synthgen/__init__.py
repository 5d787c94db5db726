"""Synthetic road scenes with exact lane ground truth."""

from .generator import generate_sequence, ground_truth_record, iter_sequence, lane_edge_mask, render_frame, write_sequence
from .scene import LaneSpec, SceneSpec
from .suites import SUITES_VERSION, standard_suites

__all__ = [
    "LaneSpec",
    "SUITES_VERSION",
    "SceneSpec",
    "generate_sequence",
    "ground_truth_record",
    "iter_sequence",
    "lane_edge_mask",
    "render_frame",
    "standard_suites",
    "write_sequence",
]
