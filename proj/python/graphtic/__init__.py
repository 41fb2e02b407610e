"""Task-instance complexity measures for 3-D graph layouts."""

from ._core import (
    ComplexityScore,
    Graph,
    Layout3D,
    accuracy,
    common_neighbors,
    fill_ratio,
    mvee,
    normalize_to_view,
    score_instance,
    shortest_path_length,
    stress_layout,
    synth_graph,
    task1_noise,
    task1_signal,
    task2_noise,
    task2_signal,
)

__all__ = [
    "ComplexityScore",
    "Graph",
    "Layout3D",
    "accuracy",
    "common_neighbors",
    "fill_ratio",
    "mvee",
    "normalize_to_view",
    "score_instance",
    "shortest_path_length",
    "stress_layout",
    "synth_graph",
    "task1_noise",
    "task1_signal",
    "task2_noise",
    "task2_signal",
]
