"""Python access to the wdc coding, analytic and simulation library."""

import json

from ._core import (
    BlockCode,
    ExperimentConfig,
    Field,
    WdcError,
    analytic,
    default_config,
    detect,
    encode_packets,
    estimate_p_miss,
    experiment_names,
    min_distance,
    min_distance_exhaustive,
    null_space,
    rank,
    run_sim,
    selftest,
    weight_distribution,
)
from ._core import _run_experiment

__all__ = [
    "BlockCode",
    "ExperimentConfig",
    "Field",
    "WdcError",
    "analytic",
    "default_config",
    "detect",
    "encode_packets",
    "estimate_p_miss",
    "experiment_names",
    "min_distance",
    "min_distance_exhaustive",
    "null_space",
    "rank",
    "run_experiment",
    "run_sim",
    "selftest",
    "weight_distribution",
]


def run_experiment(config):
    """Run a sweep; returns (csv_text, summary_dict)."""
    if isinstance(config, str):
        config = default_config(config)
    csv_text, summary = _run_experiment(config)
    return csv_text, json.loads(summary)
