"""Three-cell uplink interference alignment.

Thin wrapper over the compiled ``_ia3`` extension. Cell, BS and user indices
are 1-based.
"""

import json

from ._ia3 import (
    ChannelSet,
    Error,
    NetworkConfig,
    check_feasibility,
    design_precoders,
    dof_sweep,
    fit_slope,
    generate_channels,
    left_null_basis,
    max_streams_per_user,
    numerical_rank,
    orthogonal_dof,
    rank_distribution,
    right_null_basis,
    run_trial,
    run_trial_on,
    sum_rate,
)
from ._ia3 import report_json as _report_json


def report(config, seed=1):
    """Trial report in the same JSON shape the CLI prints."""
    return json.loads(_report_json(config, seed))


__all__ = [
    "ChannelSet",
    "Error",
    "NetworkConfig",
    "check_feasibility",
    "design_precoders",
    "dof_sweep",
    "fit_slope",
    "generate_channels",
    "left_null_basis",
    "max_streams_per_user",
    "numerical_rank",
    "orthogonal_dof",
    "rank_distribution",
    "report",
    "right_null_basis",
    "run_trial",
    "run_trial_on",
    "sum_rate",
]
