"""Nonadiabatic transition probabilities for the sech/tanh two-level model."""

import json as _json

from . import _core
from ._core import (
    Error,
    TwoLevelParams,
    class_invariance,
    excited_amplitude,
    extremal_probabilities,
    from_scaled,
    limit,
    monodromy,
    numeric_monodromy,
    okubo_lambda_independence,
    okubo_probability,
    probability,
    propagate,
    propagate_multilevel,
    suite_names,
    to_scaled,
    transition_probability,
    transition_probability_assembled,
)


def run_suite(name, seed=1):
    """Runs a verification suite and returns the report as a dict."""
    return _json.loads(_core.run_suite_json(name, seed))


__version__ = "0.1.0"
