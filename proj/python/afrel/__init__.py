"""Python bindings for the afrel library."""

import json

from . import _core
from ._core import AfrelError, is_primitive, run_cli, run_suite, solve_stationary, suite_names

__all__ = [
    "AfrelError",
    "is_primitive",
    "kms_beta",
    "pressure",
    "run_cli",
    "run_suite",
    "solve_stationary",
    "suite_names",
]


def _potential(phi):
    # A number is a constant potential; a dict is {"range": k, "values": {...}}.
    if isinstance(phi, (int, float)):
        return json.dumps({"constant": float(phi)})
    return json.dumps(phi)


def pressure(transitions, potential=0.0):
    return _core.pressure(transitions, _potential(potential))


def kms_beta(transitions, potential=1.0):
    return _core.kms_beta(transitions, _potential(potential))
