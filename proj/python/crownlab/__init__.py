"""Python access to the crownlab core."""

import json

from ._crownlab import (
    NumericalGuard,
    c_function,
    heat_kernel,
    hyperbolic_plane_heat_kernel,
    majorization_margin,
    root_system,
    spherical_integral,
    spherical_series,
)
from . import _crownlab


def check_sample(n, field, seed, trial):
    sample, verdict = _crownlab.check_sample(n, field, seed, trial)
    return json.loads(sample), json.loads(verdict)


def verify_convexity(n, field, trials, seed, threads=1):
    return json.loads(_crownlab.verify_convexity(n, field, trials, seed, threads))


__all__ = [
    "NumericalGuard",
    "c_function",
    "check_sample",
    "heat_kernel",
    "hyperbolic_plane_heat_kernel",
    "majorization_margin",
    "root_system",
    "spherical_integral",
    "spherical_series",
    "verify_convexity",
]
