"""Weighted restricted X-ray transforms along polynomial curves."""

import json
from fractions import Fraction
from pathlib import Path

from . import _core
from ._core import FormatError, UsageError, commands

__all__ = ["FormatError", "UsageError", "commands", "run", "torsion", "exponent_triple", "theta_zero", "decompose"]


def _curve_text(curve):
    if isinstance(curve, int):
        curve = {"moment": curve}
    return json.dumps(curve)


def _ext(text):
    return float("inf") if text == "inf" else Fraction(text)


def run(command, config, seed=0, base_dir="."):
    """Run a CLI subcommand in-process and return the report as a dict."""
    return json.loads(_core.run(command, json.dumps(config), seed, str(Path(base_dir))))


def torsion(curve):
    """Ascending coefficients of the torsion polynomial; `curve` is a curve dict or a moment-curve dimension."""
    return [Fraction(c) for c in _core.torsion_coefficients(_curve_text(curve))]


def exponent_triple(theta, dim):
    return tuple(_ext(x) for x in _core.exponent_triple(str(Fraction(theta)), dim))


def theta_zero(dim):
    return Fraction(_core.theta_zero(dim))


def decompose(curve, lo, hi, c_target=4.0):
    return json.loads(_core.decompose(_curve_text(curve), str(Fraction(lo)), str(Fraction(hi)), c_target))
