"""Exact continued-fraction streams, repetition structure and growth verdicts."""

import json as _json

from ._core import (  # noqa: F401
    __version__,
    alphabet_spectrum,
    analyze_json,
    condition_star,
    condition_star_star,
    continuant,
    convergents,
    detect_repetitions,
    eval_interval,
    frac_power,
    generate,
    mirror,
    periodicity_scan,
    product_radius_margin,
)

__all__ = [
    "__version__",
    "alphabet_spectrum",
    "analyze",
    "analyze_json",
    "condition_star",
    "condition_star_star",
    "continuant",
    "convergents",
    "detect_repetitions",
    "eval_interval",
    "frac_power",
    "generate",
    "mirror",
    "periodicity_scan",
    "product_radius_margin",
]


def analyze(family, params=None, **kwargs):
    """Run the analysis pipeline and return the report as a dict."""
    return _json.loads(analyze_json(family, params or {}, **kwargs))
