"""Convex bodies, Steiner neighborhoods and the isoperimetric ratio.

Bodies are dicts (or JSON text) in the same format the ``isoflow`` command
reads::

    {"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
    {"type": "fourier", "a0": 1, "cos": [0, 0.1], "sin": [0, 0]}
    {"type": "grid", "samples": [...]}
"""

import json

from . import _core
from ._core import (
    ConsistencyError,
    DomainError,
    Error,
    InvalidArgument,
    InvalidBody,
    ParseError,
    flow_domain_radius,
    flow_ratio,
    flow_ratio_derivative,
    flow_ratio_second_derivative,
    ratio_of_neighborhood,
)

__all__ = [
    "ConsistencyError",
    "DomainError",
    "Error",
    "InvalidArgument",
    "InvalidBody",
    "ParseError",
    "flow_domain_radius",
    "flow_ratio",
    "flow_ratio_derivative",
    "flow_ratio_second_derivative",
    "flow_report",
    "offset_summary",
    "ratio_of_neighborhood",
    "recover",
    "replay",
    "summary",
    "variation",
    "verify",
    "wirtinger",
]


def _text(body):
    return body if isinstance(body, str) else json.dumps(body)


def summary(body, hull=False):
    """Area, perimeter, ratio L^2/(4 pi A) and deficit L^2 - 4 pi A."""
    return _core.summary(_text(body), hull)


def offset_summary(body, r, hull=False):
    """Summary of the r-neighborhood of ``body``."""
    return _core.offset_summary(_text(body), r, hull)


def flow_report(body, t_max=5.0, steps=50):
    """Closed-form and differenced I(t), I'(t), I''(t) along the flow."""
    return json.loads(_core.flow_report(_text(body), t_max, steps))


def variation(body, round=None, grid=_core.DEFAULT_GRID):
    """I'(0), I''(0) and their pieces for the variation started at a disk.

    Polygons need ``round``: they are replaced by their round-offset,
    sampled on ``grid`` directions.
    """
    return json.loads(_core.variation(_text(body), round, grid))


def recover(body, round=None, grid=_core.DEFAULT_GRID, tol=1e-10):
    """Center and radius of a zero-deficit body, or ``{"rejected": True, ...}``."""
    return json.loads(_core.recover(_text(body), round, grid, tol))


def wirtinger(field):
    """Wirtinger slack for a zero-mean fourier or grid function."""
    return json.loads(_core.wirtinger(_text(field)))


def verify(count=1000, seed=42, max_vertices=12, max_degree=8, r_max=10.0, tolerance_scale=1.0, text=False):
    """Seeded property suite. Returns the JSON report as a dict, or the text
    report when ``text`` is set."""
    report_json, report_text = _core.verify(count, seed, max_vertices, max_degree, r_max, tolerance_scale)
    return report_text if text else json.loads(report_json)


def replay(case, tolerance_scale=1.0):
    """Re-evaluates one failing case printed by ``verify``."""
    return json.loads(_core.replay(_text(case), tolerance_scale))
