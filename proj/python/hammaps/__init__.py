"""Orientably regular embeddings of Hamming graphs.

Thin wrappers over the compiled core. Results that the command-line tool
prints as JSON come back as dicts; maps travel as their text form.
"""

import json as _json

from . import _hammaps
from ._hammaps import (
    CapExceeded,
    ConsistencyError,
    DEFAULT_ARC_CAP,
    DEFAULT_GROUP_CAP,
    SLOW_GROUP_CAP,
    canonical_code,
    mirror,
    wilson,
)

__all__ = [
    "CapExceeded",
    "ConsistencyError",
    "DEFAULT_ARC_CAP",
    "DEFAULT_GROUP_CAP",
    "SLOW_GROUP_CAP",
    "canonical_code",
    "construct",
    "enumerate_maps",
    "galois",
    "invariants",
    "iso",
    "mirror",
    "report",
    "wilson",
]


def construct(d, q, omega=None, arc_cap=DEFAULT_ARC_CAP):
    """Header and invariants of H(d, omega); the map text is under "map"."""
    return _json.loads(_hammaps.construct(d, q, omega, arc_cap))


def enumerate_maps(d, q, merged=None, slow=False, workers=1, group_cap=None,
                   arc_cap=DEFAULT_ARC_CAP):
    """Census of H(d,q), or the merged-graph verdict when `merged` is given."""
    return _json.loads(
        _hammaps.enumerate(d, q, merged, slow, workers, group_cap, arc_cap))


def report(d, q, format="json", arc_cap=DEFAULT_ARC_CAP):
    text = _hammaps.report(d, q, format, arc_cap)
    return _json.loads(text) if format == "json" else text


def galois(q, d=1):
    return _json.loads(_hammaps.galois(q, d))


def iso(a, b):
    return _json.loads(_hammaps.iso(a, b))


def invariants(map_text):
    return _json.loads(_hammaps.invariants(map_text))
