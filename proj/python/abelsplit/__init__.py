"""Python access to the abelsplit core."""

import json

from ._core import (
    AbelsplitError,
    aut_order,
    aut_order_factorization,
    brute_force_aut_count,
    classify_block,
    delta_order,
    group_order,
    quotient_order,
    rank_bound,
    teichmuller,
)
from . import _core

__all__ = [
    "AbelsplitError",
    "aut_order",
    "aut_order_factorization",
    "brute_force_aut_count",
    "classify",
    "classify_block",
    "delta_order",
    "group_order",
    "quotient_order",
    "rank_bound",
    "search",
    "section",
    "teichmuller",
]


def classify(p, blocks):
    """Verdict dict for the group given as [(exponent, rank), ...]."""
    return json.loads(_core.classify_json(p, list(blocks)))


def section(p, blocks, seed=None):
    """Section certificate as a dict; raises AbelsplitError when none exists."""
    if seed is None:
        return json.loads(_core.section_json(p, list(blocks)))
    return json.loads(_core.section_json(p, list(blocks), seed))


def search(p, blocks, seed=None, workers=1):
    if seed is None:
        return json.loads(_core.search_json(p, list(blocks), workers=workers))
    return json.loads(_core.search_json(p, list(blocks), seed, workers))
