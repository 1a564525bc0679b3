"""Parametrized Khovanov homology: complexes, invariants and Reidemeister-move checks.

The heavy lifting happens in the compiled ``pkh._core`` module; the wrappers
here decode its JSON results into Python objects.
"""

import json

from . import _core
from ._core import Error, check_d2, normalize_pd, writhe

__all__ = ["Error", "check_d2", "homology", "invariants", "normalize_pd", "run_corpus", "verify_move", "writhe"]


def homology(pd, s=0, t=0, scheme="jones"):
    """Homology groups at the specialization (s, t)."""
    return json.loads(_core.homology(pd, s, t, scheme))


def invariants(pd):
    """Jones polynomial and Kauffman bracket, each computed several ways."""
    return json.loads(_core.invariants(pd))


def verify_move(pd, move, at_edge=0, with_edge=0, side=0, under=False, triangle=()):
    """Build and check the chain maps of one Reidemeister move."""
    return json.loads(_core.verify_move(pd, move, at_edge, with_edge, side, under, list(triangle)))


def run_corpus(directory, moves=True, max_crossings=14):
    """Run every check over a directory of .pd files."""
    return json.loads(_core.run_corpus(directory, moves, max_crossings))
