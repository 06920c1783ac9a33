"""Finite S-extensions of finite metric spaces.

Spaces, extensions and injections are plain dicts in the JSON layout of the
command-line tool; distances are strings such as "3/2".
"""

import json

from . import _sext
from ._sext import Error

__all__ = [
    "Error",
    "coherent",
    "extend",
    "is_homogeneous",
    "minimalize",
    "oracle",
    "space",
    "ultra_extend",
    "verify",
]


def space(matrix, labels=None):
    """Space dict from a square matrix of ints, strings or Fractions."""
    n = len(matrix)
    labels = labels or [f"x{i}" for i in range(n)]
    return {"points": list(labels), "dist": [[str(v) for v in row] for row in matrix]}


def extend(space, route="auto", seed=1, max_degree=32):
    return json.loads(_sext.extend(json.dumps(space), route, seed, max_degree))


def verify(extension):
    return json.loads(_sext.verify(json.dumps(extension)))


def minimalize(extension):
    return json.loads(_sext.minimalize(json.dumps(extension)))


def coherent(e1, x2, injection, seed=1, max_degree=32):
    return json.loads(_sext.coherent(json.dumps(e1), json.dumps(x2), json.dumps(injection), seed, max_degree))


def ultra_extend(space, minimal=False):
    return json.loads(_sext.ultra_extend(json.dumps(space), minimal))


def oracle(space, max_size=4):
    return json.loads(_sext.oracle(json.dumps(space), max_size))


def is_homogeneous(space, cap=10):
    return _sext.is_homogeneous(json.dumps(space), cap)
