"""Constructive Ramsey and transitive-tournament extraction.

Both follow the textbook pigeonhole recursion on a pivot vertex, so the
input sizes they need are exactly :func:`tripodcert.bounds.ramsey` and
:func:`tripodcert.bounds.transitive`.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable

from .bounds import ramsey, transitive
from .errors import InternalSoundnessError, PreconditionError
from .graph import ordered


def ramsey_extract(vertices: Iterable, adjacent: Callable[[object, object], bool],
                   a: int, b: int) -> tuple[str, list]:
    """A clique of size ``a`` or an independent set of size ``b``.

    Returns ``("clique", vs)`` or ``("independent", vs)``.  ``adjacent``
    must be symmetric.
    """
    vs = ordered(vertices)
    if len(vs) < ramsey(a, b):
        raise PreconditionError(f"need at least {ramsey(a, b)} vertices, got {len(vs)}")

    def go(pool: list, a: int, b: int) -> tuple[str, list]:
        if a == 1:
            return "clique", pool[:1]
        if b == 1:
            return "independent", pool[:1]
        v, rest = pool[0], pool[1:]
        near = [u for u in rest if adjacent(v, u)]
        far = [u for u in rest if not adjacent(v, u)]
        if len(near) >= ramsey(a - 1, b):
            kind, found = go(near, a - 1, b)
            return kind, ([v] + found if kind == "clique" else found)
        kind, found = go(far, a, b - 1)
        return kind, (found if kind == "clique" else [v] + found)

    kind, found = go(vs, a, b)
    want = a if kind == "clique" else b
    ok = len(found) == want and all(adjacent(u, w) == (kind == "clique")
                                    for u, w in combinations(found, 2))
    if not ok:  # pragma: no cover
        raise InternalSoundnessError(f"Ramsey extraction returned a bad {kind}")
    return kind, found


def transitive_extract(vertices: Iterable, has_edge: Callable[[object, object], bool],
                       c: int) -> list:
    """Vertices ``v1..vc`` with an edge ``(vi, vj)`` for every ``i < j``."""
    vs = ordered(vertices)
    if len(vs) < transitive(c):
        raise PreconditionError(f"need at least {transitive(c)} vertices, got {len(vs)}")
    for u, w in combinations(vs, 2):
        if not (has_edge(u, w) or has_edge(w, u)):
            raise PreconditionError(f"not semi-complete: {u!r} and {w!r} are not adjacent")

    def go(pool: list, c: int) -> list:
        if c == 1:
            return pool[:1]
        v, rest = pool[0], pool[1:]
        outs = [u for u in rest if has_edge(v, u)]
        ins = [u for u in rest if not has_edge(v, u)]
        if len(outs) >= len(ins):
            return [v] + go(outs, c - 1)
        return go(ins, c - 1) + [v]

    found = go(vs, c)
    if len(found) != c or not all(has_edge(u, w) for u, w in combinations(found, 2)):
        raise InternalSoundnessError("transitive extraction returned a non-transitive order")
    return found
