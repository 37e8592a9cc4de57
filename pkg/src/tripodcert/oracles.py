"""Exponential-time reference answers for small instances.

Tripods are enumerated here straight from the definition, by combining
two branches and a tail found by path search.  No reachability shortcut
from :mod:`tripodcert.tripods` is used, so the two can catch each other's
mistakes.  Every oracle refuses inputs above a size cap instead of quietly
truncating.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable

from .errors import PreconditionError
from .graph import Digraph, MigrationDigraph, delete_vertices, ordered
from .tripods import tripod_exists


class OracleCapError(PreconditionError):
    """The instance is larger than the oracle is allowed to handle."""


def _guard(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise OracleCapError(f"{what} {size} exceeds oracle cap {cap}")


def _paths_into(d: Digraph, c, starts: frozenset, chordless: bool = False) -> list:
    """Simple paths ending at ``c`` that meet ``starts`` only in their first vertex.

    If ``c`` itself is in ``starts`` the length-0 path is included, and the
    search still continues past it.  ``chordless`` drops paths with an edge
    jumping forward over a vertex.
    """
    out = [(c,)] if c in starts else []
    stack = [(c, (c,))]
    while stack:
        u, seq = stack.pop()
        for w in d.pred(u):
            if w in seq:
                continue
            if chordless and any(x in d.succ(w) for x in seq[1:]):
                continue
            if w in starts:
                out.append((w,) + seq)
            else:
                stack.append((w, (w,) + seq))
    return out


def _paths_from(d: Digraph, c, ends: frozenset, chordless: bool = False) -> list:
    """Simple paths from ``c`` that meet ``ends`` only in their last vertex."""
    if c in ends:
        return [(c,)]
    out = []
    stack = [(c, (c,))]
    while stack:
        u, seq = stack.pop()
        for w in d.succ(u):
            if w in seq:
                continue
            if chordless and any(x in d.pred(w) for x in seq[:-1]):
                continue
            if w in ends:
                out.append(seq + (w,))
            else:
                stack.append((w, seq + (w,)))
    return out


def enumerate_tripods(d: MigrationDigraph, chordless: bool = False):
    """Yield ``(s1, s2, t, c, branch1, branch2, tail)`` vertex tuples.

    Branches stop at the first source met walking back from the centre and
    tails at the first sink (a centre that is itself a sink only gets the
    length-0 tail).  Every tripod with an inclusion-minimal vertex set
    appears, and larger tripods always contain one of these.

    With ``chordless`` only paths without forward chords are combined.  A
    chord could be used to shortcut a path, leaving a tripod on a proper
    subset of the vertices, so the vertex-minimal tripods all survive.  Edge
    sets do not shrink that way, so edge questions keep the full enumeration.
    """
    for c in d.vertices:
        branches = _paths_into(d, c, d.sources, chordless)
        if len(branches) < 2:
            continue
        tails = _paths_from(d, c, d.sinks, chordless)
        for b1, b2 in combinations(branches, 2):
            if b1[0] == b2[0] or len(set(b1) & set(b2)) != 1:
                continue
            used = set(b1) | set(b2)
            for tail in tails:
                if len(used & set(tail)) == 1:
                    yield (b1[0], b2[0], tail[-1], c, b1, b2, tail)


def brute_tripod_exists(d: MigrationDigraph) -> bool:
    return next(enumerate_tripods(d, chordless=True), None) is not None


def _minimal(sets: Iterable[frozenset]) -> list:
    uniq = sorted(set(sets), key=len)
    kept: list = []
    for s in uniq:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def _max_disjoint(sets: list, limit: int | None) -> int:
    """Largest number of pairwise disjoint sets, by branch and bound on bitmasks."""
    universe = ordered({x for s in sets for x in s})
    bit = {x: 1 << i for i, x in enumerate(universe)}
    masks = sorted({sum(bit[x] for x in s) for s in sets}, key=lambda m: bin(m).count("1"))
    best = 0

    def go(i: int, used: int, count: int) -> bool:
        nonlocal best
        if count > best:
            best = count
            if limit is not None and best >= limit:
                return True
        if i == len(masks):
            return False
        # each further set needs at least as many elements as the smallest remaining one
        free = len(universe) - bin(used).count("1")
        if count + free // max(1, bin(masks[i]).count("1")) <= best:
            return False
        m = masks[i]
        if not m & used and go(i + 1, used | m, count + 1):
            return True
        return go(i + 1, used, count)

    go(0, 0, 0)
    return best


def brute_packing_number(d: MigrationDigraph, cap: int = 14, limit: int | None = None) -> int:
    """Maximum number of vertex-disjoint tripods (stops early at ``limit``)."""
    _guard(len(d), cap, "vertex count")
    if limit is not None and limit <= 1:
        return min(limit, int(brute_tripod_exists(d)))
    sets = _minimal(frozenset(b1 + b2 + tail)
                    for *_, b1, b2, tail in enumerate_tripods(d, chordless=True))
    return _max_disjoint(sets, limit)


def brute_edge_packing_number(d: MigrationDigraph, cap: int = 12, limit: int | None = None) -> int:
    """Maximum number of edge-disjoint tripods."""
    _guard(d.number_of_edges(), cap, "edge count")

    def edges(seq):
        return list(zip(seq, seq[1:]))

    sets = _minimal(frozenset(edges(b1) + edges(b2) + edges(tail))
                    for *_, b1, b2, tail in enumerate_tripods(d))
    return _max_disjoint(sets, limit)


def brute_min_hitting_set(d: MigrationDigraph, cap: int = 14) -> frozenset:
    """A smallest vertex set whose deletion leaves no tripod."""
    _guard(len(d), cap, "vertex count")
    for size in range(len(d) + 1):
        for cand in combinations(d.vertices, size):
            if not tripod_exists(delete_vertices(d, cand)):
                return frozenset(cand)
    raise AssertionError("deleting every vertex always works")  # pragma: no cover


def brute_max_linkage(d: Digraph, a: Iterable, b: Iterable, cap: int = 12) -> int:
    """Maximum number of vertex-disjoint A-B-paths by exhaustive path search.

    Only paths meeting ``a`` in their first and ``b`` in their last vertex
    are needed: any A-B-linkage can be shortened to such paths.
    """
    _guard(len(d), cap, "vertex count")
    a, b = frozenset(a), frozenset(b)
    found = []
    for s in ordered(a):
        stack = [(s, (s,))]
        while stack:
            u, seq = stack.pop()
            if u in b:
                found.append(frozenset(seq))
                continue
            for w in d.succ(u):
                if w not in seq and w not in a:
                    stack.append((w, seq + (w,)))
    return _max_disjoint(_minimal(found), None)


def brute_min_separator(d: Digraph, a: Iterable, b: Iterable, cap: int = 12) -> int:
    """Size of a smallest vertex set meeting every A-B-path, by subset enumeration."""
    _guard(len(d), cap, "vertex count")
    a, b = frozenset(a), frozenset(b)
    for size in range(len(d) + 1):
        for cut in combinations(d.vertices, size):
            cut = set(cut)
            if d.reachable(a - cut, avoid=cut).isdisjoint(b):
                return size
    raise AssertionError("unreachable")  # pragma: no cover


def brute_common_independent(m1: Callable, m2: Callable, ground: Iterable) -> int:
    """Largest set independent in both oracles, by trying every subset."""
    ground = ordered(ground)
    for size in range(len(ground), -1, -1):
        for cand in combinations(ground, size):
            cand = frozenset(cand)
            if m1(cand) and m2(cand):
                return size
    return 0  # pragma: no cover


def brute_rank(oracle: Callable, subset: Iterable) -> int:
    """Rank as the size of the largest independent subset, by enumeration."""
    items = ordered(subset)
    for size in range(len(items), -1, -1):
        if any(oracle(frozenset(c)) for c in combinations(items, size)):
            return size
    return 0  # pragma: no cover
