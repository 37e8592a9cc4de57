"""Gammoids over sink sets and cardinality matroid intersection.

Matroids are given by independence oracles: callables taking a frozenset
of ground elements and answering whether it is independent.  Nothing in the
intersection engine is specific to gammoids, so it is also exercised with
partition and free matroids in the tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import InternalSoundnessError, MatroidAxiomError, PreconditionError
from .graph import MigrationDigraph, Vertex, ordered
from .menger import is_linkable, max_linkage_size

Oracle = Callable[[frozenset], bool]


class GammoidOracle:
    """Sink subsets linkable from a fixed side of the sources.

    Answers are memoised per queried set; the host digraph is immutable so
    the cache never goes stale.
    """

    def __init__(self, host: MigrationDigraph, source_side: Iterable[Vertex],
                 ground: Iterable[Vertex] | None = None):
        self.host = host
        self.source_side = frozenset(source_side)
        self.ground = frozenset(host.sinks if ground is None else ground)
        if not self.source_side <= host.sources:
            raise PreconditionError("source side must consist of sources")
        if not self.ground <= host.sinks:
            raise PreconditionError("gammoid ground set must consist of sinks")
        self._memo: dict = {}

    def __call__(self, subset: Iterable[Vertex]) -> bool:
        subset = frozenset(subset)
        hit = self._memo.get(subset)
        if hit is None:
            if not subset <= self.ground:
                raise PreconditionError("queried set leaves the ground set")
            hit = self._memo[subset] = is_linkable(self.host, self.source_side, subset)
        return hit

    def rank(self, subset: Iterable[Vertex]) -> int:
        return gammoid_rank(self, subset)


def gammoid_rank(oracle: GammoidOracle, subset: Iterable[Vertex]) -> int:
    """Largest linkable part of ``subset``, read off a single max-flow."""
    subset = frozenset(subset)
    if not subset <= oracle.ground:
        raise PreconditionError("rank query leaves the ground set")
    if not subset:
        return 0
    return max_linkage_size(oracle.host, oracle.source_side, subset)


def oracle_rank(oracle: Oracle, subset: Iterable) -> int:
    """Rank by the greedy algorithm, valid for any matroid oracle."""
    basis: frozenset = frozenset()
    for e in ordered(subset):
        if oracle(basis | {e}):
            basis = basis | {e}
    return len(basis)


@dataclass(frozen=True)
class IntersectionCertificate:
    """A maximum common independent set and a partition proving it maximum.

    ``rank1_x + rank2_y == len(common)`` where the ranks are taken in the
    first matroid on ``x_side`` and in the second on ``y_side``.
    """

    common: frozenset
    x_side: frozenset
    y_side: frozenset
    rank1_x: int
    rank2_y: int

    @property
    def size(self) -> int:
        return len(self.common)


def _shortest_augmenting_path(sources, targets, exchange) -> list | None:
    parent = {}
    queue = deque()
    for x in sources:
        parent[x] = None
        queue.append(x)
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in exchange.get(u, ()):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def matroid_intersection(m1: Oracle, m2: Oracle, ground: Iterable) -> IntersectionCertificate:
    """Edmonds' augmenting-path algorithm with its dual partition.

    Augmenting paths are shortest paths in the exchange graph, scanned in
    ground-set order, so the result is a deterministic function of the
    oracles.  Once no path exists, the elements that can still reach an
    element insertable in the second matroid form the first side of the
    partition.
    """
    order = ordered(ground)
    ground = frozenset(order)
    for name, m in (("first", m1), ("second", m2)):
        if not m(frozenset()):
            raise MatroidAxiomError(f"{name} oracle rejects the empty set")
    common: frozenset = frozenset()
    while True:
        inside = [e for e in order if e in common]
        outside = [e for e in order if e not in common]
        src = [x for x in outside if m1(common | {x})]
        dst = {x for x in outside if m2(common | {x})}
        exchange: dict = {}
        for y in inside:
            without = common - {y}
            for x in outside:
                swapped = without | {x}
                if m1(swapped):
                    exchange.setdefault(y, []).append(x)
                if m2(swapped):
                    exchange.setdefault(x, []).append(y)
        for k in exchange:
            exchange[k] = ordered(exchange[k])
        path = _shortest_augmenting_path(src, dst, exchange)
        if path is None:
            break
        grown = common.symmetric_difference(path)
        if len(grown) != len(common) + 1 or not (m1(grown) and m2(grown)):
            raise MatroidAxiomError(
                f"augmenting along {path!r} broke independence; oracles are not matroids")
        common = grown

    reverse: dict = {}
    for u, ws in exchange.items():
        for w in ws:
            reverse.setdefault(w, []).append(u)
    can_reach = set(dst)
    queue = deque(ordered(dst))
    while queue:
        w = queue.popleft()
        for u in reverse.get(w, ()):
            if u not in can_reach:
                can_reach.add(u)
                queue.append(u)
    x_side = frozenset(can_reach)
    y_side = ground - x_side
    cert = IntersectionCertificate(common, x_side, y_side,
                                   oracle_rank(m1, x_side), oracle_rank(m2, y_side))
    if cert.rank1_x + cert.rank2_y != len(common):
        raise MatroidAxiomError(
            f"dual partition not tight: {cert.rank1_x} + {cert.rank2_y} != {len(common)}")
    if not (m1(common) and m2(common)):  # pragma: no cover - guarded during augmentation
        raise InternalSoundnessError("common set lost independence")
    return cert
