"""Vertex-disjoint A-B-paths and minimum vertex separators.

Unit vertex capacities are realised by splitting each vertex ``v`` into
``v_in -> v_out`` with capacity one; original edges and the attachments of
the super source/sink get a capacity no cut can afford.  Maximum flow is
computed by shortest augmenting paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InternalSoundnessError, PreconditionError
from .graph import Digraph, Linkage, MigrationDigraph, Path, Vertex, ordered, vkey


@dataclass(frozen=True)
class MengerResult:
    """A maximum A-B-linkage together with a minimum A-B-separator."""

    linkage: Linkage
    separator: frozenset
    value: int

    def decide(self, k: int) -> Linkage | frozenset:
        """Either a linkage of order ``k`` or a separator of size at most ``k - 1``."""
        if self.value >= k:
            return Linkage(self.linkage.paths[:k])
        return self.separator


class _Network:
    __slots__ = ("n", "head", "cap", "adj", "source", "sink", "verts", "index")

    def __init__(self, d: Digraph, a: Iterable[Vertex], b: Iterable[Vertex]):
        self.verts = d.vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        n = len(self.verts)
        self.n = n
        self.source, self.sink = 2 * n, 2 * n + 1
        self.head: list = []
        self.cap: list = []
        self.adj: list = [[] for _ in range(2 * n + 2)]
        big = n + 1
        for i in range(n):
            self._arc(2 * i, 2 * i + 1, 1)
        for u, v in d.sorted_edges():
            self._arc(2 * self.index[u] + 1, 2 * self.index[v], big)
        for v in ordered(set(a)):
            self._arc(self.source, 2 * self.index[v], big)
        for v in ordered(set(b)):
            self._arc(2 * self.index[v] + 1, self.sink, big)

    def _arc(self, u: int, v: int, c: int) -> None:
        self.adj[u].append(len(self.head))
        self.head.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.head))
        self.head.append(u)
        self.cap.append(0)

    def augment(self) -> bool:
        parent = {self.source: -1}
        queue = deque([self.source])
        head, cap, adj = self.head, self.cap, self.adj
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                w = head[e]
                if cap[e] > 0 and w not in parent:
                    parent[w] = e
                    if w == self.sink:
                        queue.clear()
                        break
                    queue.append(w)
        if self.sink not in parent:
            return False
        # integral capacities: pushing a single unit is always feasible
        e = parent[self.sink]
        while e != -1:
            cap[e] -= 1
            cap[e ^ 1] += 1
            e = parent[head[e ^ 1]]
        return True

    def run(self, limit: int | None = None) -> int:
        value = 0
        while (limit is None or value < limit) and self.augment():
            value += 1
        return value

    def flow(self, e: int) -> int:
        # flow on a forward arc equals the residual capacity of its twin
        return self.cap[e ^ 1] if e % 2 == 0 else 0

    def paths(self) -> list:
        used = {}
        result = []
        for e0 in self.adj[self.source]:
            if e0 % 2 or self.flow(e0) == 0:
                continue
            node = self.head[e0]
            seq = []
            while node != self.sink:
                if node % 2 == 0:
                    seq.append(self.verts[node // 2])
                for e in self.adj[node]:
                    if e % 2 == 0 and self.flow(e) - used.get(e, 0) > 0:
                        used[e] = used.get(e, 0) + 1
                        node = self.head[e]
                        break
                else:  # pragma: no cover - conservation guarantees an outgoing unit
                    raise InternalSoundnessError("flow decomposition got stuck")
            result.append(Path(seq))
        return result

    def separator(self) -> frozenset:
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                w = self.head[e]
                if self.cap[e] > 0 and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(self.verts[i] for i in range(self.n)
                         if 2 * i in seen and 2 * i + 1 not in seen)


def separates(d: Digraph, a: Iterable[Vertex], b: Iterable[Vertex], cut: Iterable[Vertex]) -> bool:
    """True if every A-B-path of ``d`` meets ``cut``."""
    cut = set(cut)
    reach = d.reachable(set(a) - cut, avoid=cut)
    return reach.isdisjoint(b)


def max_linkage(d: Digraph, a: Iterable[Vertex], b: Iterable[Vertex]) -> MengerResult:
    """Maximum A-B-linkage and a minimum vertex set meeting all A-B-paths.

    Both halves are checked independently before returning: the paths are
    valid, disjoint A-B-paths of ``d``, and deleting the separator leaves
    no A-B-path.
    """
    a, b = frozenset(a), frozenset(b)
    if not (a | b) <= d.vertex_set:
        raise PreconditionError("A and B must be vertex subsets of the digraph")
    net = _Network(d, a, b)
    value = net.run()
    paths = sorted(net.paths(), key=lambda p: vkey(p.start))
    linkage = Linkage(tuple(paths))
    sep = net.separator()
    if len(linkage) != value or len(sep) != value:
        raise InternalSoundnessError(f"duality broken: flow {value}, {len(linkage)} paths, {len(sep)} cut")
    if not (linkage.links(a, b) and all(d.is_path(p) for p in linkage)):
        raise InternalSoundnessError("flow decomposition produced an invalid linkage")
    if not separates(d, a, b, sep):
        raise InternalSoundnessError("extracted separator misses an A-B-path")
    return MengerResult(linkage, sep, value)


def max_linkage_size(d: Digraph, a: Iterable[Vertex], b: Iterable[Vertex],
                     limit: int | None = None) -> int:
    """Value of the maximum A-B-linkage, optionally stopping once ``limit`` is reached."""
    return _Network(d, a, b).run(limit)


def is_linkable(d: MigrationDigraph, x: Iterable[Vertex], y: Iterable[Vertex]) -> bool:
    """True if some X-Y-linkage ends at every vertex of ``y``."""
    x, y = frozenset(x), frozenset(y)
    if not x <= d.sources or not y <= d.sinks:
        raise PreconditionError("X must be a set of sources and Y a set of sinks")
    if not y:
        return True
    if len(y) > len(x):
        return False
    return _Network(d, x, y).run(len(y)) == len(y)
