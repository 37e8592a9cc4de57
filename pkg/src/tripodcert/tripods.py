"""Finding and checking tripods, and the packing and hitting-set certificates built from them.

A migration digraph contains a tripod exactly when some sink is reachable
from two distinct sources.  Given two such sources ``s1, s2`` and the sink
``t``, a tripod is read off shortest paths: among the vertices lying on a
shortest s1-t-path and on a shortest s2-t-path, the one farthest from ``t``
is a valid centre, because any earlier common vertex would be farther still.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import InternalSoundnessError, PreconditionError
from .graph import (Digraph, MigrationDigraph, Path, Tripod, Vertex, delete_edges,
                    delete_vertices, ordered, vkey)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: truthy when it passed, otherwise ``reason`` says why."""

    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)


def _fail(reason: str, witness: object = None) -> Verdict:
    return Verdict(False, reason, witness)


# --- detection -------------------------------------------------------------


def source_labels(d: MigrationDigraph) -> dict:
    """For each vertex, up to two distinct sources that reach it."""
    labels: dict = {v: [] for v in d.vertices}
    queue: deque = deque()
    for s in ordered(d.sources):
        labels[s].append(s)
        queue.append((s, s))
    while queue:
        u, lab = queue.popleft()
        for w in d.succ(u):
            got = labels[w]
            if len(got) < 2 and lab not in got:
                got.append(lab)
                queue.append((w, lab))
    return labels


def tripod_exists(d: MigrationDigraph) -> bool:
    """True iff some sink is reachable from two distinct sources."""
    if len(d.sources) < 2 or not d.sinks:
        return False
    labels = source_labels(d)
    return any(len(labels[t]) == 2 for t in d.sinks)


def _lex_shortest(d: Digraph, u: Vertex, w: Vertex) -> Path:
    to_w = d.bfs_distances([w], reverse=True)
    if u not in to_w:
        raise PreconditionError(f"{w!r} is not reachable from {u!r}")
    seq = [u]
    while seq[-1] != w:
        here = to_w[seq[-1]]
        seq.append(next(x for x in d.succ(seq[-1]) if to_w.get(x) == here - 1))
    return Path(seq)


class _Geometry:
    """Cached BFS layers of one digraph, shared by the tripod builders."""

    def __init__(self, d: MigrationDigraph):
        self.d = d
        self._fwd: dict = {}
        self._back: dict = {}

    def fwd(self, s: Vertex) -> dict:
        if s not in self._fwd:
            self._fwd[s] = self.d.bfs_distances([s])
        return self._fwd[s]

    def to(self, t: Vertex) -> dict:
        if t not in self._back:
            self._back[t] = self.d.bfs_distances([t], reverse=True)
        return self._back[t]

    def centre(self, s1: Vertex, s2: Vertex, t: Vertex) -> tuple:
        """The common shortest-path vertex farthest from ``t`` and its distance."""
        to_t, f1, f2 = self.to(t), self.fwd(s1), self.fwd(s2)
        d1, d2 = to_t[s1], to_t[s2]
        best, best_dist = None, -1
        for v in self.d.vertices:
            dv = to_t.get(v)
            if dv is None or v not in f1 or v not in f2:
                continue
            if f1[v] + dv == d1 and f2[v] + dv == d2 and dv > best_dist:
                best, best_dist = v, dv
        return best, best_dist

    def build(self, s1: Vertex, s2: Vertex, t: Vertex, c: Vertex) -> Tripod:
        d = self.d
        b1, b2 = _lex_shortest(d, s1, c), _lex_shortest(d, s2, c)
        if b1.length < b2.length:
            # a degenerate branch goes second
            s1, s2, b1, b2 = s2, s1, b2, b1
        return Tripod(s1, s2, t, c, b1, b2, _lex_shortest(d, c, t))

    def candidates(self) -> list:
        """One shortest tripod per (source pair, sink), smallest first.

        Entries are ``(vertex count, -suffix length, key, s1, s2, t, c)``.
        """
        d = self.d
        labels = source_labels(d)
        out = []
        for t in ordered(d.sinks):
            if len(labels[t]) < 2:
                continue
            to_t = self.to(t)
            reach = [s for s in ordered(d.sources) if s in to_t]
            for s1, s2 in combinations(reach, 2):
                c, suffix = self.centre(s1, s2, t)
                f1, f2 = self.fwd(s1), self.fwd(s2)
                size = f1[c] + f2[c] + suffix + 1
                key = (to_t[s1] + to_t[s2], -suffix, vkey(t), vkey(s1), vkey(s2))
                out.append((size, key, s1, s2, t, c))
        out.sort(key=lambda e: (e[0], e[1]))
        return out


def find_tripod(d: MigrationDigraph) -> Tripod:
    """A tripod built from a shortest pair of source-to-sink paths.

    The pair minimises total length over all sinks and source pairs, then
    maximises the shared suffix; remaining ties go to the smallest
    identifiers.
    """
    geo = _Geometry(d)
    best = None
    for _, key, s1, s2, t, c in geo.candidates():
        if best is None or key < best[0]:
            best = (key, s1, s2, t, c)
    if best is None:
        raise PreconditionError("the migration digraph contains no tripod")
    _, s1, s2, t, c = best
    r = geo.build(s1, s2, t, c)
    check = verify_tripod(d, r)
    if not check:  # pragma: no cover - guaranteed by the shortest-path argument
        raise InternalSoundnessError(f"built an invalid tripod: {check.reason}")
    return r


def tripod_from_path_pair(d: MigrationDigraph, p: Path, q: Path) -> Tripod:
    """A tripod inside the union of two source-to-sink paths with a common end."""
    if p.start == q.start:
        raise PreconditionError("the two paths must start at distinct vertices")
    if p.end != q.end:
        raise PreconditionError("the two paths must end at the same vertex")
    if p.start not in d.sources or q.start not in d.sources or p.end not in d.sinks:
        raise PreconditionError("both paths must be S-T-paths")
    union = d.union_of_paths([p, q])
    host = MigrationDigraph.from_digraph(union, {p.start, q.start}, {p.end})
    r = find_tripod(host)
    check = verify_tripod(d, r)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"path-pair tripod invalid in host: {check.reason}")
    return r


# --- verification ----------------------------------------------------------


def verify_tripod(d: MigrationDigraph, r: Tripod) -> Verdict:
    if r.s1 == r.s2:
        return _fail("the two sources coincide")
    for name, v, group in (("s1", r.s1, d.sources), ("s2", r.s2, d.sources), ("t", r.t, d.sinks)):
        if v not in group:
            kind = "source" if group is d.sources else "sink"
            return _fail(f"{name}={v!r} is not a {kind}")
    ends = (("branch1", r.branch1, r.s1, r.c), ("branch2", r.branch2, r.s2, r.c),
            ("tail", r.tail, r.c, r.t))
    for name, path, a, b in ends:
        if path.start != a or path.end != b:
            return _fail(f"{name} runs {path.start!r}->{path.end!r}, expected {a!r}->{b!r}")
        if not d.is_path(path):
            return _fail(f"{name} is not a path of the digraph")
    only_c = frozenset([r.c])
    for (n1, p1), (n2, p2) in combinations((("branch1", r.branch1), ("branch2", r.branch2),
                                            ("tail", r.tail)), 2):
        shared = p1.vertex_set & p2.vertex_set
        if shared != only_c:
            return _fail(f"{n1} and {n2} share {ordered(shared - only_c)!r} besides the centre")
    return PASS


@dataclass(frozen=True)
class Certificate:
    """Either a packing of tripods or a set hitting all of them.

    ``kind`` is one of ``packing``, ``hitting-set``, ``edge-packing`` and
    ``edge-hitting-set``.  For hitting kinds ``bound`` is the size the set
    is claimed not to exceed.
    """

    kind: str
    packing: tuple = ()
    hitting_set: frozenset = frozenset()
    provenance: tuple = ()
    bound: int | None = None

    KINDS = ("packing", "hitting-set", "edge-packing", "edge-hitting-set")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise PreconditionError(f"unknown certificate kind {self.kind!r}")
        object.__setattr__(self, "packing", tuple(self.packing))
        object.__setattr__(self, "hitting_set", frozenset(self.hitting_set))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def is_packing(self) -> bool:
        return self.kind.endswith("packing")

    @classmethod
    def of_packing(cls, tripods: Iterable[Tripod], *provenance: str) -> "Certificate":
        return cls("packing", packing=tuple(tripods), provenance=provenance)

    @classmethod
    def of_hitting_set(cls, vertices: Iterable[Vertex], bound: int, *provenance: str) -> "Certificate":
        return cls("hitting-set", hitting_set=frozenset(vertices), provenance=provenance, bound=bound)

    def with_provenance(self, *tags: str) -> "Certificate":
        return Certificate(self.kind, self.packing, self.hitting_set, tags + self.provenance,
                           self.bound)


def packing_verdict(d: MigrationDigraph, k: int, tripods: Iterable[Tripod], *,
                    edges: bool = False) -> Verdict:
    tripods = list(tripods)
    if len(tripods) < k:
        return _fail(f"packing has {len(tripods)} tripods, {k} required")
    used: set = set()
    for i, r in enumerate(tripods):
        check = verify_tripod(d, r)
        if not check:
            return _fail(f"tripod {i} invalid: {check.reason}", r)
        part = r.edge_set() if edges else r.vertex_set
        if not used.isdisjoint(part):
            what = "edge" if edges else "vertex"
            return _fail(f"tripod {i} is not {what}-disjoint from the earlier ones", r)
        used |= part
    return PASS


def verify_certificate(d: MigrationDigraph, k: int, cert: Certificate) -> Verdict:
    """Independent check of a certificate against the instance alone."""
    if k < 1:
        return _fail("k must be positive")
    if cert.kind == "packing":
        return packing_verdict(d, k, cert.packing)
    if cert.kind == "edge-packing":
        return packing_verdict(d, k, cert.packing, edges=True)
    if cert.bound is None:
        return _fail("hitting set carries no size bound")
    if len(cert.hitting_set) > cert.bound:
        return _fail(f"hitting set has {len(cert.hitting_set)} elements, bound is {cert.bound}")
    if cert.kind == "hitting-set":
        if not cert.hitting_set <= d.vertex_set:
            return _fail("hitting set contains non-vertices")
        rest = delete_vertices(d, cert.hitting_set)
        what = "deleting the hitting set"
    else:
        if not cert.hitting_set <= d.edges:
            return _fail("edge hitting set contains non-edges")
        rest = delete_edges(d, cert.hitting_set)
        what = "deleting the hitting edges"
    if tripod_exists(rest):
        return _fail(f"a tripod survives {what}", find_tripod(rest))
    return PASS


# --- direct bounded packing search -----------------------------------------


def prune_hitting_set(d: MigrationDigraph, hit: Iterable[Vertex]) -> frozenset:
    """Drop vertices of a hitting set, in vertex order, while it still meets every tripod."""
    kept = set(hit)
    for v in ordered(kept):
        if not tripod_exists(delete_vertices(d, kept - {v})):
            kept.discard(v)
    return frozenset(kept)


def pack_tripods(d: MigrationDigraph, k: int, *, max_nodes: int = 5000) -> list | None:
    """Search for ``k`` vertex-disjoint tripods by branching on shortest tripods.

    Sound but incomplete: candidates are the shortest tripod of each
    (source pair, sink) triple, smallest first.  Returns ``None`` when the
    search is exhausted or exceeds ``max_nodes`` branching steps.
    """
    if k <= 0:
        return []
    dead: set = set()
    budget = [max_nodes]

    def search(g: MigrationDigraph, need: int) -> list | None:
        if need == 0:
            return []
        key = (g.vertex_set, need)
        if key in dead or budget[0] <= 0:
            return None
        budget[0] -= 1
        if len(g.sources) < 2 * need or len(g.sinks) < need or not tripod_exists(g):
            dead.add(key)
            return None
        geo = _Geometry(g)
        tried: set = set()
        for _, _, s1, s2, t, c in geo.candidates():
            r = geo.build(s1, s2, t, c)
            if r.vertex_set in tried:
                continue
            tried.add(r.vertex_set)
            rest = search(delete_vertices(g, r.vertex_set), need - 1)
            if rest is not None:
                return [r] + rest
            if budget[0] <= 0:
                return None
        dead.add(key)
        return None

    found = search(d, k)
    if found is not None and not packing_verdict(d, k, found):  # pragma: no cover
        raise InternalSoundnessError("direct search produced an invalid packing")
    return found
