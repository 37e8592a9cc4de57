"""Digraphs with sources and sinks, paths, linkages and tripods.

Every value here is immutable once built.  Vertex identifiers are opaque
hashables; whenever an algorithm iterates over vertices it does so in the
order given by :func:`vkey`, which keeps every result deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import InvalidGraphError, PreconditionError

Vertex = Hashable
Edge = tuple  # (tail, head)


def vkey(v: Vertex) -> tuple:
    """Total order on vertex identifiers of mixed types.

    Integers sort before strings, strings before tuples; tuples compare
    element-wise under the same rule.
    """
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vkey(x) for x in v))
    return (3, type(v).__name__, repr(v))


def ordered(vertices: Iterable[Vertex]) -> list:
    return sorted(vertices, key=vkey)


def ekey(e: Edge) -> tuple:
    return (vkey(e[0]), vkey(e[1]))


class Digraph:
    """A finite simple digraph without loops."""

    __slots__ = ("_vset", "_eset", "vertices", "_succ", "_pred")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = ()):
        vset = frozenset(vertices)
        eset = set()
        for u, v in edges:
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u!r}")
            if u not in vset or v not in vset:
                missing = u if u not in vset else v
                raise InvalidGraphError(f"edge ({u!r}, {v!r}) uses undeclared vertex {missing!r}")
            eset.add((u, v))
        self._init(vset, frozenset(eset))

    def _init(self, vset: frozenset, eset: frozenset) -> None:
        self._vset = vset
        self._eset = eset
        self.vertices = tuple(ordered(vset))
        succ: dict = {v: [] for v in vset}
        pred: dict = {v: [] for v in vset}
        for u, v in eset:
            succ[u].append(v)
            pred[v].append(u)
        self._succ = {v: tuple(ordered(ns)) for v, ns in succ.items()}
        self._pred = {v: tuple(ordered(ns)) for v, ns in pred.items()}

    @classmethod
    def _trusted(cls, vset: frozenset, eset: frozenset) -> "Digraph":
        g = cls.__new__(cls)
        Digraph._init(g, vset, eset)
        return g

    @property
    def vertex_set(self) -> frozenset:
        return self._vset

    @property
    def edges(self) -> frozenset:
        return self._eset

    def sorted_edges(self) -> list:
        return sorted(self._eset, key=ekey)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self._eset

    def succ(self, v: Vertex) -> tuple:
        return self._succ[v]

    def pred(self, v: Vertex) -> tuple:
        return self._pred[v]

    def __contains__(self, v: object) -> bool:
        return v in self._vset

    def __len__(self) -> int:
        return len(self._vset)

    def number_of_edges(self) -> int:
        return len(self._eset)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def _key(self) -> tuple:
        return (self._vset, self._eset)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(|V|={len(self)}, |E|={self.number_of_edges()})"

    def reachable(self, start: Iterable[Vertex], *, reverse: bool = False,
                  avoid: Iterable[Vertex] = ()) -> set:
        """Vertices reachable from ``start`` (backwards if ``reverse``) without entering ``avoid``."""
        blocked = set(avoid)
        nbrs = self._pred if reverse else self._succ
        seen = {v for v in start if v not in blocked}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    queue.append(w)
        return seen

    def bfs_distances(self, start: Iterable[Vertex], *, reverse: bool = False) -> dict:
        nbrs = self._pred if reverse else self._succ
        dist = {v: 0 for v in start}
        queue = deque(ordered(dist))
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_path(self, p: "Path") -> bool:
        if any(v not in self._vset for v in p.vertices):
            return False
        return all(e in self._eset for e in p.edges())

    def union_of_paths(self, paths: Iterable["Path"]) -> "Digraph":
        """The subgraph formed by the vertices and edges of ``paths``."""
        vs, es = set(), set()
        for p in paths:
            vs.update(p.vertices)
            es.update(p.edges())
        if not es <= self._eset:
            raise InvalidGraphError("path edge missing from host digraph")
        return Digraph._trusted(frozenset(vs), frozenset(es))


class MigrationDigraph(Digraph):
    """A digraph with a designated set of sources and a set of sinks.

    Sources and sinks may overlap; a vertex in both is an S-T-path of
    length zero on its own.
    """

    __slots__ = ("sources", "sinks")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = (),
                 sources: Iterable[Vertex] = (), sinks: Iterable[Vertex] = ()):
        super().__init__(vertices, edges)
        self._set_terminals(sources, sinks)

    def _set_terminals(self, sources: Iterable[Vertex], sinks: Iterable[Vertex]) -> None:
        self.sources = frozenset(sources)
        self.sinks = frozenset(sinks)
        for name, group in (("source", self.sources), ("sink", self.sinks)):
            for v in group:
                if v not in self._vset:
                    raise InvalidGraphError(f"{name} {v!r} is not a vertex")

    @classmethod
    def from_digraph(cls, base: Digraph, sources: Iterable[Vertex],
                     sinks: Iterable[Vertex]) -> "MigrationDigraph":
        g = cls.__new__(cls)
        g._vset, g._eset, g.vertices = base._vset, base._eset, base.vertices
        g._succ, g._pred = base._succ, base._pred
        g._set_terminals(sources, sinks)
        return g

    @property
    def base(self) -> Digraph:
        return Digraph._trusted(self._vset, self._eset)

    def with_terminals(self, sources: Iterable[Vertex] | None = None,
                       sinks: Iterable[Vertex] | None = None) -> "MigrationDigraph":
        return MigrationDigraph.from_digraph(
            self,
            self.sources if sources is None else sources,
            self.sinks if sinks is None else sinks,
        )

    def _key(self) -> tuple:
        return (self._vset, self._eset, self.sources, self.sinks)

    def __repr__(self) -> str:
        return (f"MigrationDigraph(|V|={len(self)}, |E|={self.number_of_edges()}, "
                f"S={ordered(self.sources)}, T={ordered(self.sinks)})")


@dataclass(frozen=True)
class Path:
    """A nonempty sequence of distinct vertices.

    Edges are not stored; whether consecutive vertices are adjacent is
    checked against a host digraph with :meth:`Digraph.is_path`.
    """

    vertices: tuple
    vertex_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        if not vs:
            raise InvalidGraphError("a path needs at least one vertex")
        vset = frozenset(vs)
        if len(vset) != len(vs):
            raise InvalidGraphError(f"path repeats a vertex: {vs!r}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "vertex_set", vset)

    @classmethod
    def of(cls, *vertices: Vertex) -> "Path":
        return cls(vertices)

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> list:
        vs = self.vertices
        return list(zip(vs, vs[1:]))

    def __iter__(self) -> Iterator:
        return iter(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    def index(self, v: Vertex) -> int:
        return self.vertices.index(v)

    def meets(self, other: "Path | Iterable[Vertex]") -> bool:
        other_set = other.vertex_set if isinstance(other, Path) else set(other)
        return not self.vertex_set.isdisjoint(other_set)

    def then(self, other: "Path") -> "Path":
        """Concatenate two paths sharing exactly the joint vertex."""
        if self.end != other.start:
            raise InvalidGraphError(f"cannot join path ending at {self.end!r} to one starting at {other.start!r}")
        return Path(self.vertices + other.vertices[1:])


def subpath(p: Path, a: Vertex, b: Vertex) -> Path:
    """The contiguous piece of ``p`` from ``a`` to ``b`` inclusive."""
    if a not in p or b not in p:
        missing = a if a not in p else b
        raise PreconditionError(f"vertex {missing!r} is not on the path")
    i, j = p.index(a), p.index(b)
    if i > j:
        raise PreconditionError(f"{a!r} occurs after {b!r} on the path")
    return Path(p.vertices[i:j + 1])


@dataclass(frozen=True)
class Linkage:
    """An ordered family of pairwise vertex-disjoint paths."""

    paths: tuple

    def __post_init__(self) -> None:
        paths = tuple(self.paths)
        seen: set = set()
        for p in paths:
            if not seen.isdisjoint(p.vertex_set):
                raise InvalidGraphError("linkage paths are not vertex-disjoint")
            seen |= p.vertex_set
        object.__setattr__(self, "paths", paths)

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __getitem__(self, i: int) -> Path:
        return self.paths[i]

    def starts(self) -> frozenset:
        return frozenset(p.start for p in self.paths)

    def ends(self) -> frozenset:
        return frozenset(p.end for p in self.paths)

    @property
    def vertex_set(self) -> frozenset:
        return frozenset().union(*(p.vertex_set for p in self.paths))

    def by_end(self) -> dict:
        return {p.end: p for p in self.paths}

    def links(self, a: Iterable[Vertex], b: Iterable[Vertex]) -> bool:
        """True if every path starts in ``a`` and ends in ``b``."""
        a, b = set(a), set(b)
        return all(p.start in a and p.end in b for p in self.paths)


def pairwise_intersect(first: Iterable[Path], second: Iterable[Path]) -> bool:
    second = list(second)
    return all(p.meets(q) for p in first for q in second)


@dataclass(frozen=True)
class Tripod:
    """Two branches from distinct sources meeting at a centre, then a tail to a sink.

    Construction does not validate; use :func:`tripodcert.tripods.verify_tripod`.
    """

    s1: Vertex
    s2: Vertex
    t: Vertex
    c: Vertex
    branch1: Path
    branch2: Path
    tail: Path

    @property
    def vertex_set(self) -> frozenset:
        return self.branch1.vertex_set | self.branch2.vertex_set | self.tail.vertex_set

    def edge_set(self) -> frozenset:
        return frozenset(self.branch1.edges() + self.branch2.edges() + self.tail.edges())

    def paths(self) -> tuple:
        return (self.branch1, self.branch2, self.tail)


# --- structural transformations -------------------------------------------


def reverse(d: Digraph) -> Digraph:
    """Flip every edge; sources and sinks of a migration digraph are kept."""
    eset = frozenset((v, u) for u, v in d.edges)
    rev = Digraph._trusted(d.vertex_set, eset)
    if isinstance(d, MigrationDigraph):
        return MigrationDigraph.from_digraph(rev, d.sources, d.sinks)
    return rev


def delete_vertices(d: Digraph, removed: Iterable[Vertex]) -> Digraph:
    removed = frozenset(removed)
    if not removed <= d.vertex_set:
        extra = ordered(removed - d.vertex_set)
        raise PreconditionError(f"cannot delete non-vertices {extra!r}")
    vset = d.vertex_set - removed
    eset = frozenset(e for e in d.edges if e[0] in vset and e[1] in vset)
    rest = Digraph._trusted(vset, eset)
    if isinstance(d, MigrationDigraph):
        return MigrationDigraph.from_digraph(rest, d.sources - removed, d.sinks - removed)
    return rest


def delete_edges(d: Digraph, removed: Iterable[Edge]) -> Digraph:
    removed = frozenset(removed)
    if not removed <= d.edges:
        raise PreconditionError("cannot delete edges that are not present")
    rest = Digraph._trusted(d.vertex_set, d.edges - removed)
    if isinstance(d, MigrationDigraph):
        return MigrationDigraph.from_digraph(rest, d.sources, d.sinks)
    return rest


IN, OUT = "in", "out"


@dataclass(frozen=True)
class SplitMap:
    """Correspondence between a digraph and its vertex-split copy.

    Vertex ``v`` becomes ``(v, "in")`` and ``(v, "out")``.
    """

    originals: frozenset

    @staticmethod
    def inn(v: Vertex) -> tuple:
        return (v, IN)

    @staticmethod
    def out(v: Vertex) -> tuple:
        return (v, OUT)

    def copies(self, v: Vertex) -> tuple:
        if v not in self.originals:
            raise KeyError(v)
        return (v, IN), (v, OUT)

    def original(self, copy: object) -> Vertex:
        if not (isinstance(copy, tuple) and len(copy) == 2 and copy[1] in (IN, OUT)
                and copy[0] in self.originals):
            raise KeyError(copy)
        return copy[0]

    def is_copy(self, w: object) -> bool:
        try:
            self.original(w)
        except KeyError:
            return False
        return True

    def lift(self, p: Path) -> Path:
        """Image of ``p``: each vertex v is replaced by v_in, v_out."""
        seq = []
        for v in p.vertices:
            seq.extend(self.copies(v))
        return Path(seq)

    def project(self, seq: Iterable) -> Path:
        """Inverse of :meth:`lift`; consecutive copies of one vertex collapse."""
        out: list = []
        for w in seq:
            v = self.original(w)
            if not out or out[-1] != v:
                out.append(v)
        return Path(out)


def split_vertices(d: Digraph) -> tuple[Digraph, SplitMap]:
    """Replace each vertex by an in/out pair joined by an edge."""
    m = SplitMap(d.vertex_set)
    vset = frozenset(c for v in d.vertex_set for c in m.copies(v))
    eset = {(m.inn(v), m.out(v)) for v in d.vertex_set}
    eset.update((m.out(u), m.inn(v)) for u, v in d.edges)
    return Digraph._trusted(vset, frozenset(eset)), m


def check_line_degrees(d: MigrationDigraph) -> None:
    """Raise unless every source has in/out degree 0/1 and every sink 1/0."""
    for s in ordered(d.sources):
        if d.pred(s) or len(d.succ(s)) != 1:
            raise PreconditionError(
                f"source {s!r} must have no incoming and exactly one outgoing edge "
                f"(has {len(d.pred(s))} in, {len(d.succ(s))} out)")
    for t in ordered(d.sinks):
        if d.succ(t) or len(d.pred(t)) != 1:
            raise PreconditionError(
                f"sink {t!r} must have exactly one incoming and no outgoing edge "
                f"(has {len(d.pred(t))} in, {len(d.succ(t))} out)")


def linegraph(d: MigrationDigraph) -> MigrationDigraph:
    """Digraph on the edges of ``d``; (e, f) is an edge when head(e) = tail(f)."""
    check_line_degrees(d)
    vset = d.edges
    eset = frozenset(((u, v), (v, w)) for u, v in d.edges for w in d.succ(v))
    sources = {(s, d.succ(s)[0]) for s in d.sources}
    sinks = {(d.pred(t)[0], t) for t in d.sinks}
    return MigrationDigraph.from_digraph(Digraph._trusted(vset, eset), sources, sinks)


def edge_path_to_vertices(edges: Iterable[Edge]) -> Path:
    """A path of the linegraph, read back as a vertex walk of the original digraph."""
    edges = list(edges)
    seq = [edges[0][0]] + [e[1] for e in edges]
    return Path(seq)


def relabel(d: MigrationDigraph, mapping: Mapping) -> MigrationDigraph:
    return MigrationDigraph(
        [mapping[v] for v in d.vertices],
        [(mapping[u], mapping[v]) for u, v in d.edges],
        [mapping[v] for v in d.sources],
        [mapping[v] for v in d.sinks],
    )
