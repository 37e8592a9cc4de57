"""Seeded instance generators.

``generate(InstanceSpec(...))`` returns a migration digraph; the shaped
builders (:func:`comb`, :func:`crossing_grid`) also return the linkages and
crossing paths that their shape guarantees, for tests that need them.

Shape contracts:

* ``comb``: tooth paths ``s_i -> v(i,1) -> ... -> v(i,h) -> t_i`` form an
  S-T-linkage; a spine path visits row 1 of every tooth.  With
  ``weave=ell`` the spine visits the teeth so that every B-segment of the
  crossing-path split sees the same teeth.
* ``crossing_grid``: two S-T-linkages ``P`` (columns) and ``Q`` (rows) of
  size ``m`` ending in the same sinks, with disjoint starts and every
  ``P^i`` meeting every ``Q^j``.
* ``doubled_gadget``: ``copies`` disjoint copies of a gadget holding two
  disjoint tripods.
* ``degree_conforming``: sources with one out-edge and no in-edge, sinks
  with one in-edge and no out-edge, as the edge certifier requires.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import PreconditionError
from .graph import Linkage, MigrationDigraph, Path


@dataclass(frozen=True)
class InstanceSpec:
    """A generator name, its parameters and a seed."""

    name: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __hash__(self) -> int:
        return hash((self.name, tuple(sorted(self.params.items())), self.seed))


@dataclass(frozen=True)
class Shaped:
    """A generated digraph plus the path structure its generator promises."""

    digraph: MigrationDigraph
    first: Linkage
    second: Linkage | Path


def _build(paths: list, extra_edges=(), sources=(), sinks=(), vertices=()) -> MigrationDigraph:
    vs, es = set(vertices), set(extra_edges)
    for p in paths:
        vs.update(p.vertices)
        es.update(p.edges())
    for u, v in es:
        vs.update((u, v))
    return MigrationDigraph(vs, es, sources, sinks)


def comb(teeth: int, height: int = 1, *, sources: int | None = None, seed: int = 0,
         weave: int | None = None) -> Shaped:
    if teeth < 1 or height < 1:
        raise PreconditionError("comb needs at least one tooth of height one")
    rng = random.Random(seed)
    tooth = [Path([("s", i)] + [("v", i, r) for r in range(1, height + 1)] + [("t", i)])
             for i in range(teeth)]
    if weave is None:
        order = list(range(teeth))
        rng.shuffle(order)
        spine = [("v", i, 1) for i in order]
    else:
        spine = _woven_spine(teeth, height, weave)
    n_src = teeth if sources is None else sources
    d = _build(tooth + [Path(spine)], sources=[("s", i) for i in range(n_src)],
               sinks=[("t", i) for i in range(teeth)])
    return Shaped(d, Linkage(tuple(tooth)), Path(spine))


def _woven_spine(teeth: int, height: int, ell: int) -> list:
    p = ell * ell
    wide = ell + p * ell
    if height < ell or teeth < ell * wide + p:
        raise PreconditionError(f"weave={ell} needs height >= {ell} and at least {ell * wide + p} teeth")
    shared = list(range(wide, wide + p))
    fresh = iter(i for i in range(teeth) if i not in shared)
    spine = []
    for row in range(1, ell + 1):
        spine += [("v", next(fresh), 1) for _ in range(wide)]
        spine += [("v", i, row) for i in shared]
    spine += [("v", i, 1) for i in fresh]
    return spine


def crossing_grid(m: int) -> Shaped:
    if m < 1:
        raise PreconditionError("grid size must be positive")
    cols = [Path([("a", i)] + [("g", r, i) for r in range(m)] + [("t", i)]) for i in range(m)]
    rows = [Path([("b", j)] + [("g", j, c) for c in range(m)] + [("t", j)]) for j in range(m)]
    srcs = [("a", i) for i in range(m)] + [("b", i) for i in range(m)]
    d = _build(cols + rows, sources=srcs, sinks=[("t", i) for i in range(m)])
    return Shaped(d, Linkage(tuple(cols)), Linkage(tuple(rows)))


_GADGET = [("a1", "x11"), ("x11", "x12"), ("x12", "e1"),
           ("a2", "x22"), ("x22", "x21"), ("x21", "e2"),
           ("b1", "x21"), ("x21", "x11"), ("x11", "f1"),
           ("b2", "x22"), ("x22", "x12"), ("x12", "f2")]


def doubled_gadget(copies: int = 1) -> MigrationDigraph:
    """Two linkages of two paths each crossing pairwise, doubled ``copies`` times."""
    if copies < 1:
        raise PreconditionError("need at least one copy")
    edges, srcs, snks = [], [], []
    for c in range(copies):
        edges += [((u, c), (v, c)) for u, v in _GADGET]
        srcs += [(x, c) for x in ("a1", "a2", "b1", "b2")]
        snks += [(x, c) for x in ("e1", "e2", "f1", "f2")]
    return _build([], edges, srcs, snks)


def gadget_linkages(c: int = 0) -> tuple[Linkage, Linkage]:
    """The two crossing linkages of copy ``c`` of :func:`doubled_gadget`."""
    k = [Path([(v, c) for v in ("a1", "x11", "x12", "e1")]),
         Path([(v, c) for v in ("a2", "x22", "x21", "e2")])]
    l_ = [Path([(v, c) for v in ("b1", "x21", "x11", "f1")]),
          Path([(v, c) for v in ("b2", "x22", "x12", "f2")])]
    return Linkage(tuple(k)), Linkage(tuple(l_))


def erdos_renyi(n: int, p: float, sources: int = 2, sinks: int = 2, *, seed: int = 0,
                overlap: bool = False) -> MigrationDigraph:
    """Each ordered pair becomes an edge with probability ``p``.

    Sources and sinks are disjoint random vertex sets unless ``overlap``.
    """
    if n < 1 or not 0 <= p <= 1:
        raise PreconditionError("need n >= 1 and 0 <= p <= 1")
    if sources > n or sinks > n or (not overlap and sources + sinks > n):
        raise PreconditionError("too many terminals for the vertex count")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    perm = list(range(n))
    rng.shuffle(perm)
    srcs = perm[:sources]
    if overlap:
        snks = rng.sample(range(n), sinks)
    else:
        snks = perm[sources:sources + sinks]
    return MigrationDigraph(range(n), edges, srcs, snks)


def layered_dag(layers: int, width: int, p: float = 0.5, *, sources: int | None = None,
                sinks: int | None = None, seed: int = 0) -> MigrationDigraph:
    """Edges go from each layer to the next with probability ``p``.

    Sources sit in the first layer and sinks in the last.
    """
    if layers < 2 or width < 1:
        raise PreconditionError("need at least two layers of positive width")
    rng = random.Random(seed)
    vs = [("L", i, j) for i in range(layers) for j in range(width)]
    edges = [(("L", i, a), ("L", i + 1, b)) for i in range(layers - 1)
             for a in range(width) for b in range(width) if rng.random() < p]
    srcs = [("L", 0, j) for j in range(width if sources is None else sources)]
    snks = [("L", layers - 1, j) for j in range(width if sinks is None else sinks)]
    return MigrationDigraph(vs, edges, srcs, snks)


def degree_conforming(core: int, p: float, sources: int, sinks: int, *,
                      seed: int = 0) -> MigrationDigraph:
    """A random core with pendant sources feeding in and pendant sinks hanging off."""
    if core < 1:
        raise PreconditionError("core must be nonempty")
    rng = random.Random(seed)
    edges = [(("c", u), ("c", v)) for u in range(core) for v in range(core)
             if u != v and rng.random() < p]
    edges += [(("s", i), ("c", rng.randrange(core))) for i in range(sources)]
    edges += [(("c", rng.randrange(core)), ("t", i)) for i in range(sinks)]
    vs = [("c", u) for u in range(core)] + [("s", i) for i in range(sources)] \
        + [("t", i) for i in range(sinks)]
    return MigrationDigraph(vs, edges, [("s", i) for i in range(sources)],
                            [("t", i) for i in range(sinks)])


GENERATORS = ("layered-dag", "comb", "crossing-grid", "erdos-renyi-digraph",
              "doubled-gadget", "degree-conforming")


def generate(spec: InstanceSpec) -> MigrationDigraph:
    """The instance described by ``spec``; identical specs give identical digraphs."""
    prm = dict(spec.params)
    try:
        if spec.name == "layered-dag":
            return layered_dag(seed=spec.seed, **prm)
        if spec.name == "comb":
            return comb(seed=spec.seed, **prm).digraph
        if spec.name == "crossing-grid":
            return crossing_grid(**prm).digraph
        if spec.name == "erdos-renyi-digraph":
            return erdos_renyi(seed=spec.seed, **prm)
        if spec.name == "doubled-gadget":
            return doubled_gadget(**prm)
        if spec.name == "degree-conforming":
            return degree_conforming(seed=spec.seed, **prm)
    except TypeError as exc:
        raise PreconditionError(f"bad parameters for {spec.name}: {exc}") from None
    raise PreconditionError(f"unknown generator {spec.name!r}; choose from {GENERATORS}")
