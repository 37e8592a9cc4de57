"""Onions, onion-stars and the packing they yield from two crossing linkages.

Two linkages that pairwise intersect are turned into an auxiliary digraph
in which shared vertices become shared edges: every vertex is split into
an in/out pair and a new apex ``x`` feeds the starts of the first linkage
and drains the ends of the second.  Onions rooted at ``x`` in that digraph
project back onto vertex-disjoint tripods of the original.

No extremal guarantee for the harvester is claimed; it is a bounded
exhaustive search, so callers keep a direct-search fallback.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import (HarvestFailure, HypothesisError, InternalSoundnessError,
                     PreconditionError)
from .graph import (Digraph, Linkage, MigrationDigraph, Path, SplitMap, Tripod,
                    pairwise_intersect, split_vertices, vkey)
from .tripods import Certificate, pack_tripods, packing_verdict, verify_tripod

APEX = ("apex",)


@dataclass(frozen=True)
class Auxiliary:
    """The split union of two linkages plus an apex joining their ends."""

    digraph: Digraph
    apex: object
    family_p: tuple
    family_q: tuple
    split: SplitMap


def build_auxiliary(d: MigrationDigraph, k_link: Linkage, l_link: Linkage) -> Auxiliary:
    if not isinstance(k_link, Linkage) or not isinstance(l_link, Linkage):
        raise PreconditionError("both inputs must be linkages")
    if not k_link.starts() <= d.sources:
        raise PreconditionError("the first linkage must start in sources")
    if not l_link.ends() <= d.sinks:
        raise PreconditionError("the second linkage must end in sinks")
    for p in list(k_link) + list(l_link):
        if not d.is_path(p):
            raise PreconditionError(f"{p.vertices!r} is not a path of the digraph")
    union = d.union_of_paths(list(k_link) + list(l_link))
    split, m = split_vertices(union)
    if APEX in union:
        raise PreconditionError(f"vertex name {APEX!r} is reserved for the apex")
    edges = set(split.edges)
    edges.update((APEX, m.inn(p.start)) for p in k_link)
    edges.update((m.out(q.end), APEX) for q in l_link)
    aux = Digraph._trusted(split.vertex_set | {APEX}, frozenset(edges))
    fam_p = tuple(Path((APEX,) + m.lift(p).vertices) for p in k_link)
    fam_q = tuple(Path(m.lift(q).vertices + (APEX,)) for q in l_link)
    return Auxiliary(aux, APEX, fam_p, fam_q, m)


def check_hypotheses(aux: Digraph, x: object, fam_p: Iterable[Path], fam_q: Iterable[Path]) -> None:
    """Raise :class:`HypothesisError` naming the first violated hypothesis."""
    fam_p, fam_q = list(fam_p), list(fam_q)
    for p in fam_p + fam_q:
        if not aux.is_path(p):
            raise HypothesisError("paths", f"{p.vertices!r} is not a path of the auxiliary digraph")
    if any(p.start != x for p in fam_p) or any(q.end != x for q in fam_q):
        raise HypothesisError("anchored", "every first-family path must start and every "
                                          "second-family path end at the apex")
    for p in fam_p:
        ep = set(p.edges())
        for q in fam_q:
            if ep.isdisjoint(q.edges()):
                raise HypothesisError("crossing", f"paths ending {p.end!r} and starting "
                                                  f"{q.start!r} share no edge")
    for name, fam in (("first", fam_p), ("second", fam_q)):
        seen: set = set()
        for p in fam:
            es = set(p.edges())
            if not seen.isdisjoint(es):
                raise HypothesisError("edge-disjoint", f"{name} family is not edge-disjoint")
            seen |= es


@dataclass(frozen=True)
class Onion:
    """Two root-to-stem paths and one stem-to-root path, pairwise edge-disjoint."""

    root: object
    stem: object
    forward1: Path
    forward2: Path
    backward: Path

    def __post_init__(self) -> None:
        if self.root == self.stem:
            raise PreconditionError("root and stem must differ")
        for p in (self.forward1, self.forward2):
            if p.start != self.root or p.end != self.stem:
                raise PreconditionError("forward paths run from root to stem")
        if self.backward.start != self.stem or self.backward.end != self.root:
            raise PreconditionError("the backward path runs from stem to root")
        parts = [set(p.edges()) for p in self.paths()]
        if sum(map(len, parts)) != len(set().union(*parts)):
            raise PreconditionError("onion paths must be pairwise edge-disjoint")

    def paths(self) -> tuple:
        return (self.forward1, self.forward2, self.backward)

    def edge_set(self) -> frozenset:
        return frozenset(e for p in self.paths() for e in p.edges())


@dataclass(frozen=True)
class OnionStar:
    """Onions glued at ``centre``: it is the root of ``out_onions`` and the stem of ``in_onions``.

    A rooted family is the special case with no in-onions.
    """

    centre: object
    out_onions: tuple
    in_onions: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "out_onions", tuple(self.out_onions))
        object.__setattr__(self, "in_onions", tuple(self.in_onions))
        if any(z.root != self.centre for z in self.out_onions):
            raise PreconditionError("out-onions must be rooted at the centre")
        if any(z.stem != self.centre for z in self.in_onions):
            raise PreconditionError("in-onions must have the centre as stem")
        others = [z.stem for z in self.out_onions] + [z.root for z in self.in_onions]
        if len(set(others)) != len(others):
            raise PreconditionError("roots and stems other than the centre must be distinct")
        used: set = set()
        for z in self.onions():
            es = z.edge_set()
            if not used.isdisjoint(es):
                raise PreconditionError("onions must be pairwise edge-disjoint")
            used |= es

    @property
    def order(self) -> int:
        return len(self.out_onions)

    def onions(self) -> tuple:
        return self.out_onions + self.in_onions


class _Budget:
    __slots__ = ("steps", "cut")

    def __init__(self, steps: int):
        self.steps = steps
        self.cut = False  # set when some branch was pruned by the edge budget


def _simple_paths(g: Digraph, a, b, banned: frozenset, max_len: int, budget: _Budget):
    """Simple a-b-paths avoiding ``banned`` edges, shortest-first per branch via DFS."""
    to_b = _distances_to(g, b, banned)
    if a not in to_b:
        return
    stack = [(a, [a], {a})]
    while stack:
        budget.steps -= 1
        if budget.steps < 0:
            return
        u, seq, seen = stack.pop()
        if u == b:
            yield Path(seq)
            continue
        nxt = []
        for w in g.succ(u):
            if (u, w) in banned or w in seen or w not in to_b:
                continue
            if len(seq) + to_b[w] > max_len:  # edges so far + 1 + remaining
                budget.cut = True
                continue
            nxt.append(w)
        # reversed so the nearest-to-target successor is explored first
        for w in sorted(nxt, key=lambda w: (to_b[w], vkey(w)), reverse=True):
            stack.append((w, seq + [w], seen | {w}))


def _distances_to(g: Digraph, b, banned: frozenset) -> dict:
    dist = {b: 0}
    queue = deque([b])
    while queue:
        u = queue.popleft()
        for w in g.pred(u):
            if w not in dist and (w, u) not in banned:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _bfs_path(g: Digraph, a, b, banned: frozenset) -> Path | None:
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            seq = [u]
            while parent[seq[-1]] is not None:
                seq.append(parent[seq[-1]])
            return Path(seq[::-1])
        for w in g.succ(u):
            if w not in parent and (u, w) not in banned:
                parent[w] = u
                queue.append(w)
    return None


def _onions_at(g: Digraph, x, stem_or_root, *, outward: bool, used: frozenset,
               max_len: int, budget: _Budget):
    """All onions with centre ``x`` on the given partner vertex, lazily.

    For an out-onion the partner is the stem (forward paths leave ``x``);
    for an in-onion it is the root (forward paths enter ``x``).
    """
    a, b = (x, stem_or_root) if outward else (stem_or_root, x)
    for f1 in _simple_paths(g, a, b, used, max_len, budget):
        used1 = used | frozenset(f1.edges())
        for f2 in _simple_paths(g, a, b, used1, max_len, budget):
            # unordered pair: keep the lexicographically smaller first
            if [vkey(v) for v in f2.vertices] < [vkey(v) for v in f1.vertices]:
                continue
            back = _bfs_path(g, b, a, used1 | frozenset(f2.edges()))
            if back is not None:
                yield Onion(a, b, f1, f2, back)
        if budget.steps < 0:
            return


def harvest_onion_star(aux: Digraph, x, fam_p: Iterable[Path], fam_q: Iterable[Path],
                       k: int, *, rooted_only: bool = False, g5_threshold: int | None = None,
                       max_steps: int = 200_000) -> OnionStar:
    """Bounded search for an onion-star of order ``k`` centred at ``x``.

    With ``rooted_only`` only the ``k`` onions rooted at ``x`` are sought.
    The search deepens an upper bound on the length of each path until it
    either succeeds, proves that none exists, or spends ``max_steps``.
    Failure carries ``bound_diagnostic`` when both families had at least
    ``g5_threshold`` members.
    """
    fam_p, fam_q = list(fam_p), list(fam_q)
    check_hypotheses(aux, x, fam_p, fam_q)
    if k < 1:
        raise PreconditionError("order must be positive")
    big = g5_threshold is not None and min(len(fam_p), len(fam_q)) >= g5_threshold
    need_out, need_in = (2 * k, k) if rooted_only else (3 * k, 3 * k)
    have_out, have_in = len(aux.succ(x)), len(aux.pred(x))
    if have_out < need_out or have_in < need_in:
        raise HarvestFailure(
            f"centre has out/in-degree {have_out}/{have_in}, an order-{k} "
            f"{'rooted family' if rooted_only else 'onion-star'} needs {need_out}/{need_in}",
            bound_diagnostic=big)

    budget = _Budget(max_steps)
    partners = [v for v in aux.vertices if v != x]

    def search(outs: list, ins: list, used: frozenset, taken: frozenset, max_len: int):
        if len(outs) < k:
            outward, todo = True, outs
        elif not rooted_only and len(ins) < k:
            outward, todo = False, ins
        else:
            return outs, ins
        # partners are taken in increasing order within each kind to break symmetry
        floor = vkey(todo[-1].stem if outward else todo[-1].root) if todo else None
        for y in partners:
            if y in taken or (floor is not None and vkey(y) <= floor):
                continue
            for z in _onions_at(aux, x, y, outward=outward, used=used,
                                max_len=max_len, budget=budget):
                found = search(outs + [z] if outward else outs, ins + [z] if not outward else ins,
                               used | z.edge_set(), taken | {y}, max_len)
                if found is not None:
                    return found
                if budget.steps < 0:
                    return None
        return None

    limit = len(aux) + 1
    max_len = 3
    while True:
        budget.cut = False
        found = search([], [], frozenset(), frozenset(), max_len)
        if found is not None:
            return OnionStar(x, found[0], found[1])
        if budget.steps < 0:
            raise HarvestFailure(f"onion search exceeded {max_steps} steps",
                                 bound_diagnostic=big)
        if not budget.cut or max_len >= limit:
            raise HarvestFailure(f"no order-{k} onion-star centred at the apex",
                                 bound_diagnostic=big)
        max_len = min(limit, max_len * 2)


def onions_to_tripods(d: MigrationDigraph, star: OnionStar, split: SplitMap) -> list:
    """One tripod per onion rooted at the centre; pairwise vertex-disjoint."""
    tripods = []
    for z in star.out_onions:
        try:
            v = split.original(z.stem)
        except KeyError:
            raise PreconditionError(f"stem {z.stem!r} is not a split copy") from None
        if z.stem != split.inn(v):
            raise PreconditionError(f"stem {z.stem!r} is an out-copy; it cannot have two in-edges")
        b1 = split.project(z.forward1.vertices[1:])
        b2 = split.project(z.forward2.vertices[1:])
        tail = split.project(z.backward.vertices[:-1])
        if b1.start == b2.start:
            raise InternalSoundnessError("both forward paths leave the apex through one start")
        s1, s2 = (b1.start, b2.start) if vkey(b1.start) <= vkey(b2.start) else (b2.start, b1.start)
        if s1 != b1.start:
            b1, b2 = b2, b1
        r = Tripod(s1, s2, tail.end, v, b1, b2, tail)
        check = verify_tripod(d, r)
        if not check:
            # a shared non-centre vertex would mean a shared split edge inside the onion
            raise InternalSoundnessError(f"onion projects to an invalid tripod: {check.reason}")
        tripods.append(r)
    check = packing_verdict(d, len(tripods), tripods)
    if not check:
        raise InternalSoundnessError(f"edge-disjoint onions gave overlapping tripods: {check.reason}")
    return tripods


def pack_from_intersecting_linkages(d: MigrationDigraph, k_link: Linkage, l_link: Linkage,
                                    k: int, *, g5_threshold: int | None = None,
                                    max_steps: int = 200_000,
                                    search_nodes: int = 5000) -> Certificate:
    """A packing of ``k`` tripods inside the union of two pairwise intersecting linkages.

    Tries a full onion-star, then a rooted onion family, then a direct
    search; the provenance names the step that succeeded.
    """
    if not k_link.starts() <= d.sources or not l_link.ends() <= d.sinks:
        raise PreconditionError("linkages must start in sources and end in sinks respectively")
    if not pairwise_intersect(k_link, l_link):
        raise PreconditionError("the two linkages do not pairwise intersect")
    aux = build_auxiliary(d, k_link, l_link)
    failures = []
    for rooted, tag in ((False, "onion-star"), (True, "rooted-onions")):
        try:
            star = harvest_onion_star(aux.digraph, aux.apex, aux.family_p, aux.family_q, k,
                                      rooted_only=rooted, g5_threshold=g5_threshold,
                                      max_steps=max_steps)
        except HarvestFailure as exc:
            failures.append(exc)
            continue
        tripods = onions_to_tripods(d, star, aux.split)
        return _checked(d, k, Certificate.of_packing(tripods, tag))
    union = d.union_of_paths(list(k_link) + list(l_link))
    host = MigrationDigraph.from_digraph(union, d.sources & union.vertex_set,
                                         d.sinks & union.vertex_set)
    found = pack_tripods(host, k, max_nodes=search_nodes)
    if found is None:
        raise HarvestFailure(f"no packing of {k} tripods found in the union of the linkages",
                             bound_diagnostic=any(f.bound_diagnostic for f in failures))
    return _checked(d, k, Certificate.of_packing(found, "direct-search"))


def _checked(d: MigrationDigraph, k: int, cert: Certificate) -> Certificate:
    check = packing_verdict(d, k, cert.packing)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"linkage packing failed verification: {check.reason}")
    return cert

