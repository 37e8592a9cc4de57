"""Tripods from one path crossing every path of a large linkage.

:func:`split_crossing` performs one extraction step: it cuts the crossing
path into alternating segments and either finds two pairwise intersecting
linkages, or one tripod together with a smaller linkage and a piece of the
crossing path that both avoid it.  :func:`pack_from_crossing_path` repeats
the step until it has ``k`` tripods.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import BoundTable, default_bounds, g10, iterate
from .errors import HarvestFailure, InternalSoundnessError, PreconditionError
from .graph import (Linkage, MigrationDigraph, Path, Tripod, pairwise_intersect,
                    subpath)
from .menger import max_linkage
from .onions import pack_from_intersecting_linkages
from .tripods import Certificate, Verdict, packing_verdict, verify_tripod

LINKAGES, TRIPOD = "linkages", "tripod"


@dataclass(frozen=True)
class CrossingSplit:
    """Outcome of one split step.

    ``kind == "linkages"``: ``k_link`` starts in sources, ``l_link`` ends in
    sinks, equal sizes, pairwise intersecting.
    ``kind == "tripod"``: ``tripod`` is disjoint from ``sublinkage`` (a
    sublinkage of the input) and from ``subpath`` (a piece of the crossing
    path meeting every path of ``sublinkage``).
    """

    kind: str
    k_link: Linkage | None = None
    l_link: Linkage | None = None
    tripod: Tripod | None = None
    sublinkage: Linkage | None = None
    subpath: Path | None = None
    segments: tuple = ()


def _check_inputs(d: MigrationDigraph, p_link: Linkage, q: Path) -> None:
    if not p_link.links(d.sources, d.sinks) or not all(d.is_path(p) for p in p_link):
        raise PreconditionError("the linkage must consist of S-T-paths of the digraph")
    if not d.is_path(q):
        raise PreconditionError("the crossing path is not a path of the digraph")
    missed = [p.start for p in p_link if not p.meets(q)]
    if missed:
        raise PreconditionError(f"crossing path misses the linkage paths starting at {missed!r}")


def _segments(q: Path, owner: dict, ell: int) -> list:
    """Consecutive disjoint pieces A1, B1, ..., of ``q`` seeing ell+p*ell and p paths."""
    p = ell * ell
    targets = [ell + p * ell, p] * ell
    segs, pos = [], 0
    vs = q.vertices
    for want in targets:
        seen: set = set()
        start = pos
        while len(seen) < want:
            if pos >= len(vs):
                raise InternalSoundnessError(
                    "crossing path ran out before all segments were built; linkage too small")
            if vs[pos] in owner:
                seen.add(owner[vs[pos]])
            pos += 1
        segs.append((Path(vs[start:pos]), frozenset(seen)))
    return segs


def _claim_tripod(d: MigrationDigraph, p_link: Linkage, seg: Path, i1: int, i2: int) -> Tripod:
    """Tripod from two linkage paths both meeting ``seg``.

    The path whose first contact with ``seg`` comes earlier along ``seg``
    walks to it and then along ``seg`` up to the first vertex of the other
    path; the other path supplies the second branch and the tail.
    """
    seg_pos = {v: j for j, v in enumerate(seg.vertices)}

    def first_contact(path: Path):
        return next(v for v in path.vertices if v in seg_pos)

    a, b = p_link[i1], p_link[i2]
    if seg_pos[first_contact(a)] > seg_pos[first_contact(b)]:
        a, b = b, a
    hit = first_contact(a)
    w = next(v for v in seg.vertices[seg_pos[hit]:] if v in b)
    branch1 = subpath(a, a.start, hit).then(subpath(seg, hit, w))
    r = Tripod(a.start, b.start, b.end, w, branch1, subpath(b, b.start, w), subpath(b, w, b.end))
    check = verify_tripod(d, r)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"segment tripod invalid: {check.reason}")
    return r


def split_crossing(d: MigrationDigraph, p_link: Linkage, q: Path, ell: int) -> CrossingSplit:
    """One extraction step for target ``ell``; needs ``|p_link| >= g10(ell)``."""
    if ell < 1:
        raise PreconditionError("ell must be positive")
    if len(p_link) < g10(ell):
        raise PreconditionError(f"linkage has {len(p_link)} paths, at least {g10(ell)} needed")
    _check_inputs(d, p_link, q)
    owner = {v: i for i, path in enumerate(p_link) for v in path.vertices}
    segs = _segments(q, owner, ell)
    a_segs, b_segs = segs[0::2], segs[1::2]
    b_sets = [seen for _, seen in b_segs]

    for i in range(ell):
        for j in range(ell):
            if i == j:
                continue
            only_i = sorted(b_sets[i] - b_sets[j])
            if len(only_i) >= ell:
                r = _claim_tripod(d, p_link, b_segs[i][0], only_i[0], only_i[1])
                rest = Linkage(tuple(p_link[x] for x in sorted(b_sets[j] - b_sets[i])))
                out = CrossingSplit(TRIPOD, tripod=r, sublinkage=rest, subpath=b_segs[j][0],
                                    segments=tuple(s for s, _ in segs))
                return _validated(d, p_link, q, ell, out)

    common = sorted(frozenset.intersection(*b_sets))
    if len(common) < ell:  # pragma: no cover - counting argument
        raise InternalSoundnessError("B-segments share fewer paths than the counting bound")
    l_link = Linkage(tuple(p_link[x] for x in common[:ell]))
    seen_by_b = frozenset().union(*b_sets)
    rest = [path for x, path in enumerate(p_link) if x not in seen_by_b]
    host = d.union_of_paths(rest + [q])
    on_b = frozenset(v for s, _ in b_segs for v in s.vertices)
    sources = (d.sources & host.vertex_set) - on_b
    sinks = frozenset(s.end for s, _ in b_segs)
    res = max_linkage(host, sources, sinks)
    if res.value < ell:  # pragma: no cover - guaranteed by the separator argument
        raise InternalSoundnessError(f"only {res.value} paths reach the B-segment ends")
    k_link = Linkage(res.linkage.paths[:ell])
    for path in k_link:
        if not any(s.vertex_set <= path.vertex_set for s, _ in b_segs):
            raise InternalSoundnessError("a linking path avoids every B-segment")
    out = CrossingSplit(LINKAGES, k_link=k_link, l_link=l_link, segments=tuple(s for s, _ in segs))
    return _validated(d, p_link, q, ell, out)


def check_split(d: MigrationDigraph, p_link: Linkage, q: Path, ell: int,
                out: CrossingSplit) -> Verdict:
    """Machine check of every condition the outcome promises."""
    if out.kind == LINKAGES:
        k_link, l_link = out.k_link, out.l_link
        if k_link is None or l_link is None:
            return Verdict(False, "missing linkage")
        if len(k_link) != len(l_link) or len(k_link) < ell:
            return Verdict(False, f"linkage sizes {len(k_link)}/{len(l_link)}, need equal and >= {ell}")
        if not all(d.is_path(x) for x in list(k_link) + list(l_link)):
            return Verdict(False, "a returned path is not a path of the digraph")
        if not k_link.starts() <= d.sources:
            return Verdict(False, "first linkage does not start in sources")
        if not l_link.ends() <= d.sinks:
            return Verdict(False, "second linkage does not end in sinks")
        if not pairwise_intersect(k_link, l_link):
            return Verdict(False, "linkages do not pairwise intersect")
        return Verdict(True)
    if out.kind != TRIPOD:
        return Verdict(False, f"unknown outcome {out.kind!r}")
    r, sub, piece = out.tripod, out.sublinkage, out.subpath
    check = verify_tripod(d, r)
    if not check:
        return Verdict(False, f"tripod invalid: {check.reason}")
    if len(sub) < ell or not set(sub.paths) <= set(p_link.paths):
        return Verdict(False, f"sublinkage must be >= {ell} paths of the input linkage")
    text = q.vertices
    n = len(piece.vertices)
    if not any(text[i:i + n] == piece.vertices for i in range(len(text) - n + 1)):
        return Verdict(False, "returned piece is not a subpath of the crossing path")
    if not all(piece.meets(x) for x in sub):
        return Verdict(False, "returned piece misses a path of the sublinkage")
    if piece.meets(r.vertex_set) or any(x.meets(r.vertex_set) for x in sub):
        return Verdict(False, "tripod is not disjoint from the remaining instance")
    return Verdict(True)


def _validated(d, p_link, q, ell, out: CrossingSplit) -> CrossingSplit:
    check = check_split(d, p_link, q, ell, out)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"split outcome failed validation: {check.reason}")
    return out


def pack_from_crossing_path(d: MigrationDigraph, p_link: Linkage, q: Path, k: int,
                            bounds: BoundTable | None = None, *,
                            search_nodes: int = 5000) -> Certificate:
    """``k`` disjoint tripods from a linkage of size ``g9(k)`` crossed by ``q``.

    Each round either yields one more tripod and a smaller instance that
    avoids it, or two intersecting linkages inside the current instance;
    tripods harvested from those are disjoint from all earlier rounds.
    """
    bounds = bounds or default_bounds()
    if k < 1:
        raise PreconditionError("k must be positive")
    need = bounds.g9(k)
    if len(p_link) < need:
        raise PreconditionError(f"linkage has {len(p_link)} paths, at least {need} needed")
    _check_inputs(d, p_link, q)
    base = bounds.g5(k)
    found: list = []
    cur_p, cur_q = p_link, q
    for round_ in range(1, k + 1):
        ell = iterate(g10, k - round_, base)
        out = split_crossing(d, cur_p, cur_q, ell)
        if out.kind == TRIPOD:
            found.append(out.tripod)
            cur_p, cur_q = out.sublinkage, out.subpath
            continue
        rest = k - len(found)
        try:
            cert = pack_from_intersecting_linkages(d, out.k_link, out.l_link, rest,
                                                   g5_threshold=base, search_nodes=search_nodes)
        except HarvestFailure as exc:
            exc.args = (f"round {round_}: {exc.args[0]}",)
            raise
        packing = found + list(cert.packing)
        return _final(d, k, Certificate.of_packing(packing, "crossing-path", *cert.provenance))
    return _final(d, k, Certificate.of_packing(found, "crossing-path", "segment-tripods"))


def _final(d: MigrationDigraph, k: int, cert: Certificate) -> Certificate:
    check = packing_verdict(d, k, cert.packing)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"crossing-path packing invalid: {check.reason}")
    return cert
