"""The top-level certifier: ``k`` disjoint tripods or a small hitting set.

Every split ``(S1, S2)`` of the sources is projected onto a split
``(T1, T2)`` of the sinks through matroid intersection of the two gammoids,
together with a small set ``F`` cutting all S1-T2- and S2-T1-paths.  The
recursion on ``k`` then either combines packings of the two sides, unions
hitting sets of the two sides with ``F``, or, when every split has a side
without tripods, unions two such cut sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import BoundTable, default_bounds
from .errors import (BoundParameterError, HarvestFailure, InternalSoundnessError,
                     PreconditionError)
from .graph import (Digraph, MigrationDigraph, Tripod, check_line_degrees,
                    delete_vertices, linegraph, ordered)
from .matroid import GammoidOracle, matroid_intersection
from .menger import max_linkage, separates
from .packing import pack_from_linkage_pair
from .tripods import (Certificate, find_tripod, prune_hitting_set, tripod_exists,
                      verify_certificate)


@dataclass(frozen=True)
class PartitionProjection:
    """Objects attached to a source split: a sink split and a cut set ``separator``.

    ``separator`` meets every S1-T2-path and every S2-T1-path, and has at
    most ``ell`` vertices, where ``ell`` is the largest sink set linkable
    from both sides (``common`` is one such set).
    """

    s1: frozenset
    s2: frozenset
    t1: frozenset
    t2: frozenset
    separator: frozenset
    ell: int
    common: frozenset

    def swapped(self) -> "PartitionProjection":
        return PartitionProjection(self.s2, self.s1, self.t2, self.t1, self.separator,
                                   self.ell, self.common)

    def side(self, d: MigrationDigraph, which: int) -> MigrationDigraph:
        """The digraph without ``separator``, keeping one side's sources and sinks."""
        rest = delete_vertices(d, self.separator)
        srcs, snks = (self.s1, self.t1) if which == 1 else (self.s2, self.t2)
        return rest.with_terminals(srcs - self.separator, snks - self.separator)


def project_partition(d: MigrationDigraph, s1, s2, k: int,
                      bounds: BoundTable | None = None) -> PartitionProjection | Certificate:
    """Project a source split onto the sinks, or find ``k`` tripods instead.

    The packing is returned when more than ``g4(k)`` sinks are linkable from
    both sides, since the two witnessing linkages then carry ``k`` tripods.
    """
    bounds = bounds or default_bounds()
    s1, s2 = frozenset(s1), frozenset(s2)
    if s1 & s2 or (s1 | s2) != d.sources:
        raise PreconditionError("(S1, S2) must partition the sources")
    m1, m2 = GammoidOracle(d, s1), GammoidOracle(d, s2)
    inter = matroid_intersection(m1, m2, d.sinks)
    ell = inter.size
    if ell > bounds.g4(k):
        y = inter.common
        p_link = max_linkage(d, s1, y).linkage
        q_link = max_linkage(d, s2, y).linkage
        try:
            cert = pack_from_linkage_pair(d, p_link, q_link, k, bounds, strict=True)
        except (HarvestFailure, BoundParameterError) as exc:
            raise BoundParameterError(
                f"{ell} sinks are linkable from both sides but no {k} tripods were found: {exc}",
                bound_diagnostic=True) from exc
        return cert.with_provenance("escape")
    t2, t1 = inter.x_side, inter.y_side
    cut1 = max_linkage(d, s1, t2)
    cut2 = max_linkage(d, s2, t1)
    if cut1.value != inter.rank1_x or cut2.value != inter.rank2_y:
        raise InternalSoundnessError("gammoid ranks disagree with the linkage values")
    sep = cut1.separator | cut2.separator
    if len(sep) > ell or not (separates(d, s1, t2, sep) and separates(d, s2, t1, sep)):
        raise InternalSoundnessError("projection cut set is too large or misses a path")
    return PartitionProjection(s1, s2, t1, t2, sep, ell, inter.common)


class _Certifier:
    def __init__(self, bounds: BoundTable):
        self.bounds = bounds
        self.stats = {"calls": 0, "projections": 0}

    def run(self, d: MigrationDigraph, k: int) -> Certificate:
        self.stats["calls"] += 1
        cert = self._decide(d, k)
        check = verify_certificate(d, k, cert)
        if not check:
            raise InternalSoundnessError(f"certificate for k={k} failed verification: {check.reason}")
        return cert

    def _hitting(self, vertices, k: int, *tags: str) -> Certificate:
        return Certificate.of_hitting_set(vertices, self.bounds.f1(k), *tags)

    def _decide(self, d: MigrationDigraph, k: int) -> Certificate:
        if not tripod_exists(d):
            return self._hitting((), k, "tripod-free")
        if k == 1:
            return Certificate.of_packing([find_tripod(d)], "single-tripod")
        sources = ordered(d.sources)
        n = len(sources)
        memo: dict = {}

        def projection(mask: int) -> PartitionProjection | Certificate:
            if mask not in memo:
                other = (1 << n) - 1 - mask
                if other in memo and isinstance(memo[other], PartitionProjection):
                    memo[mask] = memo[other].swapped()
                else:
                    s1 = {s for i, s in enumerate(sources) if mask >> i & 1}
                    self.stats["projections"] += 1
                    memo[mask] = project_partition(d, s1, d.sources - s1, k, self.bounds)
            return memo[mask]

        empty_first: dict = {}
        for mask in range(1 << n):
            proj = projection(mask)
            if isinstance(proj, Certificate):
                return proj
            d1, d2 = proj.side(d, 1), proj.side(d, 2)
            has1, has2 = tripod_exists(d1), tripod_exists(d2)
            if has1 and has2:
                return self._splendid(d, k, proj, d1, d2)
            empty_first[mask] = not has1

        # no split has tripods on both sides; take the largest tripod-free first side
        best = max((m for m, empty in empty_first.items() if empty),
                   key=lambda m: (bin(m).count("1"), -m))
        proj = memo[best]
        if proj.s1 == d.sources:
            return self._hitting(proj.separator, k, "empty-side", "all-sources")
        s = next(x for x in sources if x not in proj.s1)
        grown = best | (1 << sources.index(s))
        other = memo[grown]
        if tripod_exists(other.side(d, 2)):
            raise InternalSoundnessError("maximal tripod-free side could be grown")
        return self._hitting(proj.separator | other.separator, k, "empty-side", "two-cuts")

    def _splendid(self, d, k, proj, d1, d2) -> Certificate:
        first = self.run(d1, k - 1)
        if first.is_packing:
            packing = list(first.packing) + [find_tripod(d2)]
            return Certificate.of_packing(packing, "splendid-split", "first-side-packing",
                                          *first.provenance)
        second = self.run(d2, k - 1)
        if second.is_packing:
            packing = list(second.packing) + [find_tripod(d1)]
            return Certificate.of_packing(packing, "splendid-split", "second-side-packing",
                                          *second.provenance)
        hit = first.hitting_set | second.hitting_set | proj.separator
        return self._hitting(hit, k, "splendid-split", "union-of-sides")


def certify(d: MigrationDigraph, k: int, bounds: BoundTable | None = None) -> Certificate:
    """Either ``k`` vertex-disjoint tripods or at most ``f1(k)`` vertices meeting all tripods.

    Every returned certificate has passed :func:`verify_certificate`, and a
    returned packing has exactly ``k`` tripods and a returned hitting set is
    inclusion-minimal.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise PreconditionError("k must be a positive integer")
    cert = _Certifier(bounds or default_bounds()).run(d, k)
    if cert.is_packing:
        return Certificate.of_packing(cert.packing[:k], *cert.provenance)
    pruned = Certificate.of_hitting_set(prune_hitting_set(d, cert.hitting_set), cert.bound,
                                       *cert.provenance)
    check = verify_certificate(d, k, pruned)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"pruned hitting set failed verification: {check.reason}")
    return pruned


def _line_tripod_back(d: MigrationDigraph, r: Tripod) -> Tripod:
    """A tripod of ``d`` using only the edges of a linegraph tripod."""
    edges = r.vertex_set
    verts = {v for e in edges for v in e}
    sub = Digraph._trusted(frozenset(verts), frozenset(edges))
    host = MigrationDigraph.from_digraph(sub, d.sources & verts, d.sinks & verts)
    return find_tripod(host)


def certify_edges(d: MigrationDigraph, k: int, bounds: BoundTable | None = None) -> Certificate:
    """Edge version: ``k`` edge-disjoint tripods or at most ``f1(k)`` edges meeting all tripods.

    Needs every source to have a single out-edge and no in-edge, and every
    sink a single in-edge and no out-edge; the vertex certifier is run on
    the linegraph and its answer translated back.
    """
    bounds = bounds or default_bounds()
    check_line_degrees(d)
    line = linegraph(d)
    inner = certify(line, k, bounds)
    if inner.is_packing:
        tripods = [_line_tripod_back(d, r) for r in inner.packing[:k]]
        cert = Certificate("edge-packing", packing=tripods,
                           provenance=("linegraph",) + inner.provenance)
    else:
        cert = Certificate("edge-hitting-set", hitting_set=inner.hitting_set,
                           provenance=("linegraph",) + inner.provenance, bound=bounds.f1(k))
    check = verify_certificate(d, k, cert)
    if not check:
        raise InternalSoundnessError(f"edge certificate failed verification: {check.reason}")
    return cert

