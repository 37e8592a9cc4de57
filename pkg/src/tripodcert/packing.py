"""Packings from two S-T-linkages with the same ends and disjoint starts.

For a sink ``y`` write ``P^y`` and ``Q^y`` for the paths of the two
linkages ending there; each pair ``P^y, Q^y`` contains a tripod.  Two
routes turn a large enough pair of linkages into ``k`` disjoint tripods:

* ``ramsey``: a Ramsey argument on the "P^y meets Q^z" relation finds
  either ``k`` non-interacting sinks or a transitive tournament, whose two
  halves are pairwise intersecting linkages.
* ``iterative``: a path of one linkage crossing many paths of the other is
  mined for tripods one at a time; otherwise the interaction graph has
  bounded degree and a greedy independent set suffices.

Both routes check the sizes they rely on.  When the linkages are smaller
than the route's threshold, or the onion harvester gives up, the packing
is searched for directly inside the two linkages and the provenance says
which of the two happened.
"""

from __future__ import annotations

from .bounds import BoundTable, default_bounds, ramsey, transitive
from .crossing import pack_from_crossing_path
from .errors import BoundParameterError, HarvestFailure, InternalSoundnessError, PreconditionError
from .extract import ramsey_extract, transitive_extract
from .graph import Linkage, MigrationDigraph, ordered
from .onions import pack_from_intersecting_linkages
from .tripods import Certificate, pack_tripods, packing_verdict, tripod_from_path_pair


def check_linkage_pair(d: MigrationDigraph, p_link: Linkage, q_link: Linkage) -> None:
    for name, link in (("first", p_link), ("second", q_link)):
        if not link.links(d.sources, d.sinks):
            raise PreconditionError(f"{name} linkage is not an S-T-linkage")
        if not all(d.is_path(p) for p in link):
            raise PreconditionError(f"{name} linkage uses a non-edge")
    if len(p_link) != len(q_link) or p_link.ends() != q_link.ends():
        raise PreconditionError("the two linkages must end in the same sinks")
    if not p_link.starts().isdisjoint(q_link.starts()):
        raise PreconditionError("the two linkages must start in disjoint source sets")


def pack_from_linkage_pair(d: MigrationDigraph, p_link: Linkage, q_link: Linkage, k: int,
                           bounds: BoundTable | None = None, *, route: str | None = None,
                           strict: bool = False, search_nodes: int = 5000) -> Certificate:
    """``k`` vertex-disjoint tripods inside the union of two linkages.

    ``strict`` rejects linkages smaller than the route's ``g4(k)`` instead of
    falling back to a direct search.
    """
    bounds = bounds or default_bounds()
    route = route or bounds.route
    bounds = bounds.with_route(route)
    if k < 1:
        raise PreconditionError("k must be positive")
    check_linkage_pair(d, p_link, q_link)
    need = bounds.g4(k)
    if strict and len(p_link) < need:
        raise PreconditionError(f"linkages have {len(p_link)} paths, route {route} needs {need}")
    runner = _ramsey_route if route == "ramsey" else _iterative_route
    reason = "below-threshold"
    try:
        cert = runner(d, p_link, q_link, k, bounds, search_nodes)
    except HarvestFailure:
        cert, reason = None, "harvest-failed"
    if cert is None:
        cert = _direct(d, p_link, q_link, k, search_nodes, route, reason)
    check = packing_verdict(d, k, cert.packing)
    if not check:  # pragma: no cover
        raise InternalSoundnessError(f"linkage-pair packing invalid: {check.reason}")
    return cert


def _direct(d, p_link, q_link, k, search_nodes, route, reason) -> Certificate:
    union = d.union_of_paths(list(p_link) + list(q_link))
    host = MigrationDigraph.from_digraph(union, d.sources & union.vertex_set,
                                         d.sinks & union.vertex_set)
    found = pack_tripods(host, k, max_nodes=search_nodes)
    if found is None:
        raise BoundParameterError(
            f"{route} route: no packing of {k} tripods found inside the two linkages",
            bound_diagnostic=True)
    return Certificate.of_packing(found, f"{route}-route", reason, "direct-search")


def _pair_tripods(d, p_by, q_by, sinks) -> list:
    return [tripod_from_path_pair(d, p_by[y], q_by[y]) for y in sinks]


def _ramsey_route(d, p_link, q_link, k, bounds, search_nodes) -> Certificate | None:
    p_by, q_by = p_link.by_end(), q_link.by_end()
    ys = ordered(p_by)
    ell = bounds.g5(k)
    a = transitive(2 * ell)
    if len(ys) < ramsey(a, k):
        return None

    def arc(y, z):
        return y != z and p_by[y].meets(q_by[z])

    kind, chosen = ramsey_extract(ys, lambda y, z: arc(y, z) or arc(z, y), a, k)
    if kind == "independent":
        tripods = _pair_tripods(d, p_by, q_by, chosen)
        return Certificate.of_packing(tripods, "ramsey-route", "independent-sinks")
    order = transitive_extract(chosen, arc, 2 * ell)
    k_link = Linkage(tuple(p_by[y] for y in order[:ell]))
    l_link = Linkage(tuple(q_by[y] for y in order[ell:]))
    cert = pack_from_intersecting_linkages(d, k_link, l_link, k, g5_threshold=ell,
                                           search_nodes=search_nodes)
    return cert.with_provenance("ramsey-route", "transitive-clique")


def _iterative_route(d, p_link, q_link, k, bounds, search_nodes) -> Certificate | None:
    need = bounds.g9(k)
    for crossing, link, tag in ((q_link, p_link, "q-crosses-p"), (p_link, q_link, "p-crosses-q")):
        for path in crossing:
            met = [x for x in link if x.meets(path)]
            if len(met) >= need:
                cert = pack_from_crossing_path(d, Linkage(tuple(met)), path, k, bounds,
                                               search_nodes=search_nodes)
                return cert.with_provenance("iterative-route", tag)
    p_by, q_by = p_link.by_end(), q_link.by_end()
    ys = ordered(p_by)
    adj = {y: set() for y in ys}
    for y in ys:
        for z in ys:
            if y != z and (p_by[y].meets(q_by[z]) or q_by[y].meets(p_by[z])):
                adj[y].add(z)
                adj[z].add(y)
    chosen: list = []
    blocked: set = set()
    for y in ys:
        if y not in blocked:
            chosen.append(y)
            blocked |= adj[y] | {y}
    if len(chosen) < k:
        return None
    tripods = _pair_tripods(d, p_by, q_by, chosen[:k])
    return Certificate.of_packing(tripods, "iterative-route", "independent-sinks")
