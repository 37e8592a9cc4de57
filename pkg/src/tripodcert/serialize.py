"""JSON documents for instances and certificates, and DOT export.

An instance document looks like::

    {"format": "tripod-instance", "version": 1,
     "vertices": ["s1", "s2", "c", "t"],
     "edges": [["s1", "c"], ["s2", "c"], ["c", "t"]],
     "sources": ["s1", "s2"], "sinks": ["t"]}

Vertex identifiers are strings.  Errors name the offending position, for
example ``edges[2]``.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import PreconditionError
from .graph import MigrationDigraph, Path, Tripod, ekey, ordered, relabel
from .tripods import Certificate

INSTANCE_FORMAT = "tripod-instance"
CERTIFICATE_FORMAT = "tripod-certificate"
VERSION = 1


class DocumentError(PreconditionError):
    """A document could not be parsed; the message names the position."""


# --- instances -------------------------------------------------------------


def instance_to_dict(d: MigrationDigraph) -> dict:
    for v in d.vertices:
        if not isinstance(v, str):
            raise DocumentError(f"vertex {v!r} is not a string; relabel with stringify() first")
    return {
        "format": INSTANCE_FORMAT,
        "version": VERSION,
        "vertices": list(d.vertices),
        "edges": [list(e) for e in d.sorted_edges()],
        "sources": ordered(d.sources),
        "sinks": ordered(d.sinks),
    }


def dump_instance(d: MigrationDigraph) -> str:
    return json.dumps(instance_to_dict(d), indent=1)


def _parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _header(doc: Any, fmt: str) -> None:
    if not isinstance(doc, dict):
        raise DocumentError("top level: expected a JSON object")
    if doc.get("format") != fmt:
        raise DocumentError(f"format: expected {fmt!r}, got {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise DocumentError(f"version: unsupported version {doc.get('version')!r}")


def _str_list(doc: dict, key: str) -> list:
    items = doc.get(key)
    if not isinstance(items, list):
        raise DocumentError(f"{key}: expected a list")
    for i, v in enumerate(items):
        if not isinstance(v, str):
            raise DocumentError(f"{key}[{i}]: expected a string, got {v!r}")
    return items


def instance_from_dict(doc: Any) -> MigrationDigraph:
    _header(doc, INSTANCE_FORMAT)
    vertices = _str_list(doc, "vertices")
    declared: dict = {}
    for i, v in enumerate(vertices):
        if v in declared:
            raise DocumentError(f"vertices[{i}]: duplicate vertex {v!r} (first at vertices[{declared[v]}])")
        declared[v] = i
    raw = doc.get("edges")
    if not isinstance(raw, list):
        raise DocumentError("edges: expected a list")
    edges, first_at = [], {}
    for i, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise DocumentError(f"edges[{i}]: expected a pair of vertex names")
        u, v = e
        if u == v:
            raise DocumentError(f"edges[{i}]: loop at {u!r}")
        for end in (u, v):
            if end not in declared:
                raise DocumentError(f"edges[{i}]: undeclared vertex {end!r}")
        if (u, v) in first_at:
            raise DocumentError(f"edges[{i}]: duplicate edge ({u!r}, {v!r}) (first at edges[{first_at[(u, v)]}])")
        first_at[(u, v)] = i
        edges.append((u, v))
    terminals = {}
    for key in ("sources", "sinks"):
        items = _str_list(doc, key)
        seen: set = set()
        for i, v in enumerate(items):
            if v not in declared:
                raise DocumentError(f"{key}[{i}]: undeclared vertex {v!r}")
            if v in seen:
                raise DocumentError(f"{key}[{i}]: duplicate entry {v!r}")
            seen.add(v)
        terminals[key] = items
    return MigrationDigraph(vertices, edges, terminals["sources"], terminals["sinks"])


def load_instance(text: str) -> MigrationDigraph:
    return instance_from_dict(_parse_json(text))


def vertex_name(v: Any) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "_".join(vertex_name(x) for x in v)
    return str(v)


def stringify(d: MigrationDigraph) -> MigrationDigraph:
    """Relabel vertices by readable strings, e.g. ``("g", 1, 2)`` becomes ``"g_1_2"``."""
    names = {v: vertex_name(v) for v in d.vertices}
    if len(set(names.values())) != len(names):
        raise DocumentError("vertex names collide after conversion to strings")
    return relabel(d, names)


# --- certificates ----------------------------------------------------------


def _tripod_to_dict(r: Tripod) -> dict:
    return {"s1": r.s1, "s2": r.s2, "t": r.t, "c": r.c, "branch1": list(r.branch1.vertices),
            "branch2": list(r.branch2.vertices), "tail": list(r.tail.vertices)}


def certificate_to_dict(cert: Certificate, k: int, bounds=None, verified: bool | None = None) -> dict:
    if cert.is_packing:
        payload = {"tripods": [_tripod_to_dict(r) for r in cert.packing]}
    elif cert.kind == "hitting-set":
        payload = {"vertices": ordered(cert.hitting_set)}
    else:
        payload = {"edges": [list(e) for e in sorted(cert.hitting_set, key=ekey)]}
    doc = {
        "format": CERTIFICATE_FORMAT,
        "version": VERSION,
        "kind": cert.kind,
        "k": k,
        "payload": payload,
        "provenance": list(cert.provenance),
    }
    if cert.bound is not None:
        doc["bound"] = cert.bound
    if bounds is not None:
        doc["bounds"] = bounds.snapshot(k)
    if verified is not None:
        doc["verified"] = verified
    return doc


def dump_certificate(cert: Certificate, k: int, bounds=None, verified: bool | None = None) -> str:
    return json.dumps(certificate_to_dict(cert, k, bounds, verified), indent=1)


def _vertex_seq(value: Any, where: str) -> Path:
    if not isinstance(value, list) or not value:
        raise DocumentError(f"{where}: expected a nonempty vertex list")
    for i, v in enumerate(value):
        if not isinstance(v, str):
            raise DocumentError(f"{where}[{i}]: expected a string")
    try:
        return Path(tuple(value))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def certificate_from_dict(doc: Any):
    """Returns ``(certificate, k, document)``."""
    _header(doc, CERTIFICATE_FORMAT)
    kind = doc.get("kind")
    if kind not in Certificate.KINDS:
        raise DocumentError(f"kind: unknown certificate kind {kind!r}")
    k = doc.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DocumentError("k: expected a positive integer")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise DocumentError("payload: expected an object")
    prov = doc.get("provenance", [])
    if not isinstance(prov, list) or not all(isinstance(x, str) for x in prov):
        raise DocumentError("provenance: expected a list of strings")
    bound = doc.get("bound")
    if bound is not None and (not isinstance(bound, int) or isinstance(bound, bool)):
        raise DocumentError("bound: expected an integer")
    if kind in ("packing", "edge-packing"):
        tripods = []
        items = payload.get("tripods")
        if not isinstance(items, list):
            raise DocumentError("payload.tripods: expected a list")
        for i, item in enumerate(items):
            where = f"payload.tripods[{i}]"
            if not isinstance(item, dict):
                raise DocumentError(f"{where}: expected an object")
            ends = {}
            for key in ("s1", "s2", "t", "c"):
                if not isinstance(item.get(key), str):
                    raise DocumentError(f"{where}.{key}: expected a vertex name")
                ends[key] = item[key]
            parts = [_vertex_seq(item.get(key), f"{where}.{key}") for key in ("branch1", "branch2", "tail")]
            tripods.append(Tripod(ends["s1"], ends["s2"], ends["t"], ends["c"], *parts))
        cert = Certificate(kind, packing=tripods, provenance=prov, bound=bound)
    elif kind == "hitting-set":
        items = payload.get("vertices")
        if not isinstance(items, list):
            raise DocumentError("payload.vertices: expected a list")
        for i, v in enumerate(items):
            if not isinstance(v, str):
                raise DocumentError(f"payload.vertices[{i}]: expected a string")
            if v in items[:i]:
                raise DocumentError(f"payload.vertices[{i}]: duplicate vertex {v!r}")
        cert = Certificate(kind, hitting_set=items, provenance=prov, bound=bound)
    else:
        items = payload.get("edges")
        if not isinstance(items, list):
            raise DocumentError("payload.edges: expected a list")
        edges = []
        for i, e in enumerate(items):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
                raise DocumentError(f"payload.edges[{i}]: expected a pair of vertex names")
            if tuple(e) in edges:
                raise DocumentError(f"payload.edges[{i}]: duplicate edge {tuple(e)!r}")
            edges.append(tuple(e))
        cert = Certificate(kind, hitting_set=edges, provenance=prov, bound=bound)
    return cert, k, doc


def load_certificate(text: str):
    return certificate_from_dict(_parse_json(text))


# --- DOT -------------------------------------------------------------------


def _q(v: Any) -> str:
    return json.dumps(vertex_name(v))


def to_dot(d: MigrationDigraph, cert=None) -> str:
    """Graphviz text: sources are boxes, sinks double circles, tripod centres filled."""
    centres, used = set(), set()
    if cert is not None and cert.is_packing:
        for r in cert.packing:
            centres.add(r.c)
            used |= r.edge_set()
    hit = set(cert.hitting_set) if cert is not None and not cert.is_packing else set()
    lines = ["digraph tripods {", "  node [shape=circle];"]
    for v in d.vertices:
        attrs = []
        if v in d.sources:
            attrs.append("shape=box")
        if v in d.sinks:
            attrs.append("shape=doublecircle" if v not in d.sources else "shape=Msquare")
        if v in centres:
            attrs += ["style=filled", "fillcolor=gold"]
        if v in hit:
            attrs += ["style=filled", "fillcolor=tomato"]
        lines.append(f"  {_q(v)}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in d.sorted_edges():
        attrs = []
        if (u, v) in used:
            attrs += ["color=blue", "penwidth=2"]
        if (u, v) in hit:
            attrs += ["color=red", "style=dashed"]
        lines.append(f"  {_q(u)} -> {_q(v)}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
