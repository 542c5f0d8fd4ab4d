"""JSON instance and graph documents.

Instance document::

    {"vertices": N, "edges": [[u, v], ...],
     "inhabitants": [{"vertex": v, "ub": b}, ...],
     "refugees": R, "t": T}

``t`` is optional.  Vertex ids are 0-based and unknown keys are rejected.
A graph document holds only ``vertices`` and ``edges``.
"""

from __future__ import annotations

import json

from .errors import InvalidInstance
from .instance import Graph, Instance, RawInstance, validate_instance

INSTANCE_KEYS = {"vertices", "edges", "inhabitants", "refugees", "t"}
GRAPH_KEYS = {"vertices", "edges"}


def _nat(value, what):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidInstance(f"{what} must be a non-negative integer, got {value!r}")
    return value


def _load(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidInstance("document must be a JSON object")
    return doc


def _check_keys(doc, allowed, required, where):
    unknown = set(doc) - allowed
    if unknown:
        raise InvalidInstance(f"unknown field(s) in {where}: {', '.join(sorted(unknown))}")
    missing = required - set(doc)
    if missing:
        raise InvalidInstance(f"missing field(s) in {where}: {', '.join(sorted(missing))}")


def _edges(doc):
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise InvalidInstance("edges must be a list")
    out = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise InvalidInstance(f"edge {e!r} is not a pair")
        out.append((_nat(e[0], "edge endpoint"), _nat(e[1], "edge endpoint")))
    return out


def parse_graph(text: str) -> Graph:
    doc = _load(text)
    _check_keys(doc, GRAPH_KEYS, GRAPH_KEYS, "graph document")
    return Graph.from_edges(_nat(doc["vertices"], "vertices"), _edges(doc))


def dump_graph(graph: Graph) -> str:
    return _layout({"vertices": graph.vertex_count, "edges": [list(e) for e in graph.edges()]})


def parse_instance(text: str, clamp: bool = True) -> tuple[Instance, list[str]]:
    """Parse and validate; returns the instance and any clamping warnings.

    With ``clamp`` a bound above the vertex degree is lowered to the degree
    (the inhabitant accepts the same housings either way).
    """
    doc = _load(text)
    _check_keys(doc, INSTANCE_KEYS, INSTANCE_KEYS - {"t"}, "instance document")
    n = _nat(doc["vertices"], "vertices")
    edges = _edges(doc)
    graph = Graph.from_edges(n, edges)
    inhabitants = doc["inhabitants"]
    if not isinstance(inhabitants, list):
        raise InvalidInstance("inhabitants must be a list")
    pairs = []
    warnings = []
    for entry in inhabitants:
        if not isinstance(entry, dict):
            raise InvalidInstance(f"inhabitant entry {entry!r} is not an object")
        _check_keys(entry, {"vertex", "ub"}, {"vertex", "ub"}, "inhabitant entry")
        v = _nat(entry["vertex"], "inhabitant vertex")
        b = _nat(entry["ub"], "upper-bound")
        if clamp and v < n and b > graph.degree(v):
            warnings.append(f"ub of vertex {v} lowered from {b} to its degree {graph.degree(v)}")
            b = graph.degree(v)
        pairs.append((v, b))
    t = doc.get("t")
    raw = RawInstance(
        n,
        edges,
        pairs,
        _nat(doc["refugees"], "refugees"),
        None if t is None else _nat(t, "t"),
    )
    return validate_instance(raw), warnings


def _layout(doc: dict) -> str:
    """One top-level key per line: stable and diff-friendly."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def dump_instance(inst: Instance) -> str:
    doc = {
        "vertices": inst.n,
        "edges": [list(e) for e in inst.graph.edges()],
        "inhabitants": [{"vertex": v, "ub": b} for v, b in inst.ub.items()],
        "refugees": inst.refugees,
    }
    if inst.t is not None:
        doc["t"] = inst.t
    return _layout(doc)


def read_instance(path, clamp: bool = True) -> tuple[Instance, list[str]]:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), clamp)


def write_instance(path, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_instance(inst))
