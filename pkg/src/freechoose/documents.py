"""JSON documents for instances, colorings and solve reports (format 1).

Instance::

    {"format": 1,
     "graph": {"kind": "cycle", "n": 6},        # or {"kind": "path", "n": 4}
                                                # or {"kind": "tree_of_cycles",
                                                #     "vertices": 9, "edges": [[0, 1], ...]}
     "b": 4,
     "lists": {"0": [1, 2, 3], "1": [...], ...},
     "anchor": {"vertex": 0, "colors": [1, 2, 3, 4]}}   # optional

A coloring document is any object with a ``"coloring"`` field mapping vertex
strings to color arrays, so solve reports can be fed to ``verify`` directly.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .core import (
    Anchor,
    Cycle,
    Instance,
    InstanceError,
    Path,
    SolveReport,
    TreeOfCycles,
    fmt_ratio,
)

FORMAT = 1


class DocumentError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _int(value, field, minimum=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(field, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise DocumentError(field, f"must be >= {minimum}, got {value}")
    return value


def _colors(value, field) -> frozenset:
    if not isinstance(value, list):
        raise DocumentError(field, f"expected an array of colors, got {value!r}")
    cs = [_int(c, f"{field}[{k}]", 0) for k, c in enumerate(value)]
    if len(set(cs)) != len(cs):
        raise DocumentError(field, "repeated color")
    return frozenset(cs)


def _vertex_map(value, field, nv) -> list:
    """Decode ``{"0": [...], ...}`` (or a plain array) into a per-vertex list."""
    if isinstance(value, list):
        value = {str(k): v for k, v in enumerate(value)}
    if not isinstance(value, dict):
        raise DocumentError(field, "expected an object keyed by vertex index")
    out: list = [None] * nv
    for key, colors in value.items():
        try:
            v = int(key)
        except ValueError:
            raise DocumentError(f"{field}.{key}", "key is not a vertex index") from None
        if not 0 <= v < nv:
            raise DocumentError(f"{field}.{key}", f"vertex {v} out of range 0..{nv - 1}")
        out[v] = _colors(colors, f"{field}.{key}")
    return out


def parse_shape(doc) -> Any:
    if not isinstance(doc, dict):
        raise DocumentError("graph", "expected an object")
    kind = doc.get("kind")
    try:
        if kind == "path":
            return Path(_int(doc.get("n"), "graph.n", 0))
        if kind == "cycle":
            return Cycle(_int(doc.get("n"), "graph.n", 3))
        if kind == "tree_of_cycles":
            nv = _int(doc.get("vertices"), "graph.vertices", 1)
            edges = doc.get("edges", [])
            if not isinstance(edges, list):
                raise DocumentError("graph.edges", "expected an array of [u, v] pairs")
            pairs = []
            for k, e in enumerate(edges):
                if not (isinstance(e, list) and len(e) == 2):
                    raise DocumentError(f"graph.edges[{k}]", "expected a pair [u, v]")
                pairs.append(tuple(_int(x, f"graph.edges[{k}]", 0) for x in e))
            return TreeOfCycles(nv, tuple(pairs))
    except InstanceError as exc:
        raise DocumentError("graph", str(exc)) from None
    raise DocumentError("graph.kind", f"expected path, cycle or tree_of_cycles, got {kind!r}")


def parse_instance(doc) -> Instance:
    if not isinstance(doc, dict):
        raise DocumentError("<root>", "expected a JSON object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise DocumentError("format", f"unsupported format {fmt!r}")
    if "graph" not in doc:
        raise DocumentError("graph", "missing")
    shape = parse_shape(doc["graph"])
    b = _int(doc.get("b"), "b", 0)
    if "lists" not in doc:
        raise DocumentError("lists", "missing")
    lists = _vertex_map(doc["lists"], "lists", shape.num_vertices)
    for v, L in enumerate(lists):
        if L is None:
            raise DocumentError(f"lists.{v}", f"missing list for vertex {v}")
    anchor = None
    if doc.get("anchor") is not None:
        a = doc["anchor"]
        if not isinstance(a, dict):
            raise DocumentError("anchor", "expected {vertex, colors}")
        anchor = Anchor(
            _int(a.get("vertex"), "anchor.vertex", 0), _colors(a.get("colors"), "anchor.colors")
        )
    try:
        return Instance(shape, tuple(lists), b, anchor)
    except InstanceError as exc:
        raise DocumentError("anchor", str(exc)) from None


def parse_coloring(doc, nv: int) -> list:
    if not isinstance(doc, dict) or "coloring" not in doc:
        raise DocumentError("coloring", "missing")
    if doc["coloring"] is None:
        raise DocumentError("coloring", "document holds no coloring")
    return _vertex_map(doc["coloring"], "coloring", nv)


def _vmap(sets) -> dict:
    return {str(v): sorted(c) for v, c in enumerate(sets)}


def shape_doc(shape) -> dict:
    if isinstance(shape, Path):
        return {"kind": "path", "n": shape.n}
    if isinstance(shape, Cycle):
        return {"kind": "cycle", "n": shape.n}
    return {
        "kind": "tree_of_cycles",
        "vertices": shape.num_vertices,
        "edges": [list(e) for e in shape.edges()],
    }


def instance_doc(instance: Instance) -> dict:
    doc = {
        "format": FORMAT,
        "graph": shape_doc(instance.shape),
        "b": instance.b,
        "lists": _vmap(instance.lists),
    }
    if instance.anchor is not None:
        doc["anchor"] = {
            "vertex": instance.anchor.vertex,
            "colors": sorted(instance.anchor.colors),
        }
    return doc


def report_doc(report: SolveReport, instance: Instance, elapsed_ms: Optional[float] = None) -> dict:
    a = instance.list_size
    doc = {
        "format": FORMAT,
        "outcome": report.outcome.value,
        "solver": report.solver,
        "coloring": None if report.coloring is None else _vmap(report.coloring),
        "threshold": {
            "ratio": None if a is None or instance.b == 0 else f"{a}/{instance.b}",
            "required": None if report.threshold is None else fmt_ratio(report.threshold),
            "met": report.threshold_met,
        },
        "fallback_used": report.fallback_used,
        "repairs": report.repairs,
        "total_colors": report.total_colors,
        "steps": report.steps,
    }
    if elapsed_ms is not None:
        doc["elapsed_ms"] = round(elapsed_ms, 3)
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"
