"""JSON documents for graphs, colorings, decompositions, lists, witnesses
and gadgets."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .decomposition import RootedTreeDecomposition
from .errors import DocumentError, InputError
from .generators import GadgetOutput
from .graph import Graph
from .legitimacy import CenteredWitness, ListAssignment


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_json(text, str(path))


def parse_json(text: str, name: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON in {name}: {exc.msg}",
                            f"line {exc.lineno} column {exc.colno}") from exc


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"expected an integer, got {x!r}", where)
    return x


def _obj(doc: Any, where: str) -> dict:
    if not isinstance(doc, dict):
        raise DocumentError(f"expected an object, got {type(doc).__name__}", where)
    return doc


def _list(doc: Any, where: str) -> list:
    if not isinstance(doc, list):
        raise DocumentError(f"expected an array, got {type(doc).__name__}", where)
    return doc


def _key(k: str, where: str) -> int:
    try:
        return int(k)
    except ValueError:
        raise DocumentError(f"key {k!r} is not an integer", where) from None


# ---------------------------------------------------------------- graph

def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(doc: Any) -> Graph:
    doc = _obj(doc, "graph")
    if "n" not in doc or "edges" not in doc:
        raise DocumentError("graph needs keys 'n' and 'edges'", "graph")
    n = _int(doc["n"], "graph.n")
    edges = []
    for i, e in enumerate(_list(doc["edges"], "graph.edges")):
        e = _list(e, f"graph.edges[{i}]")
        if len(e) != 2:
            raise DocumentError("an edge needs exactly two endpoints", f"graph.edges[{i}]")
        edges.append((_int(e[0], f"graph.edges[{i}][0]"), _int(e[1], f"graph.edges[{i}][1]")))
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------- coloring

def coloring_to_json(c: Mapping[int, int]) -> dict:
    return {"colors": {str(v): c[v] for v in sorted(c)}}


def coloring_from_json(doc: Any) -> dict[int, int]:
    doc = _obj(doc, "coloring")
    cols = _obj(doc.get("colors"), "coloring.colors")
    return {_key(k, "coloring.colors"): _int(v, f"coloring.colors.{k}") for k, v in cols.items()}


# ---------------------------------------------------------------- decomposition

def td_to_json(td: RootedTreeDecomposition) -> dict:
    return {"root": td.root, "nodes": list(td.nodes), "edges": [list(e) for e in td.edges],
            "bags": {str(t): sorted(td.bags[t]) for t in td.nodes}}


def td_from_json(doc: Any) -> RootedTreeDecomposition:
    doc = _obj(doc, "td")
    for key in ("root", "nodes", "edges", "bags"):
        if key not in doc:
            raise DocumentError(f"tree-decomposition needs key {key!r}", "td")
    nodes = [_int(t, f"td.nodes[{i}]") for i, t in enumerate(_list(doc["nodes"], "td.nodes"))]
    edges = []
    for i, e in enumerate(_list(doc["edges"], "td.edges")):
        e = _list(e, f"td.edges[{i}]")
        if len(e) != 2:
            raise DocumentError("a tree edge needs a parent and a child", f"td.edges[{i}]")
        edges.append((_int(e[0], f"td.edges[{i}][0]"), _int(e[1], f"td.edges[{i}][1]")))
    bags = {}
    for k, b in _obj(doc["bags"], "td.bags").items():
        bags[_key(k, "td.bags")] = [_int(v, f"td.bags.{k}") for v in _list(b, f"td.bags.{k}")]
    try:
        return RootedTreeDecomposition.build(_int(doc["root"], "td.root"), nodes, edges, bags)
    except InputError as exc:
        raise DocumentError(str(exc), "td.bags") from exc


# ---------------------------------------------------------------- lists and witnesses

def lists_to_json(L: ListAssignment) -> dict:
    return {"palette": list(L.palette), "lists": {str(v): list(l) for v, l in enumerate(L.lists)}}


def lists_from_json(doc: Any, n: int | None = None) -> ListAssignment:
    doc = _obj(doc, "lists")
    raw = _obj(doc.get("lists"), "lists.lists")
    palette = [_int(c, "lists.palette") for c in _list(doc.get("palette", []), "lists.palette")]
    by_v = {_key(k, "lists.lists"): [_int(c, f"lists.lists.{k}") for c in _list(l, f"lists.lists.{k}")]
            for k, l in raw.items()}
    size = len(by_v) if n is None else n
    missing = [v for v in range(size) if v not in by_v]
    if missing or any(v >= size or v < 0 for v in by_v):
        raise DocumentError(f"lists must cover exactly the vertices 0..{size - 1}", "lists.lists")
    return ListAssignment.of([by_v[v] for v in range(size)], palette)


def witnesses_to_json(wit: Mapping[int, CenteredWitness]) -> dict:
    return {str(t): {"centers": sorted(w.centers), "radius": w.radius} for t, w in sorted(wit.items())}


def witnesses_from_json(doc: Any) -> dict[int, CenteredWitness]:
    out = {}
    for k, w in _obj(doc, "witnesses").items():
        w = _obj(w, f"witnesses.{k}")
        centers = [_int(v, f"witnesses.{k}.centers") for v in _list(w.get("centers"), f"witnesses.{k}.centers")]
        try:
            out[_key(k, "witnesses")] = CenteredWitness.of(centers, _int(w.get("radius"), f"witnesses.{k}.radius"))
        except InputError as exc:
            raise DocumentError(str(exc), f"witnesses.{k}") from exc
    return out


# ---------------------------------------------------------------- gadget

def _prov(p: tuple) -> dict:
    if p[0] == "q":
        return {"kind": "q", "host_vertex": p[1], "index": p[2]}
    return {"kind": "edge", "host_edge": list(p[1]), "type": list(p[2])}


def gadget_to_json(go: GadgetOutput) -> dict:
    return {"graph": graph_to_json(go.graph), "lists": lists_to_json(go.lists),
            "bipartition": [list(go.bipartition[0]), list(go.bipartition[1])],
            "provenance": {str(v): _prov(go.provenance[v]) for v in sorted(go.provenance)},
            "host_degree": go.host_degree, "k": go.k}
