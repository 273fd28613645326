"""Command-line front end.

Every command prints one JSON document on stdout and a short summary on
stderr. Exit codes: 0 success, 1 validation failure, 2 contract or
engine-invariant violation, 3 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Any, Callable

from . import io
from .bounds import (BoundParams, bound_add_centered, bound_all_centered, bound_fstar,
                     bound_small_extension, bound_torso, bound_tw)
from .colorers import (bipartite_apex_oracle, brute_force_torso_oracle,
                       color_bounded_treewidth, color_with_torso_oracle)
from .decomposition import (ConstructionParams, ValidationReport, adhesion, validate_construction,
                            validate_tree_decomposition, width)
from .engine import EngineStats
from .errors import (ContractError, DocumentError, EngineInvariantError, InputError,
                     PrecoloringError, TooLargeError)
from .generators import (ball_painted_precoloring, build_bipartite_gadget, check_gadget,
                         cycle_graph, hypercube, petersen, random_ktree, random_lists,
                         triangular_grid)
from .graph import coloring_weak_diameter, girth
from .legitimacy import LegitimacyParams, check_legitimate
from .oracles import brute_force_min_weak_diameter, gadget_weak_diameter_claim

EXIT_OK, EXIT_INVALID, EXIT_CONTRACT, EXIT_IO = 0, 1, 2, 3


def _section(path: str, key: str) -> Any:
    """Load a document; a bundle holding ``key`` yields just that part."""
    doc = io.load_json(path)
    if isinstance(doc, dict) and key in doc and not (key == "lists" and "palette" in doc):
        return doc[key]
    return doc


def _graph(path):
    return io.graph_from_json(_section(path, "graph"))


def _measure(d: float) -> float | str:
    return d if d != float("inf") else "infinite"


# ---------------------------------------------------------------- commands

def cmd_validate(a) -> tuple[dict, str, int]:
    g = _graph(a.graph)
    td = io.td_from_json(_section(a.td, "td"))
    rep = validate_tree_decomposition(g, td)
    out: dict[str, Any] = {"width": width(td) if td.nodes else -1}
    if rep.ok and a.eta is not None:
        theta = a.theta if a.theta is not None else a.eta
        rep = rep + validate_construction(g, td, ConstructionParams(a.eta, theta))
    lists = None
    if a.lists:
        lists = io.lists_from_json(_section(a.lists, "lists"), g.n)
    if rep.ok and lists is not None and a.m is not None:
        wit = io.witnesses_from_json(_section(a.witnesses, "witnesses")) if a.witnesses else {}
        p = LegitimacyParams(a.m, a.s, a.r, a.k)
        rep = rep + check_legitimate(g, td, lists, p, wit)
    if a.coloring:
        c = io.coloring_from_json(_section(a.coloring, "coloring"))
        bad = []
        missing = [v for v in range(g.n) if v not in c]
        if missing or any(not 0 <= v < g.n for v in c):
            bad.append(("coloring-total", f"coloring does not cover exactly 0..{g.n - 1}"))
        elif lists is not None and not lists.respects(c):
            v = next(v for v in range(g.n) if c[v] not in lists[v])
            bad.append(("coloring-lists", f"vertex {v} colored {c[v]} outside its list"))
        if not bad:
            wd = coloring_weak_diameter(g, c)
            out["weak_diameter"] = _measure(wd)
            if a.max_diameter is not None and wd > a.max_diameter:
                bad.append(("coloring-diameter", f"weak diameter {wd} exceeds {a.max_diameter}"))
        rep = rep + ValidationReport(tuple(bad))
    out.update(rep.to_json())
    summary = "valid" if rep.ok else f"{len(rep.violations)} violation(s), first: {rep.violations[0][1]}"
    return out, summary, EXIT_OK if rep.ok else EXIT_INVALID


def cmd_color_tw(a):
    g = _graph(a.graph)
    td = io.td_from_json(_section(a.td, "td"))
    lists = io.lists_from_json(_section(a.lists, "lists"), g.n)
    c0 = io.coloring_from_json(_section(a.precoloring, "precoloring")) if a.precoloring else {}
    w = a.w if a.w is not None else max(width(td), 1)
    stats = EngineStats()
    c = color_bounded_treewidth(g, td, lists, c0, a.k, w, strict_paper=a.strict_paper, stats=stats)
    wd = coloring_weak_diameter(g, c)
    bound = bound_tw(w, a.k)
    doc = {"coloring": io.coloring_to_json(c)["colors"], "weak_diameter": _measure(wd),
           "bound": bound, "w": w, "k": a.k, "stats": stats.to_json()}
    return doc, f"colored {g.n} vertices, weak diameter {wd} <= bound {bound}", EXIT_OK


def cmd_color_torso(a):
    g = _graph(a.graph)
    td = io.td_from_json(_section(a.td, "td"))
    lists = io.lists_from_json(_section(a.lists, "lists"), g.n)
    if a.oracle == "brute":
        guarantee = a.guarantee if a.guarantee is not None else max(width(td), 0)
        oracle = brute_force_torso_oracle(guarantee, a.cap)
    else:
        if not a.apex_sets:
            raise InputError("--oracle bipartite-apex needs --apex-sets")
        raw = io.load_json(a.apex_sets)
        if not isinstance(raw, dict):
            raise DocumentError("apex sets must be an object of node -> vertex list", a.apex_sets)
        sets = {io._key(k, "apex-sets"): [io._int(v, f"apex-sets.{k}") for v in io._list(vs, f"apex-sets.{k}")]
                for k, vs in raw.items()}
        oracle = bipartite_apex_oracle(sets, lists.palette)
    stats = EngineStats()
    c = color_with_torso_oracle(g, td, lists, oracle, a.p, strict_paper=a.strict_paper, stats=stats)
    wd = coloring_weak_diameter(g, c)
    p = a.p if a.p is not None else max(adhesion(td), 1)
    bound = bound_torso(p, oracle.guarantee)
    doc = {"coloring": io.coloring_to_json(c)["colors"], "weak_diameter": _measure(wd), "bound": bound,
           "oracle": oracle.name, "oracle_guarantee": oracle.guarantee, "p": p, "stats": stats.to_json()}
    return doc, f"colored {g.n} vertices, weak diameter {wd} <= bound {bound}", EXIT_OK


def cmd_brute(a):
    g = _graph(a.graph)
    lists = io.lists_from_json(_section(a.lists, "lists"), g.n)
    best, witness = brute_force_min_weak_diameter(g, lists, a.cap)
    doc = {"min_weak_diameter": _measure(best), "witness": io.coloring_to_json(witness)["colors"]}
    return doc, f"minimum weak diameter {best}", EXIT_OK


HOSTS: dict[str, Callable] = {"petersen": petersen, "c6": lambda: cycle_graph(6),
                              "c8": lambda: cycle_graph(8), "cube": lambda: hypercube(3)}


def cmd_gadget(a):
    host = HOSTS[a.host]() if a.host in HOSTS else _graph(a.host)
    go = build_bipartite_gadget(host, a.k)
    doc = io.gadget_to_json(go)
    bad = check_gadget(go)
    doc["invariants"] = {"ok": not bad, "failed": bad}
    if a.verdict:
        threshold, verdict = gadget_weak_diameter_claim(go, int(girth(host)), a.cap)
        doc["claim"] = {"threshold": threshold, "verdict": verdict}
    summary = f"gadget with {go.graph.n} vertices, max degree {go.graph.max_degree()}"
    return doc, summary, EXIT_OK if not bad else EXIT_INVALID


def cmd_grid(a):
    g = triangular_grid(a.n)
    return io.graph_to_json(g), f"triangular grid {a.n}x{a.n}: {g.n} vertices, {g.m} edges", EXIT_OK


def cmd_ktree(a):
    rng = random.Random(a.seed)
    g, td = random_ktree(a.n, a.w, a.seed)
    lists = random_lists(g.n, a.m, a.palette, rng)
    c0 = ball_painted_precoloring(g, lists, a.k, rng)
    doc = {"graph": io.graph_to_json(g), "td": io.td_to_json(td), "lists": io.lists_to_json(lists),
           "precoloring": io.coloring_to_json(c0)}
    return doc, f"partial {a.w}-tree on {g.n} vertices, {len(c0)} precolored", EXIT_OK


def _need(a, *names):
    missing = [n for n in names if getattr(a, n) is None]
    if missing:
        raise InputError(f"formula {a.formula} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))
    return [getattr(a, n) for n in names]


def cmd_bounds(a):
    f = a.formula
    if f == "all-centered":
        k, r = _need(a, "k", "r")
        val = bound_all_centered(k, r)
    elif f == "add-centered":
        k, r, n = _need(a, "k", "r", "n")
        val = bound_add_centered(k, r, n)
    elif f == "fstar":
        theta, s, r, k, eta, n = _need(a, "theta", "s", "r", "k", "eta", "n")
        val = bound_fstar(BoundParams(theta, s, r, k), eta, n)
    elif f == "tw":
        w, k = _need(a, "w", "k")
        val = bound_tw(w, k)
    elif f == "small-ext":
        d, n = _need(a, "d", "n")
        val = bound_small_extension(d, n)
    else:
        p, n = _need(a, "p", "n")
        val = bound_torso(p, n)
    return {"formula": f, "value": val}, f"{f} = {val}", EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weakcolor", description="Weak-diameter list colorings.",
                                 allow_abbrev=False)
    ap.add_argument("--strict-paper", action="store_true",
                    help="use one gadget vertex per m-subset of the color universe")
    ap.add_argument("--seed", type=int, default=0, help="seed for commands that sample")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check a decomposition, construction, legitimacy or coloring")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True)
    p.add_argument("--eta", type=int)
    p.add_argument("--theta", type=int)
    p.add_argument("--lists")
    p.add_argument("--witnesses")
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--coloring")
    p.add_argument("--max-diameter", type=int)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("color-tw", help="extend a precoloring on a bounded-treewidth graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--precoloring")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--w", type=int)
    p.set_defaults(fn=cmd_color_tw)

    p = sub.add_parser("color-torso", help="combine torso colorings along a decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--oracle", choices=["brute", "bipartite-apex"], required=True)
    p.add_argument("--apex-sets")
    p.add_argument("--p", type=int)
    p.add_argument("--guarantee", type=int, help="declared guarantee of the brute-force oracle")
    p.add_argument("--cap", type=int, default=1 << 20)
    p.set_defaults(fn=cmd_color_torso)

    p = sub.add_parser("brute", help="exhaustive minimum weak diameter")
    p.add_argument("--graph", required=True)
    p.add_argument("--lists", required=True)
    p.add_argument("--cap", type=int, default=1 << 20)
    p.set_defaults(fn=cmd_brute)

    p = sub.add_parser("gadget", help="build the bipartite list gadget over a host graph")
    p.add_argument("--host", required=True, help="petersen, c6, c8, cube or a graph JSON file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verdict", action="store_true", help="also run the exhaustive weak-diameter claim")
    p.add_argument("--cap", type=int, default=1 << 24)
    p.set_defaults(fn=cmd_gadget)

    p = sub.add_parser("grid", help="emit a triangular grid")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_grid)

    p = sub.add_parser("ktree", help="emit a random partial k-tree instance bundle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--palette", type=int, default=5)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(fn=cmd_ktree)

    p = sub.add_parser("bounds", help="evaluate a bound formula")
    p.add_argument("--formula", required=True,
                   choices=["all-centered", "add-centered", "fstar", "tw", "small-ext", "torso"])
    for name in ("k", "r", "n", "theta", "s", "eta", "w", "d", "p"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(fn=cmd_bounds)
    return ap


def _error_doc(kind: str, exc: Exception) -> dict:
    doc = {"error": kind, "message": str(exc)}
    for attr in ("pair", "distance", "position"):
        val = getattr(exc, attr, None)
        if val is not None:
            doc[attr] = list(val) if isinstance(val, tuple) else _measure(val) if attr == "distance" else val
    return doc


def run(argv: list[str] | None = None) -> tuple[int, dict, str]:
    """Parse and dispatch; returns (exit code, report, summary)."""
    a = build_parser().parse_args(argv)
    try:
        doc, summary, code = a.fn(a)
    except DocumentError as exc:
        doc, summary, code = _error_doc("io", exc), str(exc), EXIT_IO
    except (ContractError, EngineInvariantError) as exc:
        doc, summary, code = _error_doc("contract", exc), str(exc), EXIT_CONTRACT
    except PrecoloringError as exc:
        doc, summary, code = _error_doc("precoloring", exc), str(exc), EXIT_INVALID
    except TooLargeError as exc:
        doc, summary, code = {"error": "too large", "message": str(exc)}, str(exc), EXIT_INVALID
    except InputError as exc:
        doc, summary, code = _error_doc("invalid", exc), str(exc), EXIT_INVALID
    doc["exit_code"] = code
    return code, doc, summary


def main(argv: list[str] | None = None) -> int:
    code, doc, summary = run(argv)
    sys.stdout.write(io.dumps(doc) + "\n")
    sys.stderr.write(summary + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
