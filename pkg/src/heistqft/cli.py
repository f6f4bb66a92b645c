"""Command-line front end.

Every command prints one JSON document to stdout. Commands that read a graph
put ``k`` and ``graph_hash`` at the top level. Exit status is 0 on success,
1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coloring import count_colorings, enumerate_colorings
from .cyclo import CycNum, make_ring
from .errors import HeistError
from .heisenberg import (
    ColoringBasis,
    HeisenbergElement,
    parse_element,
    rep_matrix,
    trace_fixed,
    verify_cocycle,
    verify_external_edge_condition,
    verify_involution,
)
from .ribbon import CycleClass, MeridianSpace, RibbonGraph, cycle_basis, load_graph, surface_genus
from .skein import check_identities, fusion_coeff, half_twist, tetrahedron
from .verlinde import (
    brick_dims_mod0,
    brick_dims_mod2,
    element_closed_trace,
    graph_verlinde_number,
    spectral_brick_dims,
    verify_decomposition_props,
    verlinde_number,
)

SUITES = ("identities", "verlinde", "involution", "trace", "extedge", "cocycle", "brick", "decomp")

# full matrices are built only up to this dimension; larger graphs use the
# pattern-based evaluations alone
MATRIX_LIMIT = 20000


@dataclass
class RunConfig:
    command: str
    graph_path: str | None = None
    level: int | None = None
    element: str | None = None
    output: str = "json"
    suites: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# helpers


def _value_json(x: CycNum) -> dict:
    out = {"value": x.to_json()}
    if x.den == 1 and not any(x.num[1:]):
        out["integer"] = x.num[0]
    m = x.a_exponent()
    if m is not None:
        out["monomial"] = f"A^{m}"
    else:
        m = (-x).a_exponent()
        if m is not None:
            out["monomial"] = f"-A^{m}"
    return out


def _header(graph: RibbonGraph) -> dict:
    return {"k": graph.k, "graph_hash": graph.graph_hash()}


# ---------------------------------------------------------------------------
# verification suites


def _suite_identities(graph: RibbonGraph) -> dict:
    table = check_identities(graph.k)
    return {"passed": all(bad == 0 for _, bad in table.values()), "cases": {n: {"checked": c, "failed": b} for n, (c, b) in table.items()}}


def _suite_verlinde(graph: RibbonGraph) -> dict:
    count = count_colorings(graph)
    formula = graph_verlinde_number(graph)
    return {"passed": count == formula, "count": count, "formula": formula}


def _pairs(graph: RibbonGraph):
    basis = cycle_basis(graph)
    return basis + [a + b for a, b in itertools.combinations(basis, 2)]


def _suite_trace(graph: RibbonGraph) -> dict:
    space = MeridianSpace(graph)
    basis = ColoringBasis(graph) if count_colorings(graph) <= MATRIX_LIMIT else None
    mus = [space.zero()] + space.basis()
    checked = 0
    for lam in [CycleClass(0, graph.edge_ids)] + [l for l in _pairs(graph) if l]:
        for mu in mus:
            g = HeisenbergElement(0, mu, lam)
            got = trace_fixed(graph, g)
            want = element_closed_trace(g, space)
            checked += 1
            if got != want or (basis is not None and rep_matrix(basis, g).trace() != got):
                return {"passed": False, "checked": checked, "witness": g.literal()}
    return {"passed": True, "checked": checked, "diagonal_path": basis is not None}


def _suite_brick(graph: RibbonGraph) -> dict:
    if graph.k % 2:
        return {"passed": True, "skipped": "odd level"}
    table = spectral_brick_dims(graph)
    return {"passed": table.consistent, "closed": list(table.closed), "total": table.total}


def _suite_decomp(graph: RibbonGraph) -> dict:
    if graph.k % 2:
        return {"passed": True, "skipped": "odd level"}
    space = MeridianSpace(graph)
    checked = 0
    for lam in cycle_basis(graph):
        for mu in [space.zero()] + space.basis():
            rep = verify_decomposition_props(graph, lam, mu)
            checked += 1
            if not rep.passed:
                return {"passed": False, "checked": checked, "witness": rep.to_json()}
    return {"passed": True, "checked": checked}


def _report(fn: Callable) -> Callable[[RibbonGraph], dict]:
    def run(graph: RibbonGraph) -> dict:
        rep = fn(graph)
        return rep.to_json()

    return run


SUITE_FUNCS: dict[str, Callable[[RibbonGraph], dict]] = {
    "identities": _suite_identities,
    "verlinde": _suite_verlinde,
    "involution": _report(verify_involution),
    "trace": _suite_trace,
    "extedge": _report(verify_external_edge_condition),
    "cocycle": _report(verify_cocycle),
    "brick": _suite_brick,
    "decomp": _suite_decomp,
}


# ---------------------------------------------------------------------------
# commands


def _graph(cfg: RunConfig) -> RibbonGraph:
    if not cfg.graph_path:
        raise HeistError(f"{cfg.command} needs a graph file")
    try:
        return load_graph(cfg.graph_path, cfg.level)
    except HeistError as exc:
        raise type(exc)(f"{cfg.graph_path}: {exc}") from None


def cmd_validate(cfg: RunConfig) -> tuple[int, dict]:
    graph = _graph(cfg)
    space = MeridianSpace(graph)
    return 0, {
        **_header(graph),
        "valid": True,
        "vertices": len(graph.vertices),
        "edges": graph.n_edges,
        "boundary_edges": graph.n_boundary,
        "genus": graph.formal_genus(),
        "surface_genus": surface_genus(graph),
        "meridian_rank": space.rank,
        "cycle_rank": len(cycle_basis(graph)),
    }


def cmd_colorings(cfg: RunConfig) -> tuple[int, dict]:
    graph = _graph(cfg)
    out = {**_header(graph), "edge_ids": list(graph.edge_ids)}
    if cfg.extra.get("count"):
        out["count"] = count_colorings(graph)
    else:
        cols = enumerate_colorings(graph)
        out["count"] = len(cols)
        out["colorings"] = [list(j) for j in cols]
    return 0, out


def cmd_coeff(cfg: RunConfig) -> tuple[int, dict]:
    kind, args = cfg.extra["kind"], cfg.extra["args"]
    if cfg.level is None:
        raise HeistError("coeff needs --level")
    ring = make_ring(cfg.level)
    arity = {"fusion": 3, "tet": 6, "twist": 3}[kind]
    if len(args) != arity:
        raise HeistError(f"coeff {kind} takes {arity} colors, got {len(args)}")
    fn = {"fusion": fusion_coeff, "tet": tetrahedron, "twist": half_twist}[kind]
    return 0, {"k": cfg.level, "kind": kind, "args": args, **_value_json(fn(ring, *args))}


def cmd_matrix(cfg: RunConfig) -> tuple[int, dict]:
    graph = _graph(cfg)
    g = parse_element(graph, cfg.element or "")
    basis = ColoringBasis(graph)
    mat = rep_matrix(basis, g)
    if cfg.extra.get("rescaled"):
        mat = mat.rescaled(basis)
    return 0, {**_header(graph), "element": g.literal(), "rescaled": bool(cfg.extra.get("rescaled")), **mat.to_json()}


def cmd_trace(cfg: RunConfig) -> tuple[int, dict]:
    graph = _graph(cfg)
    space = MeridianSpace(graph)
    g = parse_element(graph, cfg.element or "", space)
    fixed = trace_fixed(graph, g)
    closed = element_closed_trace(g, space)
    out = {**_header(graph), "element": g.literal(), "trace": _value_json(fixed), "closed": _value_json(closed)}
    equal = fixed == closed
    if count_colorings(graph) <= MATRIX_LIMIT:
        diag = rep_matrix(ColoringBasis(graph), g).trace()
        out["diagonal"] = _value_json(diag)
        equal = equal and diag == fixed
    out["equal"] = equal
    return 0, out


def cmd_verlinde(cfg: RunConfig) -> tuple[int, dict]:
    g, n, k = cfg.extra["genus"], cfg.extra["punctures"], cfg.level
    if k is None:
        raise HeistError("verlinde needs --level")
    colors = cfg.extra["colors"]
    d = verlinde_number(g, n, k, colors)
    out = {"genus": g, "punctures": n, "k": k, "colors": colors, "dim": d}
    if k % 4 == 0:
        out["bricks"] = dict(zip(("d0", "d1"), brick_dims_mod0(g, n, k, colors)))
    elif k % 4 == 2:
        out["bricks"] = dict(zip(("d+", "d-"), brick_dims_mod2(g, n, k, colors)))
    return 0, out


def cmd_brick(cfg: RunConfig) -> tuple[int, dict]:
    graph = _graph(cfg)
    if graph.k % 2:
        raise HeistError("brick decomposition needs an even level")
    table = spectral_brick_dims(graph)
    return (0 if table.consistent else 1), {**_header(graph), **table.to_json()}


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    graph = _graph(cfg)
    results = {name: SUITE_FUNCS[name](graph) for name in cfg.suites}
    passed = all(r["passed"] for r in results.values())
    return (0 if passed else 1), {**_header(graph), "suites": results, "passed": passed}


COMMANDS = {
    "validate": cmd_validate,
    "colorings": cmd_colorings,
    "coeff": cmd_coeff,
    "matrix": cmd_matrix,
    "trace": cmd_trace,
    "verlinde": cmd_verlinde,
    "brick": cmd_brick,
    "verify": cmd_verify,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        status, payload = COMMANDS[cfg.command](cfg)
    except (HeistError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    if cfg.output == "text":
        for key, value in payload.items():
            print(f"{key}: {json.dumps(value, sort_keys=True)}", file=out)
    else:
        print(json.dumps(payload, sort_keys=True), file=out)
    return status


# ---------------------------------------------------------------------------
# argument parsing


def _colors(text: str) -> list[int]:
    return [int(c) for c in text.split(",") if c.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heistqft", description="Heisenberg action on TQFT modules of ribbon graphs.")
    p.add_argument("--output", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph")
        sp.add_argument("--level", type=int, default=None, help="override the level stored in the file")
        return sp

    graph_cmd("validate", "check a graph file and report its invariants")
    sp = graph_cmd("colorings", "list admissible colorings")
    sp.add_argument("--count", action="store_true", help="print only the number")

    sp = sub.add_parser("coeff", help="evaluate a recoupling coefficient")
    sp.add_argument("kind", choices=("fusion", "tet", "twist"))
    sp.add_argument("colors", type=int, nargs="+")
    sp.add_argument("--level", type=int, required=True)

    sp = graph_cmd("matrix", "matrix of a Heisenberg element")
    sp.add_argument("--element", default="")
    sp.add_argument("--rescaled", action="store_true")

    sp = graph_cmd("trace", "trace of a Heisenberg element with the closed form")
    sp.add_argument("--element", default="")

    sp = sub.add_parser("verlinde", help="Verlinde count and brick dimensions")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--punctures", type=int, default=0)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--colors", type=_colors, default=[])

    graph_cmd("brick", "eigenspace dimensions of the Heisenberg action")

    sp = graph_cmd("verify", "run verification suites")
    sp.add_argument("--suite", action="append", choices=SUITES + ("all",), default=None)
    return p


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, getattr(args, "graph", None), getattr(args, "level", None), output=args.output)
    if args.command == "colorings":
        cfg.extra["count"] = args.count
    elif args.command == "coeff":
        cfg.extra.update(kind=args.kind, args=args.colors)
    elif args.command in ("matrix", "trace"):
        cfg.element = args.element
        cfg.extra["rescaled"] = getattr(args, "rescaled", False)
    elif args.command == "verlinde":
        cfg.extra.update(genus=args.genus, punctures=args.punctures, colors=args.colors)
    elif args.command == "verify":
        chosen = args.suite or ["all"]
        cfg.suites = SUITES if "all" in chosen else tuple(dict.fromkeys(chosen))
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
