"""Command line entry point.

Commands
--------
build      build G(V) and write the binary cache
verify     compare predicted, constructed and solved invariants; exit 1 on mismatch
census     exact or bounded clique numbers for even n
invariant  run one solver
export     write DOT / JSON / binary cache

Examples
--------
  subspace-graph build -n 4 -p 2 --cache g42.qigr
  subspace-graph verify -n 3 -p 2 --json report.json
  subspace-graph census --n-range 4-6 --q-set 2,3
  subspace-graph invariant domination -n 3 -q 3
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import __version__, solvers
from .counting import predicted_invariants, vertex_count
from .gf import DEFAULT_MAX_Q, FieldError, FieldSpec, build_field, factor_prime_power
from .graph import (
    DEFAULT_MAX_VERTICES,
    CacheFormatError,
    IntersectionGraph,
    VertexCapExceeded,
    build_graph,
    read_cache,
    write_cache,
    write_dot,
    write_json,
)
from .report import build_report, exit_code, format_table

log = logging.getLogger("subspace_graph")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

SOLVERS = {
    "clique": solvers.max_clique,
    "chromatic": solvers.chromatic_number,
    "domination": solvers.min_dominating_set,
    "independence": solvers.max_independent_set,
}


class UsageError(Exception):
    pass


def _load_config(path: str | None) -> dict:
    """Flatten a JSON config into dotted keys (``{"field": {"p": 2}}`` -> ``{"field.p": 2}``)."""
    if not path:
        return {}
    with open(path) as fh:
        raw = json.load(fh)
    flat: dict = {}

    def walk(prefix, obj):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else k
            if isinstance(v, dict):
                walk(key, v)
            else:
                flat[key] = v

    walk("", raw)
    return flat


def _parse_modulus(text) -> list[int] | None:
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return [int(c) for c in text]
    try:
        return [int(c) for c in str(text).split(",")]
    except ValueError:
        raise UsageError(f"bad modulus {text!r}; expected comma-separated coefficients") from None


def resolve_field(args, cfg: dict) -> FieldSpec:
    p = args.p if args.p is not None else cfg.get("field.p")
    e = args.e if args.e is not None else cfg.get("field.e")
    modulus = _parse_modulus(args.modulus if args.modulus is not None else cfg.get("field.modulus"))
    max_q = int(cfg.get("field.max_q", DEFAULT_MAX_Q))
    if args.q is not None:
        qp, qe = factor_prime_power(args.q)
        if (p is not None and int(p) != qp) or (e is not None and int(e) != qe):
            raise UsageError(f"-q {args.q} disagrees with -p/-e")
        p, e = qp, qe
    if p is None:
        raise UsageError("field not given: use -p <prime> [-e <degree>] or -q <prime power>")
    return build_field(int(p), int(e or 1), modulus, max_q=max_q)


def _setting(args, cfg, name, key, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def obtain_graph(args, cfg: dict) -> IntersectionGraph:
    field = resolve_field(args, cfg)
    n = _setting(args, cfg, "n", "graph.n", None)
    if n is None:
        raise UsageError("ambient dimension -n is required")
    n = int(n)
    if n < 2:
        raise UsageError(f"need n >= 2, got {n}")
    cap = int(_setting(args, cfg, "max_vertices", "graph.max_vertices", DEFAULT_MAX_VERTICES))
    cache = getattr(args, "cache", None)
    if cache and os.path.exists(cache) and args.command != "build":
        g = read_cache(cache, field)
        if g.n != n:
            raise UsageError(f"cache {cache} holds n={g.n}, requested n={n}")
        log.info("loaded %s", cache)
        return g
    g = build_graph(field, n, max_vertices=cap, parallel=bool(_setting(args, cfg, "parallel", "parallel", False)))
    if cache:
        write_cache(g, cache)
    return g


def _budget(args, cfg, default: float):
    return (
        float(_setting(args, cfg, "budget", "solver.budget", default)),
        _setting(args, cfg, "max_nodes", "solver.max_nodes", None),
    )


def cmd_build(args, cfg) -> int:
    if not args.cache:
        args.cache = f"G_n{args.n}_q{resolve_field(args, cfg).q}.qigr"
    g = obtain_graph(args, cfg)
    s = g.stats()
    print(f"wrote {args.cache}: {s.vertices} vertices, {s.edges} edges, "
          f"degrees {s.min_degree}..{s.max_degree}, connected={s.connected}")
    return EXIT_OK


def cmd_export(args, cfg) -> int:
    g = obtain_graph(args, cfg)
    if not (args.dot or args.json or args.cache):
        raise UsageError("export needs at least one of --dot, --json, --cache")
    if args.dot:
        write_dot(g, args.dot)
    if args.json:
        write_json(g, args.json)
    print(f"exported {g.order} vertices, {g.edge_count()} edges")
    return EXIT_OK


def _config_echo(args, field: FieldSpec, budget, max_nodes) -> dict:
    return {
        "n": args.n,
        "p": field.p,
        "e": field.e,
        "modulus": list(field.modulus) if field.e > 1 else None,
        "budget": budget,
        "max_nodes": max_nodes,
        "max_vertices": args.max_vertices if args.max_vertices is not None else DEFAULT_MAX_VERTICES,
        "parallel": bool(args.parallel),
    }


def cmd_verify(args, cfg) -> int:
    g = obtain_graph(args, cfg)
    budget, max_nodes = _budget(args, cfg, 60.0)
    report = build_report(g, budget, max_nodes, config=_config_echo(args, g.field, budget, max_nodes))
    print(format_table(report))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    return exit_code(report)


def cmd_invariant(args, cfg) -> int:
    g = obtain_graph(args, cfg)
    budget, max_nodes = _budget(args, cfg, 60.0)
    res = SOLVERS[args.name](g, solvers.Budget(budget, max_nodes))
    shown = res.value if res.value is not None else f"[{res.lo}, {res.hi}]"
    print(f"{args.name}: {shown} ({res.status}, {res.nodes} nodes, {res.elapsed:.2f}s)")
    members = res.certificate.members
    if res.certificate.kind != "coloring":
        print("certificate:", " ".join(g.label(v) for v in members))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"invariant": args.name, "n": g.n, "q": g.q, **res.as_dict()}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def parse_range(text: str) -> list[int]:
    text = text.strip()
    for sep in ("..", "-", ":"):
        if sep in text:
            a, b = text.split(sep, 1)
            return list(range(int(a), int(b) + 1))
    return [int(text)]


def cmd_census(args, cfg) -> int:
    budget, max_nodes = _budget(args, cfg, 600.0)
    cap = args.max_vertices if args.max_vertices is not None else DEFAULT_MAX_VERTICES
    ns = [n for n in parse_range(args.n_range) if n % 2 == 0 and n >= 4]
    qs = [int(x) for x in args.q_set.split(",") if x.strip()]
    rows = []
    for n in ns:
        for q in qs:
            pred = predicted_invariants(n, q)
            row = {"n": n, "q": q, "lo": pred.omega_even_lo, "hi": pred.omega_even_hi}
            need = vertex_count(n, q)
            if need > cap:
                row.update(status="skipped", reason=f"needs {need} vertices > cap {cap}")
            else:
                p, e = factor_prime_power(q)
                g = build_graph(build_field(p, e, max_q=q), n, max_vertices=cap)
                res = solvers.max_clique(g, solvers.Budget(budget, max_nodes))
                row.update(status=solvers.PROVEN if res.status == solvers.PROVEN else solvers.BOUNDED, omega=res.value, omega_lo=res.lo, omega_hi=res.hi,
                           nodes=res.nodes, elapsed=round(res.elapsed, 3))
            rows.append(row)
    print(f"{'n':>3}{'q':>4}{'lo':>10}{'omega':>16}{'hi':>10}  status")
    for r in rows:
        if r["status"] == "skipped":
            w = "-"
        elif r["omega"] is not None:
            w = str(r["omega"])
        else:
            w = f"[{r['omega_lo']},{r['omega_hi']}]"
        print(f"{r['n']:>3}{r['q']:>4}{r['lo']:>10}{w:>16}{r['hi']:>10}  {r['status']}")
    if args.out and rows:
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        with open(args.out, "a") as fh:
            for r in rows:
                fh.write(json.dumps({"recorded": stamp, "budget": budget, **r}) + "\n")
    return EXIT_OK


def _field_args(sp: argparse.ArgumentParser, need_n: bool = True) -> None:
    if need_n:
        sp.add_argument("-n", type=int, help="ambient dimension")
    sp.add_argument("-p", type=int, help="field characteristic")
    sp.add_argument("-e", type=int, help="extension degree (default 1)")
    sp.add_argument("--modulus", help="irreducible modulus, base-p coefficients c0,c1,...,ce")
    sp.add_argument("-q", type=int, help="field order; picks the built-in modulus")
    sp.add_argument("--max-vertices", type=int, dest="max_vertices")
    sp.add_argument("--cache", help="binary graph cache (read if present, else written)")
    sp.add_argument("--parallel", action="store_true", default=None, help="build adjacency in worker processes")
    sp.add_argument("--config", help="JSON config file (keys like field.p, solver.budget)")


def _solver_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--budget", type=float, help="seconds per solver call")
    sp.add_argument("--max-nodes", type=int, dest="max_nodes", help="branch-and-bound node cap")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subspace-graph", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="build G(V) and write the binary cache")
    _field_args(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="check every invariant formula")
    _field_args(sp)
    _solver_args(sp)
    sp.add_argument("--json", help="write the JSON report here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("census", help="clique numbers for even n")
    sp.add_argument("--n-range", default="4", help="e.g. 4, 4-8")
    sp.add_argument("--q-set", default="2", help="comma-separated field orders")
    sp.add_argument("--max-vertices", type=int, dest="max_vertices")
    sp.add_argument("--out", default="census.jsonl", help="cumulative JSON-lines result file")
    sp.add_argument("--config")
    _solver_args(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("invariant", help="run a single solver")
    sp.add_argument("name", choices=sorted(SOLVERS))
    _field_args(sp)
    _solver_args(sp)
    sp.add_argument("--json", help="write the result here")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("export", help="write DOT / JSON / cache")
    _field_args(sp)
    sp.add_argument("--dot")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = _load_config(getattr(args, "config", None))
        if getattr(args, "n", None) is None and "graph.n" in cfg:
            args.n = int(cfg["graph.n"])
        return args.func(args, cfg)
    except VertexCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, FieldError, CacheFormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
