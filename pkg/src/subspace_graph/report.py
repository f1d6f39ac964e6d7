"""Run formulas, constructions and solvers on one instance and compare them."""

from __future__ import annotations

import time
from typing import Callable

from . import __version__
from . import constructions as cons
from . import solvers
from .counting import FORMULAS, degree_formula, middle_degree, predicted_invariants
from .graph import ConsistencyError, IntersectionGraph, disjointness_bipartite, induced_middle
from .verify import verify_certificate

MATCH = "match"
WITHIN = "within-bounds"
MISMATCH = "MISMATCH"
SKIPPED = "skipped"


def _timed(fn: Callable, timing: dict, key: str):
    t0 = time.monotonic()
    try:
        return fn()
    finally:
        timing[key] = round(time.monotonic() - t0, 6)


def _solver_entry(g: IntersectionGraph, res: solvers.SolveResult) -> dict:
    ok = verify_certificate(g, res.certificate)
    res.certificate.verified = ok
    return {
        "value": res.value,
        "lo": res.lo,
        "hi": res.hi,
        "status": res.status,
        "nodes": res.nodes,
        "certificate_value": res.certificate.value,
        "certificate_verified": ok,
        "provenance": "solver",
    }


def _construction_entry(cert, provenance: str) -> dict:
    return {"kind": cert.kind, "value": cert.value, "verified": bool(cert.verified), "provenance": provenance}


def _exact_verdict(predicted: int, solver: dict | None, pinned: bool) -> tuple[str, str | None]:
    if solver is not None:
        if not solver["certificate_verified"]:
            return MISMATCH, "solver certificate failed verification"
        if solver["status"] == solvers.PROVEN:
            if solver["value"] == predicted:
                return MATCH, None
            return MISMATCH, f"solver proved {solver['value']}"
        if not solver["lo"] <= predicted <= solver["hi"]:
            return MISMATCH, f"solver bounds [{solver['lo']}, {solver['hi']}] exclude prediction"
    if pinned:
        return MATCH, "pinned by constructed clique and colouring"
    return WITHIN, "solver did not finish; prediction inside solver bounds"


def _range_verdict(lo: int, hi: int, solver: dict | None) -> tuple[str, str | None]:
    if solver is None:
        return WITHIN, None
    if not solver["certificate_verified"]:
        return MISMATCH, "solver certificate failed verification"
    if solver["hi"] < lo or solver["lo"] > hi:
        return MISMATCH, f"solver bounds [{solver['lo']}, {solver['hi']}] outside [{lo}, {hi}]"
    return WITHIN, None


def build_report(g: IntersectionGraph, budget: float | None = 60.0, max_nodes: int | None = None, config: dict | None = None) -> dict:
    """Compare predicted, constructed and solved values of ω, χ, γ, α on ``g``."""
    n, q = g.n, g.q
    timing: dict = {}
    t_start = time.monotonic()
    pred = predicted_invariants(n, q)
    budget_obj = solvers.Budget(budget, max_nodes)
    checks: list[dict] = []
    rows: list[dict] = []

    stats = g.stats()
    connected = stats.connected
    checks.append({
        "name": "connectivity",
        "predicted": n >= 3,
        "observed": connected,
        "verdict": MATCH if connected == (n >= 3) else MISMATCH,
        "provenance": "formula: connected iff n >= 3; observed by breadth-first search",
    })

    bad_deg = [g.label(v) for v in range(g.order) if g.degree(v) != degree_formula(n, g.dim_of(v), q)]
    checks.append({
        "name": "degree_formula",
        "formula": FORMULAS["degree"],
        "vertices_checked": g.order,
        "failures": bad_deg[:10],
        "verdict": MISMATCH if bad_deg else MATCH,
        "provenance": "formula vs adjacency bitsets",
    })

    for t in range(1, (n + 1) // 2):
        if 2 * t == n:
            continue
        try:
            b = disjointness_bipartite(g, t)
            m = solvers.hopcroft_karp(b)
            checks.append({
                "name": f"disjointness_matching_t{t}",
                "formula": FORMULAS["disjoint_regularity"],
                "predicted_degree": q ** (t * (n - t)),
                "observed_degree": b.degree,
                "side": len(b.left),
                "matching": m.value,
                "verdict": MATCH if m.value == len(b.left) else MISMATCH,
                "provenance": "Hopcroft-Karp",
            })
        except ConsistencyError as exc:
            checks.append({"name": f"disjointness_matching_t{t}", "verdict": MISMATCH, "reason": str(exc)})

    if n % 2 == 0 and n >= 4:
        g1, _ = induced_middle(g)
        mid_deg = set(g1.degrees())
        want = middle_degree(n, q)
        checks.append({
            "name": "middle_class_subgraph",
            "formula": FORMULAS["middle_degree"],
            "predicted_degree": want,
            "observed_degrees": sorted(mid_deg),
            "connected": g1.is_connected(),
            "verdict": MATCH if mid_deg == {want} else MISMATCH,
            "provenance": "induced subgraph on the middle dimension class",
        })

    # --- constructions
    cons_out: dict = {}
    t0 = time.monotonic()

    def attempt(key, fn):
        try:
            cons_out[key] = fn()
        except ConsistencyError as exc:
            cons_out[key] = exc

    if n % 2 == 1:
        attempt("clique", lambda: cons.half_dim_clique(g))
        attempt("coloring", lambda: cons.matching_coloring_odd(g))
    elif n >= 4:
        attempt("clique", lambda: cons.even_clique_lower(g))
        attempt("coloring", lambda: cons.even_coloring_upper(g))
    if n >= 3:
        attempt("dominating", lambda: cons.hyperplane_dominating_set(g))
    attempt("independent", lambda: cons.lines_independent_set(g))
    timing["constructions"] = round(time.monotonic() - t0, 6)

    # --- solvers
    stime: dict = {}
    res_clique = _timed(lambda: solvers.max_clique(g, budget_obj), stime, "clique")
    res_chi = _timed(lambda: solvers.chromatic_number(g, budget_obj), stime, "chromatic")
    res_dom = _timed(lambda: solvers.min_dominating_set(g, budget_obj), stime, "domination")
    res_ind = _timed(lambda: solvers.max_independent_set(g, budget_obj), stime, "independence")
    timing["solvers"] = stime
    s_clique = _solver_entry(g, res_clique)
    s_chi = _solver_entry(g, res_chi)
    s_dom = _solver_entry(g, res_dom)
    s_ind = _solver_entry(g, res_ind)

    def constructed(key, provenance):
        c = cons_out.get(key)
        if c is None:
            return None
        if isinstance(c, Exception):
            return {"value": None, "verified": False, "provenance": provenance, "error": str(c)}
        cert = c.certificate if isinstance(c, cons.MatchingColoring) else c
        entry = _construction_entry(cert, provenance)
        if isinstance(c, cons.MatchingColoring):
            entry["matching_colors"] = c.low_colors
            if c.middle_method:
                entry["middle_colors"] = c.middle_colors
                entry["middle_method"] = c.middle_method
            if c.notes:
                entry["notes"] = c.notes
        return entry

    def broken(entry):
        return entry is not None and not entry["verified"]

    c_clique = constructed("clique", "construction: all subspaces above half dimension" if n % 2 else
                           "construction: above half dimension plus middle subspaces through a fixed line")
    c_col = constructed("coloring", "construction: perfect matchings of disjointness graphs"
                        + ("" if n % 2 else " plus Brooks colouring of the middle class"))
    c_dom = constructed("dominating", "construction: hyperplanes through a fixed (n-2)-subspace")
    c_ind = constructed("independent", "construction: all 1-dimensional subspaces")

    if n == 2:
        reason = "edge case n=2: graph is edgeless and the even-n bounds degenerate (lo > hi)"
        for name, sym, s in (("omega", "ω", s_clique), ("chi", "χ", s_chi)):
            rows.append({
                "name": name, "symbol": sym,
                "predicted": {"lo": pred.omega_even_lo, "hi": pred.omega_even_hi},
                "formula": {"lo": FORMULAS["omega_even_lo"], "hi": FORMULAS["omega_even_hi"]},
                "constructed": None, "solver": s, "verdict": SKIPPED, "reason": reason,
            })
    elif n % 2 == 1:
        w = pred.omega_odd
        pinned = (c_clique is not None and c_col is not None and c_clique["verified"] and c_col["verified"]
                  and c_clique["value"] == w == c_col["value"])
        for name, sym, c, s in (("omega", "ω", c_clique, s_clique), ("chi", "χ", c_col, s_chi)):
            if broken(c):
                verdict, reason = MISMATCH, "construction failed verification"
            elif c is not None and c["value"] != w:
                verdict, reason = MISMATCH, f"construction has value {c['value']}"
            else:
                verdict, reason = _exact_verdict(w, s, pinned)
            rows.append({
                "name": name, "symbol": sym, "predicted": {"value": w},
                "formula": FORMULAS["omega_odd"], "constructed": c, "solver": s,
                "verdict": verdict, "reason": reason,
            })
    else:
        lo, hi = pred.omega_even_lo, pred.omega_even_hi
        for name, sym, c, s in (("omega", "ω", c_clique, s_clique), ("chi", "χ", c_col, s_chi)):
            if broken(c):
                verdict, reason = MISMATCH, "construction failed verification"
            elif name == "omega" and c is not None and c["value"] != lo:
                verdict, reason = MISMATCH, f"constructed clique has {c['value']} vertices, expected {lo}"
            elif name == "chi" and c is not None and c["value"] > hi:
                verdict, reason = MISMATCH, f"constructed colouring uses {c['value']} > {hi} colours"
            else:
                verdict, reason = _range_verdict(lo, hi, s)
            rows.append({
                "name": name, "symbol": sym, "predicted": {"lo": lo, "hi": hi},
                "formula": {"lo": FORMULAS["omega_even_lo"], "hi": FORMULAS["omega_even_hi"]},
                "constructed": c, "solver": s, "verdict": verdict, "reason": reason,
            })

    for name, sym, value, formula, c, s in (
        ("gamma", "γ", pred.gamma, FORMULAS["gamma"], c_dom, s_dom),
        ("alpha", "α", pred.alpha, FORMULAS["alpha"], c_ind, s_ind),
    ):
        if broken(c):
            verdict, reason = MISMATCH, "construction failed verification"
        elif c is not None and c["value"] != value:
            verdict, reason = MISMATCH, f"construction has value {c['value']}"
        else:
            verdict, reason = _exact_verdict(value, s, pinned=False)
            if n == 2:
                reason = "edge case n=2: graph is edgeless"
        rows.append({
            "name": name, "symbol": sym, "predicted": {"value": value}, "formula": formula,
            "constructed": c, "solver": s, "verdict": verdict, "reason": reason,
        })

    if c_dom is not None and c_dom["verified"]:
        checks.append({
            "name": "hyperplane_union_covers_space",
            "vectors_checked": q**n,
            "verdict": MATCH,
            "provenance": "membership test of every vector",
        })
    if res_dom.status == solvers.PROVEN:
        checks.append({
            "name": "no_dominating_set_of_size_q",
            "observed_minimum": res_dom.value,
            "verdict": MATCH if res_dom.value > q else MISMATCH,
            "provenance": "exhaustive domination search",
        })
    checks.append({
        "name": "clique_at_most_chromatic",
        "clique_lo": res_clique.lo,
        "chromatic_hi": res_chi.hi,
        "verdict": MATCH if res_clique.lo <= res_chi.hi else MISMATCH,
        "provenance": "solver bounds",
    })

    timing["total"] = round(time.monotonic() - t_start, 6)
    all_verdicts = [r["verdict"] for r in rows] + [c["verdict"] for c in checks]
    return {
        "tool": "subspace-graph",
        "version": __version__,
        "config": dict(config or {}),
        "instance": {
            "n": n, "p": g.field.p, "e": g.field.e, "q": q,
            "modulus": list(g.field.modulus) if g.field.e > 1 else None,
            "field": g.field.describe(),
        },
        "edge_case": pred.edge_case,
        "graph": stats.as_dict(),
        "predicted": pred.as_dict(),
        "invariants": rows,
        "checks": checks,
        "verdict": MISMATCH if MISMATCH in all_verdicts else "ok",
        "timing": timing,
    }


def exit_code(report: dict) -> int:
    return 1 if report["verdict"] == MISMATCH else 0


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def format_table(report: dict) -> str:
    inst = report["instance"]
    lines = [f"G(V), V = GF({inst['q']})^{inst['n']} [{inst['field']}]: {report['graph']['vertices']} vertices, "
             f"{report['graph']['edges']} edges, connected={report['graph']['connected']}"]
    if report["edge_case"]:
        lines.append("  (edge case n=2)")
    lines.append(f"{'inv':<6}{'predicted':>14}{'constructed':>13}{'solver':>16}  verdict")
    for r in report["invariants"]:
        p = r["predicted"]
        pstr = str(p["value"]) if "value" in p else f"[{p['lo']},{p['hi']}]"
        c = r["constructed"]
        cstr = "-" if c is None else str(c["value"]) + ("" if c["verified"] else "!")
        s = r["solver"]
        if s is None:
            sstr = "-"
        elif s["status"] == solvers.PROVEN:
            sstr = str(s["value"])
        else:
            sstr = f"[{s['lo']},{s['hi']}]?"
        line = f"{r['name']:<6}{pstr:>14}{cstr:>13}{sstr:>16}  {r['verdict']}"
        if r.get("reason") and r["verdict"] != MATCH:
            line += f" ({r['reason']})"
        lines.append(line)
    for c in report["checks"]:
        lines.append(f"check {c['name']}: {c['verdict']}")
    lines.append(f"overall: {report['verdict']}")
    return "\n".join(lines)
