"""Certificate checks, written independently of the solvers.

Checks go pair by pair.  For an :class:`IntersectionGraph` with
``geometric=True`` adjacency is recomputed from the subspaces themselves
rather than read from the bitsets.
"""

from __future__ import annotations

from typing import Callable

from .graph import BitGraph, IntersectionGraph
from .linalg import intersection_dim
from .solvers import Certificate


def _adjacency(g: BitGraph, geometric: bool) -> Callable[[int, int], bool]:
    if geometric:
        if not isinstance(g, IntersectionGraph):
            raise TypeError("geometric checks need an IntersectionGraph")
        return lambda u, v: u != v and intersection_dim(g.field, g.vertices[u], g.vertices[v]) >= 1
    return g.has_edge


def _valid_ids(g: BitGraph, members) -> bool:
    return len(set(members)) == len(members) and all(0 <= v < g.order for v in members)


def verify_clique(g: BitGraph, members, geometric: bool = False) -> bool:
    if not _valid_ids(g, members):
        return False
    adj = _adjacency(g, geometric)
    return all(adj(u, v) for i, u in enumerate(members) for v in members[i + 1 :])


def verify_independent_set(g: BitGraph, members, geometric: bool = False) -> bool:
    if not _valid_ids(g, members):
        return False
    adj = _adjacency(g, geometric)
    return not any(adj(u, v) for i, u in enumerate(members) for v in members[i + 1 :])


def verify_coloring(g: BitGraph, colors, geometric: bool = False) -> bool:
    if len(colors) != g.order or any(c is None or c < 0 for c in colors):
        return False
    adj = _adjacency(g, geometric)
    return all(
        colors[u] != colors[v] for u in range(g.order) for v in range(u + 1, g.order) if adj(u, v)
    )


def verify_dominating_set(g: BitGraph, members, geometric: bool = False) -> bool:
    if not _valid_ids(g, members):
        return False
    adj = _adjacency(g, geometric)
    chosen = set(members)
    return all(v in chosen or any(adj(v, s) for s in members) for v in range(g.order))


def verify_matching(g: IntersectionGraph, pairs, t: int) -> bool:
    """Pairs join A_t to A_{n-t}, meet only in 0, and share no endpoint."""
    ends = [v for pair in pairs for v in pair]
    if len(set(ends)) != len(ends):
        return False
    for a, b in pairs:
        if g.dim_of(a) != t or g.dim_of(b) != g.n - t:
            return False
        if intersection_dim(g.field, g.vertices[a], g.vertices[b]) != 0:
            return False
    return True


def verify_certificate(g: BitGraph, cert: Certificate, geometric: bool = False) -> bool:
    """Check ``cert`` against ``g`` and that its recorded value matches its content."""
    if cert.kind == "clique":
        ok = verify_clique(g, cert.members, geometric) and cert.value == len(cert.members)
    elif cert.kind == "independent-set":
        ok = verify_independent_set(g, cert.members, geometric) and cert.value == len(cert.members)
    elif cert.kind == "dominating-set":
        ok = verify_dominating_set(g, cert.members, geometric) and cert.value == len(cert.members)
    elif cert.kind == "coloring":
        ok = verify_coloring(g, cert.members, geometric) and cert.value == len(set(cert.members))
    else:
        raise ValueError(f"cannot verify certificate kind {cert.kind!r} without a bipartite context")
    return ok
