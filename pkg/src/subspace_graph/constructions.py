"""Explicit cliques, colourings, dominating sets and independent sets of G(V).

Each builder checks its own output and raises ConsistencyError if the
object is not what it should be.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .counting import gaussian_binomial
from .graph import ConsistencyError, IntersectionGraph, disjointness_bipartite, induced_middle
from .linalg import Subspace, all_vectors, contains, is_subspace_of
from .solvers import BrooksPreconditionError, Certificate, brooks_coloring, dsatur_coloring, hopcroft_karp
from .verify import verify_certificate, verify_matching


@dataclass
class MatchingColoring:
    """Colouring built from perfect matchings of the disjointness graphs.

    Vertices below the middle dimension keep their own id as colour; a
    vertex of dimension n - t takes the colour of its partner in
    ``matchings[t]``.  For even n the middle class gets colours offset by
    the vertex count.
    """

    matchings: dict[int, list[tuple[int, int]]]
    colors: list[int]
    low_colors: int
    middle_colors: int = 0
    middle_method: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    @property
    def certificate(self) -> Certificate:
        return Certificate("coloring", list(self.colors), self.color_count, True)


def _checked(g: IntersectionGraph, cert: Certificate) -> Certificate:
    if not verify_certificate(g, cert, geometric=True):
        raise ConsistencyError(f"constructed {cert.kind} of size {cert.value} does not verify")
    cert.verified = True
    return cert


def half_dim_clique(g: IntersectionGraph) -> Certificate:
    """All vertices of dimension above n/2 (n odd)."""
    if g.n % 2 == 0:
        raise ValueError(f"n = {g.n} is even")
    members = [v for v in range(g.order) if 2 * g.dim_of(v) > g.n]
    return _checked(g, Certificate("clique", members, len(members)))


def _matched_colors(g: IntersectionGraph, ts) -> tuple[dict[int, list[tuple[int, int]]], dict[int, int]]:
    matchings = {}
    colors = {}
    for t in ts:
        b = disjointness_bipartite(g, t)
        m = hopcroft_karp(b).members
        if len(m) != len(b.left) or not verify_matching(g, m, t):
            raise ConsistencyError(f"disjointness graph t={t} lacks a verified perfect matching")
        matchings[t] = m
        for low, high in m:
            colors[low] = low
            colors[high] = low
    return matchings, colors


def matching_coloring_odd(g: IntersectionGraph) -> MatchingColoring:
    if g.n % 2 == 0 or g.n < 3:
        raise ValueError(f"need odd n >= 3, got {g.n}")
    matchings, colors = _matched_colors(g, range(1, g.n // 2 + 1))
    mc = MatchingColoring(matchings, [colors[v] for v in range(g.order)], low_colors=len(set(colors.values())))
    _checked(g, mc.certificate)
    return mc


def even_clique_lower(g: IntersectionGraph, line: Subspace | int | None = None) -> Certificate:
    """Everything above dimension n/2 plus the middle subspaces through one fixed line."""
    if g.n % 2 or g.n < 4:
        raise ValueError(f"need even n >= 4, got {g.n}")
    if line is None:
        line = g.vertices[g.dim_offsets[1]]
    elif isinstance(line, int):
        line = g.vertices[line]
    if line.dim != 1:
        raise ValueError(f"expected a 1-dimensional subspace, got dimension {line.dim}")
    h = g.n // 2
    members = [v for v in range(g.order) if g.dim_of(v) > h]
    members += [v for v in g.dim_class(h) if is_subspace_of(g.field, line, g.vertices[v])]
    return _checked(g, Certificate("clique", sorted(members), len(members)))


def even_coloring_upper(g: IntersectionGraph) -> MatchingColoring:
    """Matching colouring off the middle class, Brooks colouring (fresh palette) on it."""
    if g.n % 2 or g.n < 4:
        raise ValueError(f"need even n >= 4, got {g.n}")
    h = g.n // 2
    matchings, colors = _matched_colors(g, range(1, h))
    low = len(set(colors.values()))
    g1, _ = induced_middle(g)
    notes = []
    try:
        if not g1.is_connected():
            raise BrooksPreconditionError("disconnected")
        mid = brooks_coloring(g1)
        method = "brooks"
    except BrooksPreconditionError as exc:
        notes.append(f"middle class fails Brooks hypotheses ({exc.hypothesis}); used DSATUR")
        mid = dsatur_coloring(g1)
        method = "dsatur"
    for local, v in enumerate(g1.ids):
        colors[v] = g.order + mid.members[local]
    mc = MatchingColoring(
        matchings,
        [colors[v] for v in range(g.order)],
        low_colors=low,
        middle_colors=mid.value,
        middle_method=method,
        notes=notes,
    )
    _checked(g, mc.certificate)
    return mc


def hyperplane_dominating_set(g: IntersectionGraph, w: Subspace | int | None = None) -> Certificate:
    """The q+1 hyperplanes through a fixed (n-2)-dimensional subspace; they cover every vector of V."""
    if g.n < 3:
        raise ValueError(f"need n >= 3, got {g.n}")
    if w is None:
        w = g.vertices[g.dim_offsets[g.n - 2]]
    elif isinstance(w, int):
        w = g.vertices[w]
    if w.dim != g.n - 2:
        raise ValueError(f"expected dimension {g.n - 2}, got {w.dim}")
    members = [v for v in g.dim_class(g.n - 1) if is_subspace_of(g.field, w, g.vertices[v])]
    if len(members) != g.q + 1:
        raise ConsistencyError(f"found {len(members)} hyperplanes through W, expected {g.q + 1}")
    if not covers_space(g, members):
        raise ConsistencyError("hyperplanes through W do not cover V")
    return _checked(g, Certificate("dominating-set", members, len(members)))


def covers_space(g: IntersectionGraph, members) -> bool:
    """Every vector of GF(q)^n lies in one of the given subspaces."""
    subs = [g.vertices[v] for v in members]
    return all(any(contains(g.field, s, x) for s in subs) for x in all_vectors(g.field, g.n))


def lines_independent_set(g: IntersectionGraph) -> Certificate:
    members = list(g.dim_class(1))
    if len(members) != gaussian_binomial(g.n, 1, g.q):
        raise ConsistencyError("wrong number of lines")
    return _checked(g, Certificate("independent-set", members, len(members)))
