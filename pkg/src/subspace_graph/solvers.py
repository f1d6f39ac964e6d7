"""Exact and heuristic solvers for clique, colouring, domination and independence.

All solvers work on :class:`~subspace_graph.graph.BitGraph` bitsets and
break ties by lowest vertex id, so single-threaded runs are reproducible.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import BipartiteDisjointGraph, BitGraph, ConsistencyError, iter_bits

PROVEN = "proven"
BOUNDED = "bounded"
TIMEOUT = "timeout"

_CHECK_EVERY = 256


@dataclass
class Certificate:
    """A clique / colouring / dominating set / independent set / matching.

    ``members`` is a list of vertex ids, except for colourings (list of
    colours indexed by vertex) and matchings (list of ``(left, right)`` pairs).
    """

    kind: str
    members: list
    value: int
    verified: bool | None = None

    def as_dict(self) -> dict:
        members = [list(m) for m in self.members] if self.kind == "matching" else list(self.members)
        return {"kind": self.kind, "members": members, "value": self.value, "verified": self.verified}


@dataclass
class SolveResult:
    lo: int
    hi: int
    certificate: Certificate
    status: str
    elapsed: float = 0.0
    nodes: int = 0

    @property
    def value(self) -> int | None:
        return self.lo if self.status == PROVEN else None

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "value": self.value,
            "lo": self.lo,
            "hi": self.hi,
            "status": self.status,
            "nodes": self.nodes,
            "certificate": self.certificate.as_dict(),
        }
        if timing:
            d["elapsed"] = self.elapsed
        return d


class BudgetExhausted(Exception):
    pass


class Budget:
    """Wall-clock seconds plus an optional node cap, checked every few hundred nodes."""

    def __init__(self, seconds: float | None = 60.0, max_nodes: int | None = None):
        self.seconds = seconds
        self.max_nodes = max_nodes
        self.start = time.monotonic()
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted
        if self.seconds is not None and self.nodes % _CHECK_EVERY == 0:
            if time.monotonic() - self.start > self.seconds:
                raise BudgetExhausted

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def fresh(self) -> "Budget":
        return Budget(self.seconds, self.max_nodes)


def _budget(budget) -> Budget:
    if budget is None:
        return Budget(None, None)
    if isinstance(budget, Budget):
        return budget.fresh()
    return Budget(float(budget))


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# maximum clique


def _color_sort(P: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy colour classes over P in bit order; colours are nondecreasing along ``order``."""
    order, colors = [], []
    color = 0
    while P:
        color += 1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            order.append(v)
            colors.append(color)
            P ^= low
            Q &= ~adj[v] & ~low
    return order, colors


def _degeneracy_order(adj: Sequence[int]) -> list[int]:
    """Vertices with the largest core number first (reverse smallest-last order)."""
    n = len(adj)
    alive = (1 << n) - 1
    deg = [_popcount(a) for a in adj]
    removed = []
    for _ in range(n):
        v = min(iter_bits(alive), key=lambda x: (deg[x], -x))
        removed.append(v)
        alive &= ~(1 << v)
        for u in iter_bits(adj[v] & alive):
            deg[u] -= 1
    return removed[::-1]


def _relabel(adj: Sequence[int], order: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        row = 0
        for u in iter_bits(adj[v]):
            row |= 1 << pos[u]
        out.append(row)
    return out


def _clique_search(adj: Sequence[int], budget: Budget, kind: str) -> SolveResult:
    n = len(adj)
    if n == 0:
        return SolveResult(0, 0, Certificate(kind, [], 0), PROVEN)
    order = _degeneracy_order(adj)
    radj = _relabel(adj, order)

    # greedy start: extend by the candidate with most neighbours among candidates
    best: list[int] = []
    P = (1 << n) - 1
    while P:
        v = max(iter_bits(P), key=lambda x: (_popcount(radj[x] & P), -x))
        best.append(v)
        P &= radj[v]

    root_order, root_colors = _color_sort((1 << n) - 1, radj)
    hi = root_colors[-1]
    current: list[int] = []

    def expand(P: int) -> None:
        nonlocal best
        vs, cs = _color_sort(P, radj)
        size = len(current)
        for i in range(len(vs) - 1, -1, -1):
            if size + cs[i] <= len(best):
                return
            budget.tick()
            v = vs[i]
            current.append(v)
            newP = P & radj[v]
            if newP:
                expand(newP)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            P &= ~(1 << v)

    status = PROVEN
    P = (1 << n) - 1
    try:
        for i in range(len(root_order) - 1, -1, -1):
            hi = max(len(best), root_colors[i])
            if root_colors[i] <= len(best):
                break
            budget.tick()
            v = root_order[i]
            current.append(v)
            newP = P & radj[v]
            if newP:
                expand(newP)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            P &= ~(1 << v)
        hi = len(best)
    except BudgetExhausted:
        status = TIMEOUT
    members = sorted(order[v] for v in best)
    lo = len(members)
    if status != PROVEN and lo == hi:
        status = PROVEN
    return SolveResult(lo, hi, Certificate(kind, members, lo), status, budget.elapsed, budget.nodes)


def max_clique(g: BitGraph, budget=60.0) -> SolveResult:
    """Branch and bound with greedy-colouring upper bounds over a degeneracy order."""
    return _clique_search(g.adj, _budget(budget), "clique")


def max_independent_set(g: BitGraph, budget=60.0) -> SolveResult:
    """Maximum clique of the complement graph."""
    return _clique_search(g.complement().adj, _budget(budget), "independent-set")


# ---------------------------------------------------------------------------
# colouring


def _coloring_certificate(colors: list[int]) -> Certificate:
    return Certificate("coloring", colors, len(set(colors)))


def dsatur_coloring(g: BitGraph) -> Certificate:
    """DSATUR: most saturated vertex first, then highest degree, then lowest id; smallest free colour."""
    n = g.order
    colors = [-1] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    deg = g.degrees()
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda x: (len(seen[x]), deg[x], -x))
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in iter_bits(g.adj[v]):
            seen[u].add(c)
    return _coloring_certificate(colors)


def chromatic_number(g: BitGraph, budget=60.0) -> SolveResult:
    """Exact DSATUR branch and bound seeded with a maximum clique and a DSATUR colouring."""
    b = _budget(budget)
    n = g.order
    if n == 0:
        return SolveResult(0, 0, _coloring_certificate([]), PROVEN)
    clique = _clique_search(g.adj, b, "clique")
    lo = clique.lo
    best_cert = dsatur_coloring(g)
    best_k = best_cert.value
    best_colors = list(best_cert.members)
    if lo >= best_k:
        return SolveResult(best_k, best_k, best_cert, PROVEN, b.elapsed, b.nodes)

    adj = g.adj
    deg = g.degrees()
    colors = [-1] * n
    # cnt[v][c]: number of neighbours of v coloured c
    cnt = [[0] * n for _ in range(n)]
    sat = [0] * n

    def assign(v: int, c: int) -> None:
        colors[v] = c
        for u in iter_bits(adj[v]):
            row = cnt[u]
            if row[c] == 0:
                sat[u] += 1
            row[c] += 1

    def unassign(v: int, c: int) -> None:
        colors[v] = -1
        for u in iter_bits(adj[v]):
            row = cnt[u]
            row[c] -= 1
            if row[c] == 0:
                sat[u] -= 1

    for c, v in enumerate(clique.certificate.members):
        assign(v, c)
    uncolored = set(range(n)) - set(clique.certificate.members)

    def search(used: int) -> None:
        nonlocal best_k, best_colors
        if not uncolored:
            best_k = used
            best_colors = list(colors)
            return
        b.tick()
        v = max(uncolored, key=lambda x: (sat[x], deg[x], -x))
        uncolored.discard(v)
        row = cnt[v]
        for c in range(min(used + 1, best_k - 1)):
            if row[c]:
                continue
            assign(v, c)
            search(max(used, c + 1))
            unassign(v, c)
            if best_k <= lo:
                break
        uncolored.add(v)

    status = PROVEN
    try:
        search(lo)
    except BudgetExhausted:
        status = TIMEOUT if lo < best_k else PROVEN
    cert = _coloring_certificate(best_colors)
    hi = cert.value
    if status == PROVEN:
        lo = hi
    return SolveResult(lo, hi, cert, status, b.elapsed, b.nodes)


class BrooksPreconditionError(ValueError):
    def __init__(self, hypothesis: str):
        super().__init__(f"Brooks hypothesis fails: graph is {hypothesis}")
        self.hypothesis = hypothesis


def _reverse_bfs_coloring(adj: Sequence[int], vertices: int, root: int, colors: list[int], palette: int) -> None:
    """Colour ``vertices`` (a connected bitset containing ``root``) farthest-from-root first.

    Every non-root vertex is coloured before its BFS parent, so it sees at
    most deg - 1 coloured neighbours.
    """
    order = [root]
    seen = 1 << root
    dq = deque([root])
    while dq:
        v = dq.popleft()
        for u in iter_bits(adj[v] & vertices & ~seen):
            seen |= 1 << u
            order.append(u)
            dq.append(u)
    if seen != vertices:
        raise ConsistencyError("Brooks ordering region is not connected")
    for v in reversed(order):
        used = {colors[u] for u in iter_bits(adj[v]) if colors[u] >= 0}
        c = next(c for c in range(palette + 1) if c not in used)
        if c >= palette:
            raise ConsistencyError("Brooks ordering ran out of colours")
        colors[v] = c


def _reach(adj: Sequence[int], mask: int, root: int) -> int:
    comp = frontier = 1 << root
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        frontier = nxt & mask & ~comp
        comp |= frontier
    return comp


def _brooks_constructive(g: BitGraph) -> list[int]:
    n = g.order
    adj = g.adj
    delta = g.max_degree()
    full = (1 << n) - 1
    colors = [-1] * n
    if delta <= 2:
        # path or even cycle: BFS 2-colouring
        for comp in g.components():
            root = (comp & -comp).bit_length() - 1
            colors[root] = 0
            dq = deque([root])
            while dq:
                v = dq.popleft()
                for u in iter_bits(adj[v]):
                    if colors[u] < 0:
                        colors[u] = 1 - colors[v]
                        dq.append(u)
        return colors
    degs = g.degrees()
    low = next((v for v in range(n) if degs[v] < delta), None)
    if low is not None:
        _reverse_bfs_coloring(adj, full, low, colors, delta)
        return colors
    colors = _brooks_triple(g, delta)
    if colors is None:
        colors = _brooks_cut_vertex(g, delta)
    if colors is None:
        raise ConsistencyError("no Brooks configuration found")
    return colors


def _brooks_triple(g: BitGraph, delta: int) -> list[int] | None:
    """v with non-adjacent neighbours u, w such that G - {u, w} is connected; u, w share colour 0."""
    n = g.order
    adj = g.adj
    full = (1 << n) - 1
    for v in range(n):
        nb = g.neighbors(v)
        for i, u in enumerate(nb):
            for w in nb[i + 1 :]:
                if adj[u] >> w & 1:
                    continue
                rest = full & ~(1 << u) & ~(1 << w)
                if _reach(adj, rest, v) == rest:
                    colors = [-1] * n
                    colors[u] = colors[w] = 0
                    _reverse_bfs_coloring(adj, rest, v, colors, delta)
                    return colors
    return None


def _brooks_cut_vertex(g: BitGraph, delta: int) -> list[int] | None:
    """Colour each piece G[C_i + c] around a cut vertex c, then align the colour of c."""
    n = g.order
    adj = g.adj
    full = (1 << n) - 1
    for c in range(n):
        rest = full & ~(1 << c)
        comps = []
        left = rest
        while left:
            comp = _reach(adj, rest, (left & -left).bit_length() - 1)
            comps.append(comp)
            left &= ~comp
        if len(comps) < 2:
            continue
        colors = [-1] * n
        for comp in comps:
            piece = comp | (1 << c)
            local = [-1] * n
            _reverse_bfs_coloring(adj, piece, c, local, delta)
            shift = local[c]
            for v in iter_bits(comp):
                # swap colours shift <-> 0 so c gets colour 0 in every piece
                x = local[v]
                colors[v] = 0 if x == shift else shift if x == 0 else x
        colors[c] = 0
        return colors
    return None


def brooks_coloring(g: BitGraph, force_constructive: bool = False) -> Certificate:
    """Proper colouring with at most Δ colours for connected graphs that are neither complete nor odd cycles."""
    if g.order == 0 or not g.is_connected():
        raise BrooksPreconditionError("disconnected")
    if g.is_complete():
        raise BrooksPreconditionError("complete")
    if g.is_cycle() and g.order % 2:
        raise BrooksPreconditionError("an odd cycle")
    delta = g.max_degree()
    if not force_constructive:
        cert = dsatur_coloring(g)
        if cert.value <= delta:
            return cert
    cert = _coloring_certificate(_brooks_constructive(g))
    if cert.value > delta:
        raise ConsistencyError(f"Brooks colouring used {cert.value} > {delta} colours")
    return cert


# ---------------------------------------------------------------------------
# domination


def _greedy_dominating(closed: Sequence[int], full: int) -> list[int]:
    chosen = []
    dom = 0
    while dom != full:
        v = max(range(len(closed)), key=lambda x: (_popcount(closed[x] & ~dom), -x))
        chosen.append(v)
        dom |= closed[v]
    return chosen


def _domination_lower_bound(closed: Sequence[int], undominated: int) -> int:
    # undominated vertices with pairwise disjoint closed neighbourhoods need distinct dominators
    used = 0
    packing = 0
    for u in iter_bits(undominated):
        if not closed[u] & used:
            used |= closed[u]
            packing += 1
    cover = max(_popcount(c & undominated) for c in closed)
    by_size = -(-_popcount(undominated) // cover)
    return max(packing, by_size)


def min_dominating_set(g: BitGraph, budget=60.0) -> SolveResult:
    """Branch on the lowest-id undominated vertex; candidates are its closed neighbourhood."""
    b = _budget(budget)
    n = g.order
    if n == 0:
        return SolveResult(0, 0, Certificate("dominating-set", [], 0), PROVEN)
    full = (1 << n) - 1
    closed = [a | (1 << v) for v, a in enumerate(g.adj)]
    best = _greedy_dominating(closed, full)
    root_lb = _domination_lower_bound(closed, full)
    chosen: list[int] = []

    def search(dom: int) -> None:
        nonlocal best
        if dom == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        undominated = full & ~dom
        if len(chosen) + _domination_lower_bound(closed, undominated) >= len(best):
            return
        b.tick()
        u = (undominated & -undominated).bit_length() - 1
        cands = sorted(iter_bits(closed[u]), key=lambda x: (-_popcount(closed[x] & undominated), x))
        for c in cands:
            chosen.append(c)
            search(dom | closed[c])
            chosen.pop()
            if len(best) <= root_lb:
                return

    status = PROVEN
    try:
        search(0)
    except BudgetExhausted:
        status = TIMEOUT
    hi = len(best)
    lo = hi if status == PROVEN else root_lb
    if lo == hi:
        status = PROVEN
    return SolveResult(lo, hi, Certificate("dominating-set", sorted(best), hi), status, b.elapsed, b.nodes)


# ---------------------------------------------------------------------------
# bipartite matching


def hopcroft_karp_lists(adj_left: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum matching; returns the right partner of each left vertex or -1."""
    n_left = len(adj_left)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    inf = n_left + n_right + 1
    dist = [0] * n_left

    def bfs() -> bool:
        dq = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                dq.append(u)
            else:
                dist[u] = inf
        found = False
        while dq:
            u = dq.popleft()
            for v in adj_left[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    dq.append(w)
        return found

    def dfs(root: int) -> bool:
        # iterative DFS along the BFS layers; stack holds (left vertex, next edge index)
        stack = [[root, 0]]
        path: list[tuple[int, int]] = []
        while stack:
            u, i = stack[-1]
            nbrs = adj_left[u]
            advanced = False
            while i < len(nbrs):
                v = nbrs[i]
                i += 1
                w = match_r[v]
                if w < 0:
                    stack[-1][1] = i
                    path.append((u, v))
                    for a, bb in path:
                        match_l[a] = bb
                        match_r[bb] = a
                    return True
                if dist[w] == dist[u] + 1:
                    stack[-1][1] = i
                    path.append((u, v))
                    stack.append([w, 0])
                    advanced = True
                    break
            if not advanced:
                dist[u] = inf
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0:
                dfs(u)
    return match_l


def hopcroft_karp(b: BipartiteDisjointGraph) -> Certificate:
    """Maximum matching of a disjointness graph, which must be perfect when it is k-regular with k > 0."""
    match = hopcroft_karp_lists(b.adj_left, len(b.right))
    pairs = [(b.left[i], b.right[j]) for i, j in enumerate(match) if j >= 0]
    if b.degree > 0 and len(b.left) == len(b.right) and len(pairs) != len(b.left):
        raise ConsistencyError(
            f"{b.degree}-regular bipartite graph (t={b.t}) has no perfect matching: {len(pairs)}/{len(b.left)}"
        )
    return Certificate("matching", pairs, len(pairs))
