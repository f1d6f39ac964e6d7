"""The intersection graph of subspaces, its distinguished subgraphs, and file formats.

Adjacency is a list of Python ints used as bitsets: bit ``i`` of
``adj[v]`` is set iff ``v ~ i``.
"""

from __future__ import annotations

import json
import struct
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .counting import gaussian_binomial, vertex_count
from .gf import FieldSpec, build_field
from .linalg import Subspace, enumerate_subspaces, intersection_dim

DEFAULT_MAX_VERTICES = 5000

CACHE_MAGIC = b"QIGR"
CACHE_VERSION = 1


class VertexCapExceeded(RuntimeError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"graph would need {needed} vertices, cap is {cap}")
        self.needed = needed
        self.cap = cap


class EmptyGraphError(ValueError):
    """Raised for questions that have no answer on the empty graph."""


class ConsistencyError(AssertionError):
    """A computed structure contradicts a theorem it must satisfy."""


class CacheFormatError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bitset(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


class BitGraph:
    """Simple undirected graph on vertices ``0..order-1`` with bitset rows."""

    def __init__(self, adj: Sequence[int]):
        self.adj = list(adj)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "BitGraph":
        adj = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(adj)

    @property
    def order(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.order)]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def complement(self) -> "BitGraph":
        full = (1 << self.order) - 1
        return BitGraph([full & ~row & ~(1 << v) for v, row in enumerate(self.adj)])

    def induced(self, ids: Sequence[int]) -> "InducedSubgraph":
        return InducedSubgraph(self, ids)

    def components(self) -> list[int]:
        """Connected components as vertex bitsets."""
        seen = 0
        comps = []
        for v in range(self.order):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in iter_bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        if self.order == 0:
            raise EmptyGraphError("connectivity of the empty graph is undefined here")
        return len(self.components()) == 1

    def is_complete(self) -> bool:
        return all(self.degree(v) == self.order - 1 for v in range(self.order))

    def is_cycle(self) -> bool:
        return self.order >= 3 and all(d == 2 for d in self.degrees()) and self.is_connected()


class InducedSubgraph(BitGraph):
    """``parent[ids]`` relabelled to ``0..len(ids)-1``; ``ids[i]`` maps back."""

    def __init__(self, parent: BitGraph, ids: Sequence[int]):
        self.ids = list(ids)
        pos = {g: i for i, g in enumerate(self.ids)}
        mask = bitset(self.ids)
        adj = []
        for g in self.ids:
            row = 0
            for h in iter_bits(parent.adj[g] & mask):
                row |= 1 << pos[h]
            adj.append(row)
        super().__init__(adj)


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    max_degree: int
    min_degree: int
    connected: bool | None

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
            "connected": self.connected,
        }


def graph_stats(g: BitGraph) -> GraphStats:
    degs = g.degrees()
    return GraphStats(
        vertices=g.order,
        edges=sum(degs) // 2,
        max_degree=max(degs, default=0),
        min_degree=min(degs, default=0),
        connected=g.is_connected() if g.order else None,
    )


class IntersectionGraph(BitGraph):
    """G(V) for V = GF(q)^n: all proper nontrivial subspaces, ordered by (dim, rank)."""

    def __init__(self, field: FieldSpec, n: int, vertices: Sequence[Subspace], adj: Sequence[int]):
        super().__init__(adj)
        self.field = field
        self.n = n
        self.vertices = list(vertices)
        self.dim_offsets = [0] * (n + 1)
        # dim_offsets[t] is the first id of A_t; dim_offsets[n] is the vertex count.
        off = 0
        for t in range(1, n):
            self.dim_offsets[t] = off
            off += gaussian_binomial(n, t, field.q)
        self.dim_offsets[n] = off
        self.dim_offsets[0] = 0
        self._index = {s: i for i, s in enumerate(self.vertices)}

    @property
    def q(self) -> int:
        return self.field.q

    def dim_class(self, t: int) -> range:
        if not 1 <= t <= self.n - 1:
            return range(0)
        return range(self.dim_offsets[t], self.dim_offsets[t + 1])

    def dim_of(self, v: int) -> int:
        return self.vertices[v].dim

    def rank_index(self, v: int) -> int:
        return v - self.dim_offsets[self.vertices[v].dim]

    def label(self, v: int) -> str:
        return f"d{self.dim_of(v)}#{self.rank_index(v)}"

    def vertex_id(self, s: Subspace) -> int:
        return self._index[s]

    def stats(self) -> GraphStats:
        return graph_stats(self)


def _normalized_vectors(field: FieldSpec, s: Subspace):
    """Every nonzero vector of ``s`` whose first nonzero entry is 1, one per line of ``s``.

    With an RREF basis, fixing the first nonzero coefficient to 1 fixes the
    leading entry of the combination to 1 as well.
    """
    add, mul = field.add_table, field.mul_table
    rows = s.basis
    k = len(rows)
    for i in range(k):
        for coeffs in product(range(field.q), repeat=k - i - 1):
            v = list(rows[i])
            for c, r in zip(coeffs, rows[i + 1 :]):
                if c:
                    mc = mul[c]
                    v = [add[a][mc[b]] for a, b in zip(v, r)]
            yield tuple(v)


def _incidence_rows(containing: Sequence[int], points_of: Sequence[Sequence[int]], start: int, stop: int) -> list[int]:
    rows = []
    for v in range(start, stop):
        row = 0
        for p in points_of[v]:
            row |= containing[p]
        rows.append(row & ~(1 << v))
    return rows


def build_graph(
    field: FieldSpec,
    n: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    verify: bool = False,
    parallel: bool = False,
    workers: int | None = None,
) -> IntersectionGraph:
    """Materialize G(GF(q)^n).

    Two subspaces meet nontrivially iff they share a 1-dimensional
    subspace, so each row is the union, over the lines a vertex contains,
    of the vertices containing that line.  ``verify=True`` rechecks every
    pair with :func:`intersection_dim`.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    needed = vertex_count(n, field.q)
    if needed > max_vertices:
        raise VertexCapExceeded(needed, max_vertices)
    vertices = [s for t in range(1, n) for s in enumerate_subspaces(field, n, t)]
    nv = len(vertices)
    # lines are the first block of vertices, and a line's RREF row is its normalized vector
    line_id = {s.basis[0]: i for i, s in enumerate(vertices) if s.dim == 1}
    points_of = [[line_id[x] for x in _normalized_vectors(field, s)] for s in vertices]
    containing = [0] * len(line_id)
    for v, pts in enumerate(points_of):
        for p in pts:
            containing[p] |= 1 << v
    if parallel and nv > 1:
        chunk = max(1, nv // (4 * (workers or 4)))
        bounds = [(a, min(a + chunk, nv)) for a in range(0, nv, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(_incidence_rows, *zip(*[(containing, points_of, a, b) for a, b in bounds]))
            adj = [row for part in parts for row in part]
    else:
        adj = _incidence_rows(containing, points_of, 0, nv)
    g = IntersectionGraph(field, n, vertices, adj)
    if verify:
        check_adjacency(g)
    return g


def check_adjacency(g: IntersectionGraph) -> None:
    """Recompute every pair with intersection_dim (skipping the rank when dimensions sum past n)."""
    for i, u in enumerate(g.vertices):
        if g.adj[i] >> i & 1:
            raise ConsistencyError(f"self-loop at {g.label(i)}")
        for j in range(i + 1, g.order):
            w = g.vertices[j]
            want = u.dim + w.dim > g.n or intersection_dim(g.field, u, w) >= 1
            if g.has_edge(i, j) != want or g.has_edge(j, i) != want:
                raise ConsistencyError(f"adjacency of {g.label(i)}, {g.label(j)} is wrong")


def is_connected(g: BitGraph) -> bool:
    return g.is_connected()


def induced_middle(g: IntersectionGraph) -> tuple[InducedSubgraph, InducedSubgraph]:
    """(G1, G2): the subgraph induced on A_{n/2} and the rest."""
    if g.n % 2:
        raise ValueError(f"n = {g.n} is odd; no middle dimension class")
    mid = g.dim_class(g.n // 2)
    rest = [v for v in range(g.order) if v not in mid]
    return g.induced(list(mid)), g.induced(rest)


@dataclass
class BipartiteDisjointGraph:
    """Zero-intersection pairs between A_t (left) and A_{n-t} (right)."""

    t: int
    left: list[int]
    right: list[int]
    adj_left: list[list[int]]  # local right indices per left vertex
    degree: int

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, nbrs in enumerate(self.adj_left):
            for j in nbrs:
                yield self.left[i], self.right[j]

    def edge_count(self) -> int:
        return sum(len(x) for x in self.adj_left)


def disjointness_bipartite(g: IntersectionGraph, t: int) -> BipartiteDisjointGraph:
    """The complement of the A_t/A_{n-t} bipartite subgraph within the complete bipartite graph.

    Raises ConsistencyError unless both sides are q^{t(n-t)}-regular.
    """
    if not (1 <= t and 2 * t < g.n):
        raise ValueError(f"t = {t} must satisfy 1 <= t < n/2 = {g.n / 2}")
    left = list(g.dim_class(t))
    right = list(g.dim_class(g.n - t))
    rmask = bitset(right)
    base = right[0]
    adj_left = [[r - base for r in iter_bits(~g.adj[v] & rmask)] for v in left]
    k = g.q ** (t * (g.n - t))
    right_deg = [0] * len(right)
    for nbrs in adj_left:
        if len(nbrs) != k:
            raise ConsistencyError(f"left vertex of disjointness graph t={t} has degree {len(nbrs)}, expected {k}")
        for j in nbrs:
            right_deg[j] += 1
    if any(d != k for d in right_deg):
        raise ConsistencyError(f"right side of disjointness graph t={t} is not {k}-regular")
    return BipartiteDisjointGraph(t, left, right, adj_left, k)


# ---------------------------------------------------------------------------
# export / import


def vertex_rows(g: IntersectionGraph, v: int) -> list[list[int]]:
    return [list(r) for r in g.vertices[v].basis]


def to_json(g: IntersectionGraph) -> dict:
    return {
        "format": "subspace-intersection-graph",
        "n": g.n,
        "p": g.field.p,
        "e": g.field.e,
        "q": g.q,
        "modulus": list(g.field.modulus) if g.field.e > 1 else None,
        "vertex_count": g.order,
        "edge_count": g.edge_count(),
        "vertices": [
            {"id": v, "label": g.label(v), "dim": g.dim_of(v), "rows": vertex_rows(g, v)}
            for v in range(g.order)
        ],
        "edges": [list(e) for e in g.edges()],
    }


def to_dot(g: IntersectionGraph) -> str:
    lines = [f'graph "G(GF({g.q})^{g.n})" {{']
    for v in range(g.order):
        rows = "\\n".join(" ".join(map(str, r)) for r in vertex_rows(g, v))
        lines.append(f'  "{g.label(v)}" [label="{g.label(v)}\\n{rows}"];')
    for u, v in g.edges():
        lines.append(f'  "{g.label(u)}" -- "{g.label(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_cache_bytes(g: IntersectionGraph) -> bytes:
    """Binary cache: header, vertex records, per-row padded adjacency bitsets, CRC32."""
    out = bytearray(CACHE_MAGIC)
    out += struct.pack("<HIIII", CACHE_VERSION, g.n, g.field.p, g.field.e, g.order)
    for s in g.vertices:
        out.append(s.dim)
        out += bytes(x for r in s.basis for x in r)
    row_bytes = (g.order + 7) // 8
    for row in g.adj:
        out += row.to_bytes(row_bytes, "little")
    out += struct.pack("<I", zlib.crc32(bytes(out)))
    return bytes(out)


def from_cache_bytes(data: bytes, field: FieldSpec | None = None) -> IntersectionGraph:
    """Inverse of :func:`to_cache_bytes`.

    The header records only (p, e); pass ``field`` when the graph was built
    with a non-default modulus.
    """
    head = len(CACHE_MAGIC) + struct.calcsize("<HIIII")
    if len(data) < head + 4:
        raise CacheFormatError("truncated cache file")
    if data[:4] != CACHE_MAGIC:
        raise CacheFormatError("bad magic bytes")
    (crc,) = struct.unpack("<I", data[-4:])
    if zlib.crc32(data[:-4]) != crc:
        raise CacheFormatError("checksum mismatch")
    version, n, p, e, nv = struct.unpack("<HIIII", data[4:head])
    if version != CACHE_VERSION:
        raise CacheFormatError(f"cache format version {version}, expected {CACHE_VERSION}")
    if field is None:
        field = build_field(p, e, max_q=p**e)
    elif (field.p, field.e) != (p, e):
        raise CacheFormatError(f"cache is over GF({p}^{e}), field given is GF({field.p}^{field.e})")
    pos = head
    body = data[:-4]
    vertices = []
    try:
        for _ in range(nv):
            k = body[pos]
            pos += 1
            cells = body[pos : pos + k * n]
            if len(cells) != k * n:
                raise CacheFormatError("truncated vertex record")
            pos += k * n
            vertices.append(Subspace(n, tuple(tuple(cells[i * n : (i + 1) * n]) for i in range(k))))
    except IndexError:
        raise CacheFormatError("truncated vertex record") from None
    row_bytes = (nv + 7) // 8
    if len(body) - pos != row_bytes * nv:
        raise CacheFormatError("adjacency section has wrong length")
    adj = [int.from_bytes(body[pos + i * row_bytes : pos + (i + 1) * row_bytes], "little") for i in range(nv)]
    return IntersectionGraph(field, n, vertices, adj)


def write_cache(g: IntersectionGraph, path) -> None:
    with open(path, "wb") as fh:
        fh.write(to_cache_bytes(g))


def read_cache(path, field: FieldSpec | None = None) -> IntersectionGraph:
    with open(path, "rb") as fh:
        return from_cache_bytes(fh.read(), field)


def write_json(g: IntersectionGraph, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json(g), fh, indent=1)
        fh.write("\n")


def write_dot(g: IntersectionGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_dot(g))
