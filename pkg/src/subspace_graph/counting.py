"""Exact evaluation of subspace counts and the invariant formulas for G(V)."""

from __future__ import annotations

from dataclasses import asdict, dataclass


def gaussian_binomial(n: int, t: int, q: int) -> int:
    """Number of t-dimensional subspaces of GF(q)^n.

    Built by alternating exact multiply/divide; every partial product is
    itself a Gaussian binomial, so each division must leave no remainder.
    """
    if t < 0 or t > n:
        return 0
    result = 1
    for i in range(t):
        result *= q ** (n - i) - 1
        result, rem = divmod(result, q ** (i + 1) - 1)
        assert rem == 0, (n, t, q, i)
    return result


def complement_count(n: int, m: int, t: int, q: int) -> int:
    """Number of t-dimensional W' with W ∩ W' = 0 for a fixed m-dimensional W."""
    return q ** (m * t) * gaussian_binomial(n - m, t, q)


def degree_formula(n: int, m: int, q: int) -> int:
    """Degree in G(V) of any m-dimensional vertex."""
    if not 1 <= m <= n - 1:
        raise ValueError(f"vertex dimension {m} not in 1..{n - 1}")
    total = sum(gaussian_binomial(n, t, q) for t in range(n + 1))
    disjoint = sum(complement_count(n, m, t, q) for t in range(n - m + 1))
    return total - disjoint - 2


def vertex_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, t, q) for t in range(1, n))


def middle_degree(n: int, q: int) -> int:
    """Degree of every vertex inside the subgraph induced on the n/2-dimensional class (n even)."""
    h = n // 2
    return gaussian_binomial(n, h, q) - q ** (h * h) - 1


FORMULAS = {
    "omega_odd": "sum_{i=1}^{floor(n/2)} [n,i]_q",
    "chi_odd": "sum_{i=1}^{floor(n/2)} [n,i]_q",
    "omega_even_lo": "sum_{i=1}^{n/2-1} [n,i]_q + [n-1,(n-2)/2]_q",
    "omega_even_hi": "sum_{i=1}^{n/2-1} [n,i]_q + [n,n/2]_q - q^(n^2/4) - 1",
    "gamma": "q + 1",
    "alpha": "(q^n - 1)/(q - 1)",
    "vertex_count": "sum_{t=1}^{n-1} [n,t]_q",
    "degree": "sum_{t=0}^{n} [n,t]_q - sum_{t=0}^{n-m} q^(m t) [n-m,t]_q - 2",
    "disjoint_regularity": "q^(t(n-t))",
    "middle_degree": "[n,n/2]_q - q^(n^2/4) - 1",
}


@dataclass(frozen=True)
class PredictedInvariants:
    n: int
    q: int
    gamma: int
    alpha: int
    vertex_count: int
    omega_odd: int | None = None
    chi_odd: int | None = None
    omega_even_lo: int | None = None
    omega_even_hi: int | None = None

    @property
    def edge_case(self) -> bool:
        """n = 2: G(V) is edgeless and the even-n bound pair degenerates (lo > hi)."""
        return self.n == 2

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def predicted_invariants(n: int, q: int) -> PredictedInvariants:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    common = dict(
        n=n,
        q=q,
        gamma=q + 1,
        alpha=(q**n - 1) // (q - 1),
        vertex_count=vertex_count(n, q),
    )
    if n % 2:
        w = sum(gaussian_binomial(n, i, q) for i in range(1, n // 2 + 1))
        return PredictedInvariants(omega_odd=w, chi_odd=w, **common)
    h = n // 2
    base = sum(gaussian_binomial(n, i, q) for i in range(1, h))
    return PredictedInvariants(
        omega_even_lo=base + gaussian_binomial(n - 1, h - 1, q),
        omega_even_hi=base + gaussian_binomial(n, h, q) - q ** (h * h) - 1,
        **common,
    )
