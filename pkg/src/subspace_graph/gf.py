"""Table-driven arithmetic in GF(p^e).

Elements are plain ints in ``range(q)``.  The index of an element is its
coefficient vector read as base-p digits, constant term least significant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

DEFAULT_MAX_Q = 16

# Monic irreducible moduli, coefficients constant term first.
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (2, 1, 1),  # x^2 + x + 2
}


class FieldError(ValueError):
    """Invalid field parameters."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m`` over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= e/2."""
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(list(modulus), tuple(low) + (1,), p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    neg_table: tuple[int, ...] = field(repr=False, compare=False)
    inv_table: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self.inv_table[a]

    def to_poly(self, a: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            digits.append(r)
        return tuple(digits)

    def from_poly(self, coeffs) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            k += 1
        return k

    def describe(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        terms = [
            ("x^%d" % i if i > 1 else "x" if i == 1 else "1")
            if c == 1
            else f"{c}" + ("x^%d" % i if i > 1 else "x" if i == 1 else "")
            for i, c in reversed(list(enumerate(self.modulus)))
            if c
        ]
        return f"GF({self.p}^{self.e}) mod {' + '.join(terms)}"


def build_field(
    p: int,
    e: int = 1,
    modulus=None,
    max_q: int = DEFAULT_MAX_Q,
) -> FieldSpec:
    """Build GF(p^e) with full addition, multiplication, negation and inverse tables.

    ``modulus`` lists base-p coefficients of a monic degree-e polynomial,
    constant term first.  When omitted for e > 1 a built-in modulus is used.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > max_q:
        raise FieldError(f"field order {q} exceeds cap {max_q}")
    if e == 1:
        mod: tuple[int, ...] = (0, 1)
    else:
        if modulus is None:
            if (p, e) not in BUILTIN_MODULI:
                raise FieldError(f"no built-in modulus for p={p}, e={e}; supply one")
            mod = BUILTIN_MODULI[(p, e)]
        else:
            mod = tuple(int(c) for c in modulus)
            if len(mod) != e + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
                raise FieldError(f"modulus {mod} is not a monic degree-{e} polynomial over GF({p})")
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {mod} is reducible over GF({p})")

    def digits(a):
        out = []
        for _ in range(e):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def index(coeffs):
        return sum(c * p**i for i, c in enumerate(coeffs))

    polys = [digits(a) for a in range(q)]
    add = tuple(
        tuple(index([(x + y) % p for x, y in zip(polys[a], polys[b])]) for b in range(q))
        for a in range(q)
    )
    neg = tuple(index([(-x) % p for x in polys[a]]) for a in range(q))
    mul_rows = []
    for a in range(q):
        row = []
        for b in range(q):
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(polys[a]):
                if x:
                    for j, y in enumerate(polys[b]):
                        prod[i + j] += x * y
            row.append(index(_poly_mod(prod, mod, p) if e > 1 else [prod[0] % p]))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
    return FieldSpec(p, e, mod, add, mul, neg, tuple(inv))


def build_field_q(q: int, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    p, e = factor_prime_power(q)
    return build_field(p, e, max_q=max_q)
