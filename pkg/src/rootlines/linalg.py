"""Exact rational linear algebra on sparse and dense vectors.

Sparse vectors are ``dict[int, Fraction]`` with zero entries omitted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

Sparse = Dict[int, Fraction]


def fmt(q) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when integral."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    from math import isqrt

    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    p, d = q.numerator, q.denominator
    rp, rd = isqrt(p), isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def sparse(vec: Sequence) -> Sparse:
    return {i: Fraction(x) for i, x in enumerate(vec) if x}


class RowSpace:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Rows are kept fully reduced: every pivot column is zero in every
    other row and the pivot entry is 1.
    """

    def __init__(self, rows: Iterable[Sparse] = ()):
        self._rows: Dict[int, Sparse] = {}
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> List[Sparse]:
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def reduce(self, v: Sparse) -> Sparse:
        v = {k: Fraction(c) for k, c in v.items() if c}
        for p in [p for p in v if p in self._rows]:
            c = v.get(p)
            if not c:
                continue
            for k, a in self._rows[p].items():
                x = v.get(k, 0) - c * a
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
        return v

    def contains(self, v: Sparse) -> bool:
        return not self.reduce(v)

    def add(self, v: Sparse) -> bool:
        """Add ``v`` to the span; return True if the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = r[p]
        r = {k: a / c for k, a in r.items()}
        for q, row in self._rows.items():
            f = row.get(p)
            if f:
                for k, a in r.items():
                    x = row.get(k, 0) - f * a
                    if x:
                        row[k] = x
                    else:
                        row.pop(k, None)
        self._rows[p] = r
        return True


def rank(vectors: Iterable[Sequence]) -> int:
    space = RowSpace()
    for v in vectors:
        space.add(sparse(v))
    return len(space)


def nullspace(rows: Iterable[Sparse], ncols: int) -> List[Sparse]:
    """Basis of ``{x : row . x = 0 for every row}`` in ``Q^ncols``."""
    space = RowSpace(rows)
    pivots = set(space.pivots)
    basis = []
    reduced = space.rows
    for f in range(ncols):
        if f in pivots:
            continue
        x: Sparse = {f: Fraction(1)}
        for row in reduced:
            c = row.get(f)
            if c:
                x[min(row)] = -c
        basis.append(x)
    return basis


def inverse(m: Sequence[Sequence]) -> List[List[Fraction]]:
    """Inverse of a square matrix by Gauss-Jordan elimination over Q."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def ldl(gram: Sequence[Sequence]):
    """Decompose a positive definite form as sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2.

    Returns ``(d, mu)`` with exact rationals. Raises if not positive definite.
    """
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        d[i] = q[i][i]
        for j in range(i + 1, n):
            mu[i][j] = q[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                q[j][k] -= d[i] * mu[i][j] * mu[i][k]
    return d, mu


def short_vectors(gram: Sequence[Sequence], bound) -> List[tuple]:
    """All nonzero integer vectors x with x^T G x <= bound (Fincke-Pohst)."""
    n = len(gram)
    d, mu = ldl(gram)
    bound = Fraction(bound)
    out: List[tuple] = []
    x = [0] * n

    def centre(i: int) -> Fraction:
        return sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))

    def rec(i: int, remaining: Fraction) -> None:
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = centre(i)
        start = round(-c)
        # the quadratic is convex in x[i]; walk outwards from the centre
        for step in (1, -1):
            xi = start if step == 1 else start - 1
            while True:
                t = d[i] * (xi + c) ** 2
                if t > remaining:
                    if (step == 1 and xi + c >= 0) or (step == -1 and xi + c <= 0):
                        break
                    xi += step
                    continue
                x[i] = xi
                rec(i - 1, remaining - t)
                xi += step
        x[i] = 0

    rec(n - 1, bound)
    return out
