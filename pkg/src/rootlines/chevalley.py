"""Chevalley-basis Lie algebras of simply-laced root systems, over Q.

Basis indices: ``0 .. rank-1`` are the Cartan generators ``h_i = h_{s_i}``,
then one ``e_r`` per root in the system's canonical root order.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import RowSpace, Sparse, fmt, nullspace
from .roots import RootSystem, RootSystemError, Vector, add, neg, sub

Table = Dict[int, Dict[int, Sparse]]


class LieAlgebraError(ValueError):
    pass


def _axpy(acc: Sparse, c, x: Sparse) -> None:
    """acc += c * x, in place, dropping zeros."""
    for k, a in x.items():
        v = acc.get(k, 0) + c * a
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def structure_constants(system: RootSystem) -> Dict[Tuple[Vector, Vector], int]:
    """N_{r,s} for all root pairs with r + s a root.

    Extraspecial pairs get N = +1, with positive roots ordered by height and
    then coordinates. The other constants follow from
    N_{s,r} = -N_{r,s}, N_{-r,-s} = -N_{r,s}, N_{r,s} = N_{s,t} = N_{t,r}
    when r + s + t = 0, and the four-root relation.
    """
    if not system.is_simply_laced:
        raise LieAlgebraError("Chevalley bases are built for simply-laced systems only")
    roots = system.root_set
    pos = sorted(system.positive_roots, key=lambda r: (system.height(r), r))
    order = {r: i for i, r in enumerate(pos)}
    pos_set = set(pos)
    known: Dict[Tuple[Vector, Vector], int] = {}

    def N(r: Vector, s: Vector) -> int:
        if add(r, s) not in roots:
            return 0
        rp, sp = r in pos_set, s in pos_set
        if rp and sp:
            return known[(r, s)]
        if not rp and not sp:
            return -known[(neg(r), neg(s))]
        t = neg(add(r, s))
        # r + s + t = 0 and N_{r,s} = N_{s,t} = N_{t,r}
        if rp:
            return known[(t, r)] if t in pos_set else -known[(neg(s), neg(t))]
        return known[(s, t)] if t in pos_set else -known[(neg(t), neg(r))]

    by_sum: Dict[Vector, List[Tuple[Vector, Vector]]] = {}
    for r, s in combinations(pos, 2):
        x = add(r, s)
        if x in pos_set:
            a, b = (r, s) if order[r] < order[s] else (s, r)
            by_sum.setdefault(x, []).append((a, b))
    for xi in pos:
        pairs = by_sum.get(xi)
        if not pairs:
            continue
        pairs.sort(key=lambda p: order[p[0]])
        alpha, beta = pairs[0]
        known[(alpha, beta)] = 1
        known[(beta, alpha)] = -1
        na, nb = neg(alpha), neg(beta)
        for r, s in pairs[1:]:
            # N_{r,s} N_{-a,-b} + N_{s,-a} N_{r,-b} + N_{-a,r} N_{s,-b} = 0, N_{-a,-b} = -1
            val = N(s, na) * N(r, nb) + N(na, r) * N(s, nb)
            if val not in (1, -1):
                raise LieAlgebraError(f"structure constant {val} for {r}, {s}")
            known[(r, s)] = val
            known[(s, r)] = -val
    out = {}
    for r in system.roots:
        for s in system.roots:
            n = N(r, s)
            if n:
                out[(r, s)] = n
    return out


class LieAlgebra:
    """The Lie algebra of a simply-laced root system in a Chevalley basis."""

    def __init__(self, system: RootSystem, table: Optional[Table] = None):
        self.system = system
        self.rank = system.rank
        self.roots = system.roots
        self.root_index = {r: self.rank + i for i, r in enumerate(system.roots)}
        self.table: Table = table if table is not None else self._build_table()

    def __repr__(self) -> str:
        return f"LieAlgebra({self.system.label}, dim {self.dim})"

    @property
    def dim(self) -> int:
        return self.rank + len(self.roots)

    def basis_label(self, k: int) -> str:
        if k < self.rank:
            return f"h{k + 1}"
        return "e" + str(list(self.roots[k - self.rank]))

    def coroot(self, r: Sequence) -> Sparse:
        """h_r in the h_i basis (coroots equal roots for norm-2 roots)."""
        coeffs = self.system.simple_coords(r)
        return {i: Fraction(c) for i, c in enumerate(coeffs) if c}

    def _build_table(self) -> Table:
        sys = self.system
        n = self.rank
        table: Table = {k: {} for k in range(self.dim)}
        for i, s in enumerate(sys.simple_roots):
            for r, k in self.root_index.items():
                c = sys.ip(s, r)
                if c:
                    table[i][k] = {k: Fraction(c)}
                    table[k][i] = {k: Fraction(-c)}
        for (r, s), N in structure_constants(sys).items():
            table[self.root_index[r]][self.root_index[s]] = {self.root_index[add(r, s)]: Fraction(N)}
        for r, k in self.root_index.items():
            table[k][self.root_index[neg(r)]] = self.coroot(r)
        return table

    # ----------------------------------------------------------------- elements

    def element(self, coeffs: Dict[int, object]) -> "Element":
        for k in coeffs:
            if not 0 <= k < self.dim:
                raise LieAlgebraError(f"basis index {k} out of range")
        return Element(self, {k: Fraction(c) for k, c in coeffs.items() if c})

    def basis(self, k: int) -> "Element":
        return self.element({k: 1})

    def h(self, i: int) -> "Element":
        return self.basis(i)

    def e(self, r: Sequence) -> "Element":
        r = tuple(r)
        if r not in self.root_index:
            raise LieAlgebraError(f"{r} is not a root")
        return self.basis(self.root_index[r])

    def cartan(self, labels: Sequence) -> "Element":
        """sum(labels[i] * h_i)."""
        return self.element({i: a for i, a in enumerate(labels)})

    def bracket_sparse(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                z = row.get(j)
                if z:
                    _axpy(out, a * b, z)
        return out

    def bracket(self, x: "Element", y: "Element") -> "Element":
        if x.algebra is not self or y.algebra is not self:
            raise LieAlgebraError("elements belong to different algebras")
        return Element(self, self.bracket_sparse(x.coeffs, y.coeffs))

    def N(self, r: Sequence, s: Sequence) -> int:
        i, j = self.root_index[tuple(r)], self.root_index[tuple(s)]
        z = self.table[i].get(j, {})
        k = self.root_index.get(add(r, s))
        return int(z.get(k, 0)) if k is not None else 0

    def with_sign_flip(self, r: Sequence, s: Sequence) -> "LieAlgebra":
        """A copy with N_{r,s} and N_{s,r} negated (and nothing else)."""
        i, j = self.root_index[tuple(r)], self.root_index[tuple(s)]
        if add(r, s) not in self.root_index:
            raise LieAlgebraError("r + s is not a root")
        table = {k: dict(v) for k, v in self.table.items()}
        table[i][j] = {k: -c for k, c in table[i][j].items()}
        table[j][i] = {k: -c for k, c in table[j][i].items()}
        return LieAlgebra(self.system, table)

    def to_json(self) -> str:
        entries = []
        for i in range(self.dim):
            for j, z in sorted(self.table[i].items()):
                if i < j:
                    entries.append({"x": i, "y": j,
                                    "result": [[k, fmt(c)] for k, c in sorted(z.items())]})
        return json.dumps({
            "label": self.system.label,
            "dim": self.dim,
            "basis": [self.basis_label(k) for k in range(self.dim)],
            "constants": entries,
        })


@dataclass(frozen=True, eq=False)
class Element:
    algebra: LieAlgebra
    coeffs: Dict[int, Fraction]

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.coeffs)
        _axpy(out, 1, other.coeffs)
        return Element(self.algebra, out)

    def __sub__(self, other: "Element") -> "Element":
        out = dict(self.coeffs)
        _axpy(out, -1, other.coeffs)
        return Element(self.algebra, out)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __rmul__(self, c) -> "Element":
        c = Fraction(c)
        return Element(self.algebra, {k: c * a for k, a in self.coeffs.items()} if c else {})

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def __repr__(self) -> str:
        terms = [f"{fmt(c)}*{self.algebra.basis_label(k)}" for k, c in sorted(self.coeffs.items())]
        return " + ".join(terms) if terms else "0"


def build_chevalley(system: RootSystem) -> LieAlgebra:
    if not system.is_simply_laced:
        raise LieAlgebraError(f"{system.label} is not simply-laced")
    return LieAlgebra(system)


def bracket(x: Element, y: Element) -> Element:
    return x.algebra.bracket(x, y)


# -------------------------------------------------------------------- Jacobi


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triples: int
    witness: Optional[Tuple[int, int, int]] = None
    antisymmetry_witness: Optional[Tuple[int, int]] = None


def _jacobi_chunk(args) -> Tuple[int, Optional[Tuple[int, int, int]]]:
    table, dim, firsts = args
    count = 0

    def br(x: Sparse, k: int) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            z = table[i].get(k)
            if z:
                _axpy(out, a, z)
        return out

    for i in firsts:
        ti = table[i]
        for j in range(i + 1, dim):
            xy = ti.get(j, {})
            tj = table[j]
            for k in range(j + 1, dim):
                count += 1
                total = br(xy, k)
                yz = tj.get(k)
                if yz:
                    _axpy(total, 1, br(yz, i))
                zx = table[k].get(i)
                if zx:
                    _axpy(total, 1, br(zx, j))
                if total:
                    return count, (i, j, k)
    return count, None


def verify_jacobi(L: LieAlgebra, jobs: int = 1) -> JacobiReport:
    """Antisymmetry on basis pairs, then Jacobi on every unordered basis triple."""
    for i in range(L.dim):
        if L.table[i].get(i):
            return JacobiReport(False, 0, antisymmetry_witness=(i, i))
        for j, z in L.table[i].items():
            back = L.table[j].get(i, {})
            if {k: -c for k, c in z.items()} != back:
                return JacobiReport(False, 0, antisymmetry_witness=(i, j))
    firsts = list(range(L.dim))
    if jobs <= 1:
        n, w = _jacobi_chunk((L.table, L.dim, firsts))
        return JacobiReport(w is None, n, w)
    # interleave so that every worker gets a similar share of triples
    chunks = [firsts[p::jobs] for p in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_jacobi_chunk, [(L.table, L.dim, c) for c in chunks]))
    witnesses = sorted(w for _, w in results if w is not None)
    total = sum(n for n, _ in results)
    if witnesses:
        return JacobiReport(False, total, witnesses[0])
    return JacobiReport(True, total)


# --------------------------------------------------------------- subalgebras


class Subalgebra:
    """A subspace given by a spanning set, held as a reduced row basis."""

    def __init__(self, algebra: LieAlgebra, spanning: Iterable[Sparse]):
        self.algebra = algebra
        self.space = RowSpace(spanning)

    def __repr__(self) -> str:
        return f"Subalgebra(dim {self.dim} in {self.algebra!r})"

    @property
    def dim(self) -> int:
        return len(self.space)

    @property
    def basis(self) -> List[Sparse]:
        return self.space.rows

    def contains(self, x) -> bool:
        if isinstance(x, Element):
            x = x.coeffs
        return self.space.contains(x)

    def closure_certificate(self) -> Optional[Tuple[int, int]]:
        """None when closed under the bracket; otherwise a failing basis pair."""
        rows = self.basis
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                if not self.space.contains(self.algebra.bracket_sparse(rows[a], rows[b])):
                    return (a, b)
        return None

    def is_subalgebra(self) -> bool:
        return self.closure_certificate() is None

    def is_abelian(self) -> bool:
        rows = self.basis
        return all(not self.algebra.bracket_sparse(rows[a], rows[b])
                   for a in range(len(rows)) for b in range(a + 1, len(rows)))

    def root_part(self) -> List[Vector]:
        """Roots r with e_r in the subspace."""
        return [r for r, k in self.algebra.root_index.items() if self.space.contains({k: 1})]

    def cartan_part_dim(self) -> int:
        """Dimension of the intersection with the Cartan subalgebra."""
        rank = self.algebra.rank
        rows = [{k: c for k, c in row.items() if k >= rank} for row in self.basis]
        # dim(S cap h) = dim S - dim(projection of S onto root spaces)
        return self.dim - len(RowSpace(rows))

    def root_type(self) -> str:
        return self.algebra.system.subsystem(self.root_part()).label if self.root_part() else "∅"


def cartan_subalgebra(L: LieAlgebra) -> Subalgebra:
    return Subalgebra(L, ({i: Fraction(1)} for i in range(L.rank)))


def span_of_roots(L: LieAlgebra, roots: Iterable[Sequence], coroots: Iterable[Sequence] = ()) -> Subalgebra:
    """span{e_r : r in roots} + span{h_s : s in coroots}."""
    rows = [{L.root_index[tuple(r)]: Fraction(1)} for r in roots]
    rows += [L.coroot(s) for s in coroots]
    return Subalgebra(L, rows)


@dataclass(frozen=True)
class GradedPieces:
    minus: Subalgebra
    zero: Subalgebra
    plus: Subalgebra


def graded_pieces(L: LieAlgebra, g) -> GradedPieces:
    """g(-1), g(0), g(1) for a 3-grading of L's system or of a subsystem of it.

    g(0) contains the coroots of the grading's own simple roots, so for a
    subsystem grading the pieces live inside the subalgebra it generates.
    """
    roots = L.system.root_set
    if not set(g.system.roots) <= roots:
        raise LieAlgebraError("grading does not belong to this algebra's root system")
    minus = span_of_roots(L, g.minus)
    zero = span_of_roots(L, g.zero, g.system.simple_roots)
    plus = span_of_roots(L, g.plus)
    return GradedPieces(minus, zero, plus)


def check_graded_pieces(L: LieAlgebra, pieces: GradedPieces) -> List[str]:
    """[g(i), g(j)] in g(i+j), with g(+-2) = 0. Returns failure messages."""
    parts = {-1: pieces.minus, 0: pieces.zero, 1: pieces.plus}
    failures = []
    for i, j in ((-1, -1), (-1, 0), (-1, 1), (0, 0), (0, 1), (1, 1)):
        target = parts.get(i + j)
        for x in parts[i].basis:
            for y in parts[j].basis:
                z = L.bracket_sparse(x, y)
                if z and (target is None or not target.contains(z)):
                    failures.append(f"[g({i}), g({j})] not in g({i + j})")
                    break
            else:
                continue
            break
    return failures


def derived_subalgebra(S: Subalgebra) -> Subalgebra:
    rows = S.basis
    L = S.algebra
    return Subalgebra(L, (L.bracket_sparse(rows[a], rows[b])
                          for a in range(len(rows)) for b in range(a + 1, len(rows))))


def centralizer(L: LieAlgebra, spanning: Iterable) -> Subalgebra:
    """{x in L : [x, s] = 0 for every s}, by exact nullspace solving."""
    if isinstance(spanning, Subalgebra):
        spanning = spanning.basis
    spanning = [s.coeffs if isinstance(s, Element) else s for s in spanning]
    equations: Dict[Tuple[int, int], Sparse] = {}
    for k in range(L.dim):
        for a, s in enumerate(spanning):
            for m, c in L.bracket_sparse({k: Fraction(1)}, s).items():
                equations.setdefault((a, m), {})[k] = c
    return Subalgebra(L, nullspace(equations.values(), L.dim))


def center(S: Subalgebra) -> Subalgebra:
    """{x in S : [x, S] = 0}."""
    L = S.algebra
    rows = S.basis
    equations: Dict[Tuple[int, int], Sparse] = {}
    for j, x in enumerate(rows):
        for a, s in enumerate(rows):
            for m, c in L.bracket_sparse(x, s).items():
                equations.setdefault((a, m), {})[j] = c
    coeffs = nullspace(equations.values(), len(rows))
    out = []
    for y in coeffs:
        v: Sparse = {}
        for j, c in y.items():
            _axpy(v, c, rows[j])
        out.append(v)
    return Subalgebra(L, out)


def cartan_eigenvalue(system: RootSystem, labels: Sequence, r: Sequence) -> Fraction:
    """sum_i a_i <s_i, r>: the eigenvalue of sum a_i h_i on e_r."""
    if len(labels) != system.rank:
        raise RootSystemError("label vector does not match the rank")
    return sum((Fraction(a) * system.ip(s, r) for a, s in zip(labels, system.simple_roots)),
               Fraction(0))
