"""Exact root systems: catalog construction, identification, lattice layers.

Vectors are integer tuples in a fixed ambient basis with an integral Gram
form. Catalog simply-laced systems use their own simple roots as the basis,
so a root's coordinates are its simple-root coefficients. Subsystems (and
the non-simply-laced systems built from lattice layers) keep the ambient
coordinates of the system they were cut from.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import inverse, short_vectors

Vector = Tuple[int, ...]
EMPTY_LABEL = "∅"
FAMILY_ORDER = "ABCDEFG"


class RootSystemError(ValueError):
    """Raised when input does not describe a supported root system."""


def neg(v: Sequence) -> tuple:
    return tuple(-x for x in v)


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def lex_positive(v: Sequence) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def bilinear(gram: Sequence[Sequence], u: Sequence, v: Sequence):
    return sum(u[i] * sum(g * y for g, y in zip(gram[i], v)) for i in range(len(u)) if u[i])


def dual(gram: Sequence[Sequence], v: Sequence) -> tuple:
    """``G v``, so that ``<u, v>`` is the plain dot product of ``u`` with it."""
    return tuple(sum(g * y for g, y in zip(row, v)) for row in gram)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# --------------------------------------------------------------------------
# labels and Cartan data


def parse_label(label: str) -> List[Tuple[str, int]]:
    """Split ``"A1xA2"`` (or ``"A1×A2"``) into ``[("A", 1), ("A", 2)]``."""
    label = label.strip().replace("×", "x").replace(" ", "")
    if label in ("", EMPTY_LABEL, "0"):
        return []
    parts = []
    for token in label.split("x"):
        m = re.fullmatch(r"([A-Ga-g])_?(\d+)", token)
        if not m:
            raise RootSystemError(f"unsupported label {label!r}")
        parts.append((m.group(1).upper(), int(m.group(2))))
    return parts


def format_label(components: Iterable[Tuple[str, int]]) -> str:
    comps = sorted(components, key=lambda c: (FAMILY_ORDER.index(c[0]), c[1]))
    if not comps:
        return EMPTY_LABEL
    return "x".join(f"{f}{n}" for f, n in comps)


def _simply_laced_edges(family: str, n: int) -> List[Tuple[int, int]]:
    if family == "A":
        if n < 1:
            raise RootSystemError(f"A{n} is not a root system")
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        # D2 = A1xA1 and D3 = A3 are accepted for internal use
        if n < 2:
            raise RootSystemError(f"D{n} is not supported")
        chain = [(i, i + 1) for i in range(n - 3)]
        if n >= 3:
            chain += [(n - 3, n - 2), (n - 3, n - 1)]
        return chain
    if family == "E":
        if n not in (6, 7, 8):
            raise RootSystemError(f"E{n} is not a finite root system")
        # Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to node 4
        edges = [(0, 2), (1, 3), (2, 3)]
        edges += [(i, i + 1) for i in range(3, n - 1)]
        return edges
    raise RootSystemError(f"{family}{n} is not simply laced")


def simply_laced_gram(family: str, n: int) -> Tuple[Tuple[int, ...], ...]:
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _simply_laced_edges(family, n):
        g[i][j] = g[j][i] = -1
    return tuple(tuple(row) for row in g)


def _euclid_gram(vectors: Sequence[Sequence]) -> List[List[Fraction]]:
    return [[sum(Fraction(a) * b for a, b in zip(u, v)) for v in vectors] for u in vectors]


def catalog_gram(family: str, n: int) -> List[List[Fraction]]:
    """Gram matrix of a standard simple system, Bourbaki node order."""
    if family in "ADE":
        return [[Fraction(x) for x in row] for row in simply_laced_gram(family, n)]

    def e(i: int, dim: int) -> List[Fraction]:
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    if family in "BC":
        if n < 2:
            raise RootSystemError(f"{family}{n} is not supported")
        simple = [[a - b for a, b in zip(e(i, n), e(i + 1, n))] for i in range(n - 1)]
        simple.append(e(n - 1, n) if family == "B" else [2 * x for x in e(n - 1, n)])
        return _euclid_gram(simple)
    if family == "G" and n == 2:
        return [[Fraction(2), Fraction(-3)], [Fraction(-3), Fraction(6)]]
    if family == "F" and n == 4:
        h = Fraction(1, 2)
        simple = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
        return _euclid_gram(simple)
    raise RootSystemError(f"unsupported label {family}{n}")


def cartan_matrix(gram: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(gram)
    return tuple(
        tuple(Fraction(2 * gram[i][j], 1) / gram[j][j] for j in range(n)) for i in range(n)
    )


def root_count(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1)
    if family in "BC":
        return 2 * n * n
    if family == "D":
        return 2 * n * (n - 1)
    return {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}[(family, n)]


def _catalog_for_rank(n: int) -> List[Tuple[str, int]]:
    out = [("A", n)]
    if n >= 2:
        out.append(("B", n))
    if n >= 3:
        out.append(("C", n))
    if n >= 4:
        out.append(("D", n))
    if n in (6, 7, 8):
        out.append(("E", n))
    if n == 4:
        out.append(("F", 4))
    if n == 2:
        out.append(("G", 2))
    return out


@lru_cache(maxsize=None)
def _catalog_cartan(family: str, n: int):
    return cartan_matrix(catalog_gram(family, n))


def _match_cartan(c, target) -> Optional[List[int]]:
    """Find a node bijection sigma with c[sigma[p]][sigma[q]] == target[p][q].

    Backtracking over catalog positions, pruned by node degree.
    """
    n = len(c)
    if len(target) != n:
        return None

    def degree(m, i):
        return sum(1 for j in range(n) if j != i and m[i][j] != 0)

    cdeg = [degree(c, i) for i in range(n)]
    tdeg = [degree(target, i) for i in range(n)]
    if sorted(cdeg) != sorted(tdeg):
        return None
    sigma: List[int] = []
    used = [False] * n

    def rec(p: int) -> bool:
        if p == n:
            return True
        for i in range(n):
            if used[i] or cdeg[i] != tdeg[p] or c[i][i] != target[p][p]:
                continue
            if all(c[i][sigma[q]] == target[p][q] and c[sigma[q]][i] == target[q][p]
                   for q in range(p)):
                used[i] = True
                sigma.append(i)
                if rec(p + 1):
                    return True
                sigma.pop()
                used[i] = False
        return False

    return sigma if rec(0) else None


# --------------------------------------------------------------------------
# root system objects


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A finite crystallographic root system in an integral lattice.

    ``gram`` is the ambient Gram form, ``simple_roots`` are ordered in
    Bourbaki order component by component, ``roots`` are in canonical order
    (positive roots by height then coordinates, followed by their negatives).
    """

    label: str
    gram: Tuple[Tuple[int, ...], ...]
    simple_roots: Tuple[Vector, ...]
    roots: Tuple[Vector, ...]

    def __repr__(self) -> str:
        return f"RootSystem({self.label}, {len(self.roots)} roots)"

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dim(self) -> int:
        return len(self.gram)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def index(self) -> Dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def positive_roots(self) -> Tuple[Vector, ...]:
        return tuple(r for r in self.roots if lex_positive(r))

    def ip(self, u: Sequence, v: Sequence):
        """Inner product under the ambient Gram form."""
        if len(u) != self.dim or len(v) != self.dim:
            raise RootSystemError("vector does not belong to this ambient space")
        return bilinear(self.gram, u, v)

    def norm(self, v: Sequence):
        return self.ip(v, v)

    def reflect(self, r: Sequence, v: Sequence) -> tuple:
        """Reflect ``v`` in the hyperplane orthogonal to root ``r``."""
        rr = self.norm(r)
        c = Fraction(2 * self.ip(r, v), rr)
        if c.denominator == 1:
            c = int(c)
        return tuple(a - c * b for a, b in zip(v, r))

    @cached_property
    def simple_gram(self) -> Tuple[Tuple[int, ...], ...]:
        s = self.simple_roots
        return tuple(tuple(self.ip(a, b) for b in s) for a in s)

    @cached_property
    def _to_simple(self) -> List[List[Fraction]]:
        # v = sum c_i s_i  <=>  <s_j, v> = sum_i c_i <s_j, s_i>
        return inverse(self.simple_gram)

    def simple_coords(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Coefficients of ``v`` (in the span of the roots) over the simple roots."""
        pairings = [self.ip(s, v) for s in self.simple_roots]
        return tuple(sum(a * p for a, p in zip(row, pairings)) for row in self._to_simple)

    def from_simple_coords(self, coeffs: Sequence) -> tuple:
        out = [0] * self.dim
        for c, s in zip(coeffs, self.simple_roots):
            if c:
                for i, x in enumerate(s):
                    out[i] += c * x
        return tuple(out)

    def height(self, r: Sequence) -> Fraction:
        return sum(self.simple_coords(r))

    @cached_property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=lambda r: (self.height(r), r))

    @cached_property
    def components(self) -> Tuple[Tuple[str, int], ...]:
        return tuple(parse_label(self.label))

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def is_simply_laced(self) -> bool:
        return len({self.norm(r) for r in self.roots}) <= 1

    def is_reflection_closed(self) -> bool:
        rs = self.root_set
        return all(self.reflect(r, s) in rs for r in self.roots for s in self.roots)

    def subsystem(self, roots: Iterable[Sequence]) -> "RootSystem":
        """The root subsystem on the given subset of roots, identified and ordered."""
        return from_roots(roots, self.gram)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "gram": [list(row) for row in self.gram],
            "roots": [list(r) for r in self.roots],
        }


def canonical_order(roots: Iterable[Sequence]) -> Tuple[Vector, ...]:
    roots = {tuple(r) for r in roots}
    pos = sorted((r for r in roots if lex_positive(r)), key=lambda r: (sum(r), r))
    return tuple(pos) + tuple(neg(r) for r in pos)


def _reflection_closure(gram, seeds: Sequence[Vector]) -> set:
    seen = set(seeds) | {neg(s) for s in seeds}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for s in seeds:
            ss = bilinear(gram, s, s)
            c = Fraction(2 * bilinear(gram, s, v), ss)
            if c.denominator != 1:
                raise RootSystemError("pairing is not integral")
            w = tuple(a - int(c) * b for a, b in zip(v, s))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


@lru_cache(maxsize=None)
def build_simply_laced(label: str) -> RootSystem:
    """Catalog system for ``An``, ``Dn``, ``En`` or a product such as ``A1xA2``.

    Roots are generated by closing the simple roots under simple reflections.
    """
    comps = parse_label(label)
    if not comps:
        raise RootSystemError("empty label")
    blocks = [simply_laced_gram(f, n) for f, n in comps]
    dim = sum(len(b) for b in blocks)
    gram = [[0] * dim for _ in range(dim)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                gram[off + i][off + j] = x
        off += len(b)
    gram_t = tuple(tuple(row) for row in gram)
    simple = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    roots = _reflection_closure(gram_t, simple)
    # D2, D3 are realised but named by their catalog type
    canonical = identify_type(roots, gram_t)
    expected = sum(2 * n * (n - 1) if f == "D" else root_count(f, n) for f, n in comps)
    if len(roots) != expected:
        raise RootSystemError(f"generated {len(roots)} roots for {label}, expected {expected}")
    return RootSystem(canonical, gram_t, simple, canonical_order(roots))


def inner_product(system: RootSystem, r: Sequence, s: Sequence):
    return system.ip(r, s)


def reflect(system: RootSystem, r: Sequence, s: Sequence) -> tuple:
    return system.reflect(r, s)


# --------------------------------------------------------------------------
# identification


def simple_system(roots: Iterable[Sequence], gram) -> List[Vector]:
    """Simple roots for the lexicographic positive system of ``roots``."""
    roots = {tuple(r) for r in roots}
    pos = [r for r in roots if lex_positive(r)]
    pos_set = set(pos)
    simple = []
    for r in pos:
        if not any(sub(r, a) in pos_set for a in pos if a != r):
            simple.append(r)
    return sorted(simple, key=lambda r: (sum(r), r))


def _split_components(simple: List[Vector], gram) -> List[List[Vector]]:
    n = len(simple)
    adj = [[j for j in range(n) if j != i and bilinear(gram, simple[i], simple[j]) != 0]
           for i in range(n)]
    seen = [False] * n
    comps = []
    for i in range(n):
        if seen[i]:
            continue
        comp, stack = [], [i]
        seen[i] = True
        while stack:
            k = stack.pop()
            comp.append(k)
            for j in adj[k]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append([simple[k] for k in sorted(comp)])
    return comps


def identify_components(roots: Iterable[Sequence], gram) -> List[Tuple[Tuple[str, int], List[Vector]]]:
    """Irreducible components as ``((family, rank), simple roots in Bourbaki order)``.

    Raises RootSystemError unless the input is a reflection-closed root set
    matching a catalog type.
    """
    roots = {tuple(r) for r in roots}
    if not roots:
        return []
    if any(neg(r) not in roots for r in roots):
        raise RootSystemError("not closed under negation")
    for r in roots:
        gr = dual(gram, r)
        rr = dot(gr, r)
        for s in roots:
            c, rem = divmod(2 * dot(gr, s), rr)
            if rem:
                raise RootSystemError("not crystallographic")
            if c and tuple(a - c * b for a, b in zip(s, r)) not in roots:
                raise RootSystemError("not closed under reflection")
    simple = simple_system(roots, gram)
    out = []
    for comp in _split_components(simple, gram):
        g = [[bilinear(gram, a, b) for b in comp] for a in comp]
        cm = cartan_matrix(g)
        for family, n in _catalog_for_rank(len(comp)):
            sigma = _match_cartan(cm, _catalog_cartan(family, n))
            if sigma is not None:
                out.append(((family, n), [comp[i] for i in sigma]))
                break
        else:
            raise RootSystemError("unknown Cartan matrix")
    out.sort(key=lambda c: (FAMILY_ORDER.index(c[0][0]), c[0][1], c[1][0]))
    total = sum(root_count(f, n) for (f, n), _ in out)
    if total != len(roots):
        raise RootSystemError(f"{len(roots)} roots do not form {format_label(c for c, _ in out)}")
    return out


def identify_type(roots: Iterable[Sequence], gram) -> str:
    """Isomorphism type label of a root set, e.g. ``"A1xA2"``; ``"∅"`` if empty."""
    return format_label(c for c, _ in identify_components(roots, gram))


def from_roots(roots: Iterable[Sequence], gram, label: Optional[str] = None) -> RootSystem:
    roots = {tuple(r) for r in roots}
    comps = identify_components(roots, gram)
    simple = tuple(s for _, ss in comps for s in ss)
    found = format_label(c for c, _ in comps)
    gram_t = tuple(tuple(row) for row in gram)
    return RootSystem(label or found, gram_t, simple, canonical_order(roots))


# --------------------------------------------------------------------------
# lattice layers and non-simply-laced systems

MAX_LAYER = 2


def lattice_norms(system: RootSystem, bound) -> Dict[int, List[Vector]]:
    """Nonzero lattice vectors of norm <= bound, grouped by norm.

    The lattice is the integer span of the simple roots; vectors are returned
    in ambient coordinates.
    """
    by_norm: Dict[int, List[Vector]] = {}
    for x in short_vectors(system.simple_gram, bound):
        v = system.from_simple_coords(x)
        by_norm.setdefault(system.norm(v), []).append(v)
    return by_norm


def lattice_layer(system: RootSystem, k: int) -> frozenset:
    """Lattice vectors of the k-th smallest positive norm (k <= 2)."""
    if not 1 <= k <= MAX_LAYER:
        raise RootSystemError(f"layer {k} is beyond the supported depth {MAX_LAYER}")
    bound = max(system.simple_gram[i][i] for i in range(system.rank))
    while True:
        by_norm = lattice_norms(system, bound)
        if len(by_norm) >= k:
            norm = sorted(by_norm)[k - 1]
            return frozenset(by_norm[norm])
        bound *= 2


def _orbit(system: RootSystem, v: Vector) -> set:
    seen = {v}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for r in system.simple_roots:
            x = system.reflect(r, w)
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return seen


def _long_frame(dn: RootSystem) -> set:
    """Layer-2 vectors of a D_n lattice forming the long roots of C_n.

    Picks the first layer-2 vector whose reflection preserves the D_n roots
    and takes its Weyl orbit under D_n.
    """
    roots = dn.root_set
    for v in sorted(lattice_layer(dn, 2)):
        vv = dn.norm(v)
        if all((2 * dn.ip(v, r)) % vv == 0 and dn.reflect(v, r) in roots for r in dn.roots):
            frame = _orbit(dn, v)
            lines = {max(w, neg(w)) for w in frame}
            if len(lines) == dn.rank and all(
                dn.ip(a, b) == 0 for a, b in itertools.combinations(lines, 2)
            ):
                return frame
    raise RootSystemError("no orthogonal frame of long roots found")


def build_non_simply_laced(label: str) -> RootSystem:
    """``Bn``, ``Cn``, ``G2`` or ``F4`` assembled from layers of simply-laced lattices."""
    comps = parse_label(label)
    if len(comps) != 1:
        raise RootSystemError(f"unsupported label {label!r}")
    family, n = comps[0]
    if family == "B" and n >= 2:
        base = build_simply_laced("x".join(["A1"] * n))
        roots = set(base.roots) | lattice_layer(base, 2)
    elif family == "C" and n >= 2:
        base = _build_dn(n)
        roots = set(base.roots) | _long_frame(base)
    elif family == "G" and n == 2:
        base = build_simply_laced("A2")
        roots = lattice_layer(base, 1) | lattice_layer(base, 2)
    elif family == "F" and n == 4:
        base = build_simply_laced("D4")
        roots = lattice_layer(base, 1) | lattice_layer(base, 2)
    else:
        raise RootSystemError(f"unsupported label {label!r}")
    system = from_roots(roots, base.gram, label=f"{family}{n}")
    if not system.is_reflection_closed():
        raise RootSystemError(f"{label} is not reflection-closed")
    return system


@lru_cache(maxsize=None)
def _build_dn(n: int) -> RootSystem:
    """D_n for any n >= 2 in its own simple-root basis (D2 = A1xA1, D3 = A3)."""
    gram = simply_laced_gram("D", n)
    simple = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    roots = _reflection_closure(gram, simple)
    return RootSystem(identify_type(roots, gram), gram, simple, canonical_order(roots))


def build(label: str) -> RootSystem:
    """Any supported system: simply-laced catalog types or B/C/G/F."""
    comps = parse_label(label)
    if len(comps) == 1 and comps[0][0] in "BCFG":
        return build_non_simply_laced(label)
    return build_simply_laced(label)


def catalog_labels(max_rank: int = 8) -> List[str]:
    """Irreducible simply-laced catalog labels up to ``max_rank``."""
    out = [f"A{n}" for n in range(1, max_rank + 1)]
    out += [f"D{n}" for n in range(4, max_rank + 1)]
    out += [f"E{n}" for n in (6, 7, 8) if n <= max_rank]
    return out
