"""Line systems of type (0, 1/2) spanned by norm-2 roots.

A line is stored as its canonical representative: the member of ``{r, -r}``
whose first nonzero coordinate is positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graphs import (
    Graph,
    GraphCheckError,
    cocktail_party,
    complete_graph,
    diameter,
    disjoint_union,
    find_isomorphism,
    girth,
    maximal_independent_sets,
    srg_check,
)
from .linalg import rank, sqrt_fraction
from .roots import RootSystem, Vector, dual, dot, lex_positive, neg

Line = Vector


class LineSystemError(ValueError):
    """Input violates a line-system property the operation relies on."""


def line(v: Sequence) -> Line:
    v = tuple(v)
    return v if lex_positive(v) else neg(v)


@dataclass(frozen=True, eq=False)
class LineSystem:
    """Lines in the ambient space of ``system`` (used for its Gram form)."""

    system: RootSystem
    lines: Tuple[Line, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(sorted({line(v) for v in self.lines})))

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __contains__(self, v) -> bool:
        return line(v) in self.line_set

    def __eq__(self, other) -> bool:
        return isinstance(other, LineSystem) and self.lines == other.lines

    def __hash__(self) -> int:
        return hash(self.lines)

    @cached_property
    def line_set(self) -> frozenset:
        return frozenset(self.lines)

    @cached_property
    def gram(self) -> Tuple[Tuple[int, ...], ...]:
        duals = [dual(self.system.gram, v) for v in self.lines]
        return tuple(tuple(dot(d, w) for w in self.lines) for d in duals)

    def third(self, a: Line, b: Line) -> Line:
        """The third line of the star through two lines at 60 degrees."""
        c = self.system.ip(a, b)
        return line(tuple(x - c * y for x, y in zip(a, b)))

    def non_orthogonality_graph(self) -> Graph:
        g = self.gram
        return Graph.from_adjacency(len(self.lines), lambda i, j: g[i][j] != 0)

    def check_type(self) -> None:
        """Raise unless all lines share a norm and every pair is at 90 or 60 degrees."""
        g = self.gram
        norms = {g[i][i] for i in range(len(g))}
        if len(norms) > 1:
            raise LineSystemError("representatives have mixed norms")
        for i, j in combinations(range(len(g)), 2):
            if 2 * abs(g[i][j]) not in (0, g[i][i]):
                raise LineSystemError(f"lines {i}, {j} are not at 60 or 90 degrees")

    def subsystem(self, lines: Iterable[Sequence]) -> "LineSystem":
        return LineSystem(self.system, tuple(lines))

    def stars(self) -> List[Tuple[Line, Line, Line]]:
        """Every star in the system, each listed once in canonical line order."""
        idx = {v: i for i, v in enumerate(self.lines)}
        g = self.gram
        out = []
        for i, j in combinations(range(len(self.lines)), 2):
            if g[i][j] == 0:
                continue
            k = idx.get(self.third(self.lines[i], self.lines[j]))
            if k is not None and k > j:
                out.append((self.lines[i], self.lines[j], self.lines[k]))
        return out

    def is_star_free(self) -> bool:
        return not self.stars()

    def is_star_closed(self) -> bool:
        g = self.gram
        return all(
            self.third(self.lines[i], self.lines[j]) in self.line_set
            for i, j in combinations(range(len(self.lines)), 2)
            if g[i][j] != 0
        )

    def is_indecomposable(self) -> bool:
        return self.non_orthogonality_graph().is_connected()


def lines_of(system: RootSystem) -> LineSystem:
    """The star-closed line system spanned by a simply-laced root system."""
    if not system.is_simply_laced:
        raise LineSystemError(f"{system.label} has roots of different norms")
    return LineSystem(system, tuple(r for r in system.roots if lex_positive(r)))


def star_closure(partial: LineSystem) -> LineSystem:
    """Smallest star-closed superset, staying inside the ambient root system."""
    ambient = {line(r) for r in partial.system.roots}
    ls = set(partial.lines)
    if not ls <= ambient:
        raise LineSystemError("input lines are not lines of the ambient root system")
    sys = partial.system
    frontier = list(ls)
    current = list(ls)
    while frontier:
        new = []
        fduals = [dual(sys.gram, a) for a in frontier]
        for a, da in zip(frontier, fduals):
            for b in current:
                c = dot(da, b)
                if c == 0 or a == b:
                    continue
                t = line(tuple(x - c * y for x, y in zip(a, b)))
                if t not in ls:
                    if t not in ambient:
                        raise LineSystemError("star closure escapes the ambient root system")
                    ls.add(t)
                    new.append(t)
        current.extend(new)
        frontier = new
    return LineSystem(sys, tuple(ls))


@dataclass(frozen=True)
class StarDecomposition:
    star: Tuple[Line, Line, Line]
    part_A: LineSystem
    part_B: LineSystem
    part_C: LineSystem
    part_D: LineSystem

    def sizes(self) -> Tuple[int, int, int, int]:
        return (len(self.part_A), len(self.part_B), len(self.part_C), len(self.part_D))


def star_decomposition(L: LineSystem, star: Sequence[Sequence]) -> StarDecomposition:
    """Partition ``L`` relative to a star ``{a, b, c}`` contained in it.

    Lines orthogonal to only ``a`` go to part A (likewise B, C); lines
    orthogonal to all three go to part D.
    """
    star = tuple(line(s) for s in star)
    if len(set(star)) != 3 or any(s not in L.line_set for s in star):
        raise LineSystemError("star is not contained in the line system")
    a, b, c = star
    if L.system.ip(a, b) == 0 or L.third(a, b) != c:
        raise LineSystemError("the given lines do not form a star")
    duals = [dual(L.system.gram, s) for s in star]
    parts: List[List[Line]] = [[], [], [], []]
    for v in L.lines:
        if v in star:
            continue
        orth = [dot(d, v) == 0 for d in duals]
        count = sum(orth)
        if count == 3:
            parts[3].append(v)
        elif count == 1:
            parts[orth.index(True)].append(v)
        else:
            raise LineSystemError(
                f"line {v} is orthogonal to {count} star members", )
    return StarDecomposition(star, *(LineSystem(L.system, tuple(p)) for p in parts))


def representation_graph(A: LineSystem) -> Tuple[Graph, Tuple[Vector, ...]]:
    """Sign choices with pairwise non-negative inner products, and the graph they represent.

    Signs are propagated along a spanning forest of the non-orthogonality
    graph and then every pair is re-checked.
    """
    if A.stars():
        raise LineSystemError("line system contains a star")
    n = len(A.lines)
    g = A.gram
    sign = [0] * n
    for root in range(n):
        if sign[root]:
            continue
        sign[root] = 1
        stack = [root]
        while stack:
            v = stack.pop()
            for w in range(n):
                if g[v][w] and not sign[w]:
                    sign[w] = sign[v] * (1 if g[v][w] > 0 else -1)
                    stack.append(w)
    for i, j in combinations(range(n), 2):
        if sign[i] * sign[j] * g[i][j] < 0:
            raise LineSystemError("no consistent non-negative sign choice", )
    reps = tuple(v if s > 0 else neg(v) for v, s in zip(A.lines, sign))
    graph = Graph.from_adjacency(n, lambda i, j: g[i][j] != 0)
    return graph, reps


@dataclass(frozen=True)
class IncidenceStructure:
    points: Tuple
    blocks: Tuple[Tuple[int, ...], ...]

    def to_json(self) -> str:
        return json.dumps({"points": [list(p) if isinstance(p, tuple) else p for p in self.points],
                           "blocks": [list(b) for b in self.blocks]})

    @property
    def is_trivial(self) -> bool:
        return not self.blocks


def triads_of(A: LineSystem) -> IncidenceStructure:
    """Triads of mutually orthogonal lines in a star-free system.

    Maximal independent sets of size one (lines orthogonal to nothing) are
    not triads and are skipped; any other size means an orthogonal pair does
    not extend to a triad, which cannot happen for valid input.
    """
    graph, _ = representation_graph(A)
    blocks = []
    for s in maximal_independent_sets(graph):
        if len(s) == 1:
            continue
        if len(s) != 3:
            raise LineSystemError(f"maximal orthogonal set of size {len(s)}: {s}")
        blocks.append(s)
    return IncidenceStructure(A.lines, tuple(blocks))


class GQError(ValueError):
    def __init__(self, axiom: str, detail: str = ""):
        super().__init__(f"{axiom}: {detail}" if detail else axiom)
        self.axiom = axiom


def gq_check(structure: IncidenceStructure) -> Tuple[int, int]:
    """Verify generalized quadrangle axioms and return (s, t)."""
    npts = len(structure.points)
    blocks = structure.blocks
    if npts == 0 or not blocks:
        raise GQError("nonempty", "no points or no blocks")
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise GQError("block size", f"sizes {sorted(sizes)}")
    deg = [0] * npts
    for b in blocks:
        for p in b:
            deg[p] += 1
    degs = set(deg)
    if len(degs) != 1 or 0 in degs:
        raise GQError("point degree", f"degrees {sorted(degs)}")
    nb: List[set] = [set() for _ in range(npts + len(blocks))]
    for k, b in enumerate(blocks):
        for p in b:
            nb[p].add(npts + k)
            nb[npts + k].add(p)
    d = diameter(nb)
    if d != 4:
        raise GQError("diameter", f"incidence graph diameter {d}")
    gi = girth(nb)
    if gi != 8:
        raise GQError("girth", f"incidence graph girth {gi}")
    return (sizes.pop() - 1, degs.pop() - 1)


# --------------------------------------------------------------------------
# equiangular lines


@dataclass(frozen=True)
class EquiangularReport:
    n: int
    d: int
    bound: int
    cos_squared: Fraction
    cos: Optional[Fraction]

    @property
    def meets_bound(self) -> bool:
        return self.n == self.bound


def equiangular_bound_check(vectors: Sequence[Sequence], gram, d: Optional[int] = None) -> EquiangularReport:
    """Check that the lines spanned by ``vectors`` are equiangular; compare with C(d+1, 2).

    ``d`` defaults to the dimension of the span. Vectors spanning the same
    line are merged.
    """
    lines: List[tuple] = []
    duals: List[tuple] = []
    for v in vectors:
        v = tuple(Fraction(x) for x in v)
        dv = dual(gram, v)
        nv = dot(dv, v)
        if nv <= 0:
            raise LineSystemError("degenerate vector")
        if any(dot(dv, w) ** 2 == nv * dot(dw, w) for w, dw in zip(lines, duals)):
            continue
        lines.append(v)
        duals.append(dv)
    if d is None:
        d = rank(lines)
    cos2 = None
    for i, j in combinations(range(len(lines)), 2):
        c = Fraction(dot(duals[i], lines[j]) ** 2,
                     1) / (dot(duals[i], lines[i]) * dot(duals[j], lines[j]))
        if cos2 is None:
            cos2 = c
        elif c != cos2:
            raise GraphCheckError("lines are not equiangular", witness=(i, j))
    cos2 = Fraction(0) if cos2 is None else cos2
    return EquiangularReport(len(lines), d, comb(d + 1, 2), cos2, sqrt_fraction(cos2))


# --------------------------------------------------------------------------
# classification of indecomposable star-closed systems

SRG_CASES = {
    (9, 4, 1, 2): ("c", "E6"),
    (15, 8, 4, 4): ("d", "E7"),
    (27, 16, 10, 8): ("e", "E8"),
}


@dataclass(frozen=True)
class Classification:
    case: str
    label: str
    graph: str
    part_A_size: int


def _is_cp_plus_vertex(g: Graph) -> Optional[int]:
    """m if ``g`` is CP(m) plus an isolated vertex, else None."""
    if g.n % 2 == 0:
        return None
    m = (g.n - 1) // 2
    target = disjoint_union(cocktail_party(m), Graph(1, frozenset()))
    return m if find_isomorphism(g, target) is not None else None


def classify_indecomposable(L: LineSystem, star: Optional[Sequence] = None) -> Classification:
    """Match the part-A graph of a star decomposition against the five cases."""
    if not L.is_indecomposable():
        raise LineSystemError("line system is decomposable")
    if not L.is_star_closed():
        raise LineSystemError("line system is not star-closed")
    if star is None:
        stars = L.stars()
        if not stars:
            raise LineSystemError("line system contains no star")
        star = stars[0]
    dec = star_decomposition(L, star)
    graph, _ = representation_graph(dec.part_A)
    n = graph.n
    if len(graph.edges) == comb(n, 2):
        return Classification("a", f"A{n + 2}", f"K{n}", n)
    m = _is_cp_plus_vertex(graph)
    if m is not None:
        return Classification("b", f"D{m + 3}", f"CP({m})+K1", n)
    try:
        params = srg_check(graph)
    except GraphCheckError:
        params = None
    if params in SRG_CASES:
        case, label = SRG_CASES[params]
        return Classification(case, label, "srg" + str(params).replace(" ", ""), n)
    raise LineSystemError("part A graph matches none of the five cases")
