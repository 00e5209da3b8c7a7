"""Coweight gradings, 3-gradings, nested sequences and the grading mesh."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .graphs import Graph, GraphCheckError, find_isomorphism, local_subgraph, neighbourhoods_isomorphic
from .lines import LineSystem, LineSystemError, line, lines_of, star_closure
from .roots import (
    EMPTY_LABEL,
    RootSystem,
    RootSystemError,
    Vector,
    add,
    build_simply_laced,
    catalog_labels,
    neg,
    parse_label,
    sub,
)


class GradingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Coweight:
    """A vector pairing integrally with every root, in ambient coordinates."""

    system: RootSystem
    vector: Tuple[Fraction, ...]

    def pairing(self, v: Sequence) -> Fraction:
        return Fraction(self.system.ip(v, self.vector))

    @cached_property
    def coefficients(self) -> Tuple[Fraction, ...]:
        """Coefficients over the simple roots of ``system``."""
        return self.system.simple_coords(self.vector)

    @property
    def is_coweight(self) -> bool:
        return all(self.pairing(r).denominator == 1 for r in self.system.roots)

    @property
    def is_minuscule(self) -> bool:
        return all(self.pairing(r) in (-1, 0, 1) for r in self.system.roots)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coweight) and self.vector == other.vector

    def __hash__(self) -> int:
        return hash(self.vector)


def coweight(system: RootSystem, labels: Sequence) -> Coweight:
    """The vector sum(labels[i] * s_i) over the simple roots of ``system``."""
    if len(labels) != system.rank:
        raise GradingError("label count does not match the rank")
    vec = system.from_simple_coords([Fraction(x) for x in labels])
    return Coweight(system, tuple(Fraction(x) for x in vec))


def fundamental_coweight(system: RootSystem, node: int) -> Coweight:
    """The coweight pairing to 1 with simple root ``node`` and 0 with the others."""
    from .linalg import inverse

    inv = inverse(system.simple_gram)
    return coweight(system, [inv[i][node] for i in range(system.rank)])


@dataclass(frozen=True, eq=False)
class ZGrading:
    system: RootSystem
    coweight: Coweight
    parts: Dict[int, Tuple[Vector, ...]]

    @property
    def indices(self) -> List[int]:
        return sorted(self.parts)


def grading_from_coweight(system: RootSystem, q) -> ZGrading:
    """Split the roots by their integer pairing with ``q``."""
    if not isinstance(q, Coweight):
        q = Coweight(system, tuple(Fraction(x) for x in q))
    parts: Dict[int, List[Vector]] = {}
    for r in system.roots:
        p = q.pairing(r)
        if p.denominator != 1:
            raise GradingError(f"pairing {p} with root {r} is not an integer")
        parts.setdefault(int(p), []).append(r)
    return ZGrading(system, q, {i: tuple(rs) for i, rs in sorted(parts.items())})


# --------------------------------------------------------------------------
# 3-gradings

GRADING_NAMES = (
    "rectangular",
    "hermitian",
    "odd quadratic",
    "even quadratic",
    "alternating",
    "Albert",
    "bi-Cayley",
)


@dataclass(frozen=True, eq=False)
class ThreeGrading:
    system: RootSystem
    node: Optional[int]
    minus: Tuple[Vector, ...]
    zero: Tuple[Vector, ...]
    plus: Tuple[Vector, ...]
    name: str = ""
    coweight: Optional[Coweight] = None

    @property
    def weight(self) -> int:
        return len(self.plus)

    @cached_property
    def zero_system(self) -> RootSystem:
        return self.system.subsystem(self.zero)

    @property
    def zero_type(self) -> str:
        if not self.zero:
            return EMPTY_LABEL
        return self.zero_system.label

    @property
    def source_type(self) -> str:
        return self.system.label

    def part(self, i: int) -> Tuple[Vector, ...]:
        return {-1: self.minus, 0: self.zero, 1: self.plus}.get(i, ())

    def describe(self) -> dict:
        return {"source": self.source_type, "target": self.zero_type,
                "weight": self.weight, "name": self.name}


def _grading_name(system: RootSystem, node: int) -> str:
    family, n = system.components[0]
    if family == "A":
        return "rectangular"
    if family == "B":
        return "odd quadratic"
    if family == "C":
        return "hermitian"
    if family == "D":
        return "even quadratic" if node == 0 else "alternating"
    if (family, n) == ("E", 6):
        return "bi-Cayley"
    if (family, n) == ("E", 7):
        return "Albert"
    raise GradingError(f"{system.label} has no 3-grading")


def three_grading(system: RootSystem, node: int) -> ThreeGrading:
    """The 3-grading from the fundamental coweight of a simple root.

    Raises if that simple root has coefficient other than 1 in the highest root.
    """
    if not system.is_irreducible:
        raise GradingError("3-gradings are enumerated for irreducible systems")
    q = fundamental_coweight(system, node)
    z = grading_from_coweight(system, q)
    if set(z.parts) - {-1, 0, 1}:
        raise GradingError(f"node {node} is not minuscule")
    return ThreeGrading(system, node, z.parts.get(-1, ()), z.parts.get(0, ()),
                        z.parts.get(1, ()), _grading_name(system, node), q)


@lru_cache(maxsize=None)
def _highest_coefficients(system: RootSystem) -> Tuple[Fraction, ...]:
    return system.simple_coords(system.highest_root)


def enumerate_three_gradings(system: RootSystem) -> List[ThreeGrading]:
    """One 3-grading per simple root with coefficient 1 in the highest root."""
    if not system.is_irreducible:
        raise GradingError("3-gradings are enumerated for irreducible systems")
    coeffs = _highest_coefficients(system)
    return [three_grading(system, j) for j, c in enumerate(coeffs) if c == 1]


def grading_census(system: RootSystem) -> List[Tuple[int, str, str]]:
    """(weight, zero type, name) per 3-grading, up to diagram automorphism."""
    seen = {}
    for g in enumerate_three_gradings(system):
        seen.setdefault((g.weight, g.zero_type), g.name)
    return sorted(((w, t, n) for (w, t), n in seen.items()), reverse=True)


@dataclass(frozen=True)
class GradingCheck:
    ok: bool
    failures: Tuple[str, ...] = ()


def verify_three_grading(g: ThreeGrading) -> GradingCheck:
    """Check the sum, difference and symmetry axioms exhaustively."""
    roots = g.system.root_set
    degree: Dict[Vector, int] = {}
    failures: List[str] = []
    for i in (-1, 0, 1):
        for r in g.part(i):
            if r in degree:
                failures.append(f"root {r} lies in two parts")
            degree[r] = i
    if set(degree) != roots:
        failures.append("parts do not cover the root system")
    for a, b in combinations(sorted(roots), 2):
        s = add(a, b)
        if s in roots and s in degree:
            if degree.get(a, 9) + degree.get(b, 9) != degree[s]:
                failures.append(f"sum axiom: {a} + {b}")
    plus = set(g.plus)
    diffs = {sub(a, b) for a in plus for b in plus if a != b} & roots
    if diffs != set(g.zero):
        failures.append("difference axiom: roots(plus - plus) != zero part")
    if {neg(r) for r in g.plus} != set(g.minus):
        failures.append("minus part is not the negative of the plus part")
    return GradingCheck(not failures, tuple(failures[:20]))


@dataclass(frozen=True)
class BinaryDecomposition:
    zero: LineSystem
    one: LineSystem


def binary_decomposition(g: ThreeGrading) -> BinaryDecomposition:
    """Star-closed zero part and star-free one part, with closure of the latter checked."""
    full = lines_of(g.system)
    zero = LineSystem(g.system, g.zero)
    one = LineSystem(g.system, g.plus)
    if not zero.is_star_closed():
        raise GradingError("zero part is not star-closed")
    if not one.is_star_free():
        raise GradingError("one part contains a star")
    if star_closure(one) != full:
        raise GradingError("star closure of the one part is not the whole system")
    return BinaryDecomposition(zero, one)


def decomposition_graph(g: ThreeGrading) -> Graph:
    """Non-orthogonality graph on the lines of the one part."""
    one = LineSystem(g.system, g.plus)
    graph = one.non_orthogonality_graph()
    if not neighbourhoods_isomorphic(graph):
        raise GraphCheckError("decomposition graph neighbourhoods are not all isomorphic")
    return graph


# --------------------------------------------------------------------------
# sequences


class GradingSequence:
    """Arrows whose zero parts are exactly the next arrow's root system."""

    def __init__(self, arrows: Sequence[ThreeGrading]):
        arrows = tuple(arrows)
        if not arrows:
            raise GradingError("empty sequence")
        for a, b in zip(arrows, arrows[1:]):
            if a.system.gram != b.system.gram or set(a.zero) != b.system.root_set:
                raise GradingError(
                    f"invalid nesting: zero part of {a.source_type} arrow is not {b.source_type}")
        self.arrows = arrows

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def labels(self) -> List[str]:
        return [self.arrows[0].source_type] + [a.zero_type for a in self.arrows]

    @property
    def weights(self) -> List[int]:
        return [a.weight for a in self.arrows]

    def describe(self) -> List[dict]:
        return [a.describe() for a in self.arrows]

    def __repr__(self) -> str:
        parts = [self.labels[0]]
        for a in self.arrows:
            parts.append(f"-{a.weight}-> {a.zero_type}")
        return "GradingSequence(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class LocalityStep:
    source: str
    target: str
    mapping: Optional[Dict[int, int]]


def is_local_sequence(seq: GradingSequence) -> Tuple[bool, List[LocalityStep]]:
    """Each arrow's graph must be isomorphic to the local subgraph of the previous one."""
    steps = []
    ok = True
    graphs = [decomposition_graph(a) for a in seq.arrows]
    for a, g, h in zip(seq.arrows[1:], graphs, graphs[1:]):
        try:
            local = local_subgraph(g)
            mapping = find_isomorphism(h, local)
        except GraphCheckError:
            mapping = None
        steps.append(LocalityStep(a.source_type, a.zero_type, mapping))
        ok = ok and mapping is not None
    return ok, steps


def is_maximal_sequence(seq: GradingSequence) -> bool:
    return all(
        a.weight == max(g.weight for g in enumerate_three_gradings(a.system))
        for a in seq.arrows
    )


EXCEPTIONAL_LABELS = ["E7", "E6", "D5", "A4", "A1xA2"]


def exceptional_sequence() -> GradingSequence:
    """E7 -> E6 -> D5 -> A4 -> A1xA2 inside E7, dropping nodes 7, 6, 5, 4 in turn."""
    e7 = build_simply_laced("E7")
    arrows = []
    current = e7
    for k in (7, 6, 5, 4):
        s = tuple(int(i == k - 1) for i in range(7))
        node = current.simple_roots.index(s)
        g = three_grading(current, node)
        arrows.append(g)
        current = g.zero_system
    return GradingSequence(arrows)


# --------------------------------------------------------------------------
# the mesh


@dataclass(frozen=True, order=True)
class Arrow:
    source: str
    target: str
    weight: int
    name: str

    def to_dict(self) -> dict:
        return {"source": self.source, "target": self.target,
                "weight": self.weight, "name": self.name}


@lru_cache(maxsize=None)
def _arrows_from(label: str, nonempty_zero: bool) -> Tuple[Arrow, ...]:
    system = build_simply_laced(label)
    out = {}
    for g in enumerate_three_gradings(system):
        if nonempty_zero and not g.zero:
            continue
        out.setdefault((g.zero_type, g.weight), g.name)
    return tuple(sorted(Arrow(label, t, w, n) for (t, w), n in out.items()))


def _node_key(label: str):
    comps = parse_label(label)
    return (sum(n for _, n in comps), len(comps), label)


@dataclass(frozen=True)
class GradingMesh:
    max_rank: int
    nodes: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def successors(self, node: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == node]

    def targets(self) -> set:
        return {a.target for a in self.arrows}

    def paths_from(self, node: str) -> List[List[Arrow]]:
        """All paths from ``node`` that end at a node with no outgoing arrows."""
        out = self.successors(node)
        if not out:
            return [[]]
        return [[a] + rest for a in out for rest in self.paths_from(a.target)]

    def to_dot(self) -> str:
        lines = ["digraph mesh {", "  rankdir=LR;"]
        for n in self.nodes:
            lines.append(f'  "{n}";')
        for a in self.arrows:
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.weight}", weight={a.weight}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"max_rank": self.max_rank, "nodes": list(self.nodes),
                           "arrows": [a.to_dict() for a in self.arrows]}, indent=2)


def build_mesh(max_rank: int, nonempty_zero: bool = True) -> GradingMesh:
    """Arrows of all 3-gradings of irreducible simply-laced types up to ``max_rank``."""
    if not 1 <= max_rank <= 9:
        raise GradingError("max_rank must be between 1 and 9")
    arrows = []
    nodes = set()
    for label in catalog_labels(max_rank):
        nodes.add(label)
        for a in _arrows_from(label, nonempty_zero):
            arrows.append(a)
            nodes.add(a.target)
    return GradingMesh(max_rank, tuple(sorted(nodes, key=_node_key)), tuple(sorted(arrows)))


def realize(path: Sequence[Arrow]) -> GradingSequence:
    """Concrete nested sequence of root subsets following a mesh path."""
    current = build_simply_laced(path[0].source)
    arrows = []
    for a in path:
        if current.label != a.source:
            raise GradingError(f"path breaks at {a.source}")
        g = next((g for g in enumerate_three_gradings(current)
                  if g.weight == a.weight and g.zero_type == a.target), None)
        if g is None:
            raise GradingError(f"no grading of {a.source} matches {a}")
        arrows.append(g)
        current = g.zero_system
    return GradingSequence(arrows)


def maximal_path(mesh: GradingMesh, source: str) -> List[Arrow]:
    path = []
    node = source
    while True:
        out = mesh.successors(node)
        if not out:
            return path
        best = max(out, key=lambda a: (a.weight, a.target))
        path.append(best)
        node = best.target


def path_labels(path: Sequence[Arrow]) -> List[str]:
    return [path[0].source] + [a.target for a in path] if path else []


@lru_cache(maxsize=None)
def _step_is_local(first: Arrow, second: Arrow) -> bool:
    # the graph of an arrow is fixed up to isomorphism by (source, target, weight)
    return is_local_sequence(realize([first, second]))[0]


def path_is_local(path: Sequence[Arrow]) -> bool:
    """Locality of a mesh path, decided one consecutive pair at a time."""
    return all(_step_is_local(a, b) for a, b in zip(path, path[1:]))


def local_sequence_census(max_rank: int) -> List[List[str]]:
    """Local paths ending at a sink that are not a proper suffix of a longer local path."""
    mesh = build_mesh(max_rank)
    local = []
    for node in mesh.nodes:
        for path in mesh.paths_from(node):
            if path and path_is_local(path):
                local.append(path_labels(path))
    keep = []
    for p in local:
        if not any(len(q) > len(p) and q[len(q) - len(p):] == p for q in local):
            keep.append(p)
    return sorted(keep, key=lambda p: (-len(p), p))


@dataclass(frozen=True)
class UniquenessReport:
    max_rank: int
    sources: Tuple[str, ...]
    paths: Tuple[Tuple[str, ...], ...]
    local: Tuple[bool, ...]
    maximal: Tuple[bool, ...]

    @property
    def local_paths(self) -> List[Tuple[str, ...]]:
        return [p for p, ok in zip(self.paths, self.local) if ok]

    @property
    def maximal_paths(self) -> List[Tuple[str, ...]]:
        return [p for p, ok in zip(self.paths, self.maximal) if ok]

    @property
    def ok(self) -> bool:
        star = tuple(EXCEPTIONAL_LABELS)
        return self.local_paths == [star] and self.maximal_paths == [star]

    def to_dict(self) -> dict:
        return {
            "max_rank": self.max_rank,
            "non_extendable_sources": list(self.sources),
            "extendability_note": "A_n and D_n at the rank bound are extendable by A_{n+1}, "
                                  "D_{n+1}; E7 is not, because E8 admits no 3-grading",
            "sequences": [{"path": list(p), "local": l, "maximal": m}
                          for p, l, m in zip(self.paths, self.local, self.maximal)],
            "ok": self.ok,
        }


def verify_exceptional_uniqueness(max_rank: int = 8) -> UniquenessReport:
    """Enumerate non-extendable sequences and test which are local and which maximal.

    A node is extendable when it is the zero part of some arrow in the mesh
    one rank larger, so the infinite A and D families are not cut off
    artificially at the bound.
    """
    mesh = build_mesh(max_rank)
    bigger = build_mesh(max_rank + 1)
    sources = tuple(n for n in mesh.nodes
                    if mesh.successors(n) and n not in bigger.targets())
    paths, local, maximal = [], [], []
    for s in sources:
        for p in mesh.paths_from(s):
            seq = realize(p)
            paths.append(tuple(path_labels(p)))
            local.append(is_local_sequence(seq)[0])
            maximal.append(is_maximal_sequence(seq))
    return UniquenessReport(max_rank, sources, tuple(paths), tuple(local), tuple(maximal))


# --------------------------------------------------------------------------
# minuscule coweights of E7


def _orbit(system: RootSystem, v: tuple) -> List[tuple]:
    seen = {v}
    order = [v]
    k = 0
    while k < len(order):
        w = order[k]
        k += 1
        for s in system.simple_roots:
            x = system.reflect(s, w)
            x = tuple(Fraction(c) for c in x)
            if x not in seen:
                seen.add(x)
                order.append(x)
    return sorted(order)


def minuscule_orbit(system: RootSystem) -> List[Coweight]:
    """Weyl orbit of the minuscule fundamental coweight (E7: 56 elements)."""
    if system.label != "E7":
        raise GradingError("minuscule orbit is provided for E7")
    q = fundamental_coweight(system, 6)
    return [Coweight(system, v) for v in _orbit(system, q.vector)]


def exceptional_acute_coweights(system: RootSystem) -> List[Coweight]:
    """Four pairwise-acute minuscule coweights cutting out E6, D5, A4, A1xA2."""
    q = fundamental_coweight(system, 6)
    out = [q]
    v = q.vector
    for node in (6, 5, 4):
        v = tuple(Fraction(c) for c in system.reflect(system.simple_roots[node], v))
        out.append(Coweight(system, v))
    return out


def orthogonal_subsystem(system: RootSystem, coweights: Sequence[Coweight]) -> RootSystem:
    """Roots orthogonal to every given coweight; the coweights must be pairwise acute."""
    for a, b in combinations(coweights, 2):
        if system.ip(a.vector, b.vector) <= 0:
            raise GradingError("coweights are not pairwise acute")
    roots = [r for r in system.roots if all(system.ip(r, q.vector) == 0 for q in coweights)]
    return system.subsystem(roots)
