"""Standard-model bookkeeping on the root spaces of e7.

Seven Cartan operators, written as rational labels over the E7 simple
roots, give each root space its hypercharge, isospin, colour, generation
and H eigenvalues. Roots are then sorted into three generations of
fermions, the bosons of g_SM, a right-handed neutrino sl3, exotics with
B = +-5/3 and extras with H = +-1.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .chevalley import LieAlgebra, Subalgebra, build_chevalley, cartan_eigenvalue, span_of_roots
from .gradings import Coweight, ZGrading, coweight, grading_from_coweight
from .lines import IncidenceStructure, LineSystem, gq_check, line, representation_graph, triads_of
from .linalg import fmt
from .roots import RootSystem, Vector, build_simply_laced, neg

F = Fraction

OPERATORS: Dict[str, Tuple[Fraction, ...]] = {
    "W0": (F(0), F(1, 2), F(0), F(0), F(0), F(0), F(0)),
    "lambda3": (F(1), F(0), F(0), F(0), F(0), F(0), F(0)),
    "sqrt3lambda8": (F(1), F(0), F(2), F(0), F(0), F(0), F(0)),
    "B": (F(2, 3), F(1), F(4, 3), F(2), F(0), F(0), F(0)),
    "rho3": (F(0), F(0), F(0), F(0), F(0), F(1), F(0)),
    "sqrt3rho8": (F(0), F(0), F(0), F(0), F(0), F(1), F(2)),
    "H": (F(1), F(3, 2), F(2), F(3), F(5, 2), F(5, 3), F(5, 6)),
}
OPERATOR_NAMES = ("B", "W0", "lambda3", "sqrt3lambda8", "rho3", "sqrt3rho8", "H")
SIGNATURE = ("B", "W0", "lambda3", "sqrt3lambda8")


@dataclass(frozen=True)
class TableRow:
    name: str
    symbol: str
    B: Fraction
    W0: Fraction
    lambda3: Fraction
    sqrt3lambda8: Fraction

    @property
    def signature(self) -> Tuple[Fraction, ...]:
        return (self.B, self.W0, self.lambda3, self.sqrt3lambda8)


def _row(name, symbol, b, w, l3, l8) -> TableRow:
    return TableRow(name, symbol, F(b), F(w), F(l3), F(l8))


PARTICLE_TABLE: Tuple[TableRow, ...] = (
    _row("Right-handed neutrino", "nu_R", 0, 0, 0, 0),
    _row("Right-handed electron", "e_R", -2, 0, 0, 0),
    _row("Right-handed red up quark", "u_R^r", F(4, 3), 0, -1, -1),
    _row("Right-handed green up quark", "u_R^g", F(4, 3), 0, 1, -1),
    _row("Right-handed blue up quark", "u_R^b", F(4, 3), 0, 0, 2),
    _row("Right-handed red down quark", "d_R^r", F(-2, 3), 0, -1, -1),
    _row("Right-handed green down quark", "d_R^g", F(-2, 3), 0, 1, -1),
    _row("Right-handed blue down quark", "d_R^b", F(-2, 3), 0, 0, 2),
    _row("Left-handed neutrino", "nu_L", -1, F(1, 2), 0, 0),
    _row("Left-handed electron", "e_L", -1, F(-1, 2), 0, 0),
    _row("Left-handed red up quark", "u_L^r", F(1, 3), F(1, 2), -1, -1),
    _row("Left-handed green up quark", "u_L^g", F(1, 3), F(1, 2), 1, -1),
    _row("Left-handed blue up quark", "u_L^b", F(1, 3), F(1, 2), 0, 2),
    _row("Left-handed red down quark", "d_L^r", F(1, 3), F(-1, 2), -1, -1),
    _row("Left-handed green down quark", "d_L^g", F(1, 3), F(-1, 2), 1, -1),
    _row("Left-handed blue down quark", "d_L^b", F(1, 3), F(-1, 2), 0, 2),
)

COLOURS = {
    (F(0), F(2)): "blue",
    (F(-1), F(-1)): "red",
    (F(1), F(-1)): "green",
    (F(0), F(-2)): "anti-blue",
    (F(1), F(1)): "anti-red",
    (F(-1), F(1)): "anti-green",
    (F(0), F(0)): "colourless",
}
GLUON_PAIRS = {(F(2), F(0)), (F(-1), F(3)), (F(-1), F(-3))}

GENERATIONS = {
    (F(0), F(2)): 1,
    (F(1), F(1)): 2,
    (F(1), F(-1)): 3,
}

# the neutrino sl3 is oriented like the gluon pairs: these are its particles
NEUTRINO_PARTICLE_PAIRS = GLUON_PAIRS

# the published triad list, in printed order
PUBLISHED_TRIADS: Tuple[Tuple[str, str, str], ...] = (
    ("nu_L", "u_L^r", "u_R^r"), ("nu_L", "u_L^g", "u_R^g"), ("nu_L", "u_L^b", "u_R^b"),
    ("e_L", "d_L^r", "u_R^r"), ("e_L", "d_L^g", "u_R^g"), ("e_L", "d_L^b", "u_R^b"),
    ("e_R", "u_R^r", "d_R^r"), ("e_R", "u_R^g", "d_R^g"), ("e_R", "u_R^b", "d_R^b"),
    ("u_L^r", "d_L^g", "d_R^b"), ("u_L^r", "d_L^b", "d_R^g"), ("u_L^g", "d_L^r", "d_R^b"),
    ("u_L^b", "d_L^r", "d_R^g"), ("u_L^g", "d_L^b", "d_R^r"), ("u_L^b", "d_L^g", "d_R^r"),
)
LEPTONS = {"nu_L", "e_L", "e_R", "nu_R"}
PUBLISHED_LEPTON_FREE_TRIADS = tuple(t for t in PUBLISHED_TRIADS if not LEPTONS & set(t))


class ParticleError(ValueError):
    pass


@lru_cache(maxsize=None)
def e7() -> RootSystem:
    return build_simply_laced("E7")


def operator_vector(name: str) -> Tuple[Fraction, ...]:
    """sum a_i s_i in E7 coordinates."""
    return tuple(F(x) for x in e7().from_simple_coords(OPERATORS[name]))


def operator_coweight(name: str, scale=1) -> Coweight:
    return coweight(e7(), [scale * a for a in OPERATORS[name]])


def operator_grading(name: str, scale) -> ZGrading:
    """The grading by ``scale`` times an operator, e.g. ("B", 3)."""
    return grading_from_coweight(e7(), operator_coweight(name, scale))


@lru_cache(maxsize=None)
def _eigenvalue_table() -> Dict[Vector, Dict[str, Fraction]]:
    sys = e7()
    return {r: {n: cartan_eigenvalue(sys, OPERATORS[n], r) for n in OPERATOR_NAMES}
            for r in sys.roots}


def quantum_numbers(r: Sequence) -> Dict[str, Fraction]:
    table = _eigenvalue_table()
    r = tuple(r)
    if r not in table:
        raise ParticleError(f"{r} is not a root of E7")
    return dict(table[r])


def colour_of(r: Sequence) -> Optional[str]:
    """Colour name, or None for the six gluon roots of g_SM."""
    q = quantum_numbers(r)
    pair = (q["lambda3"], q["sqrt3lambda8"])
    if pair in COLOURS:
        return COLOURS[pair]
    if pair in GLUON_PAIRS or (-pair[0], -pair[1]) in GLUON_PAIRS:
        return None
    raise ParticleError(f"unexpected colour eigenvalues {pair}")


def generation_of(r: Sequence) -> Optional[int]:
    q = quantum_numbers(r)
    pair = (q["rho3"], q["sqrt3rho8"])
    for p, g in GENERATIONS.items():
        if pair == p or pair == (-p[0], -p[1]):
            return g
    return None


@lru_cache(maxsize=None)
def a4_roots() -> Tuple[Vector, ...]:
    """Roots supported on nodes 1..4: the A4 of the exceptional sequence."""
    return tuple(r for r in e7().roots if not any(r[4:]))


@lru_cache(maxsize=None)
def sm_roots() -> Tuple[Vector, ...]:
    """Roots supported on nodes 1..3: the A1 x A2 of g_SM."""
    return tuple(r for r in e7().roots if not any(r[3:]))


@lru_cache(maxsize=None)
def neutrino_roots() -> Tuple[Vector, ...]:
    """The six roots orthogonal to every root of A4."""
    sys = e7()
    a4 = a4_roots()
    return tuple(r for r in sys.roots if all(sys.ip(r, s) == 0 for s in a4))


@dataclass(frozen=True)
class ParticleRecord:
    root: Vector
    eigenvalues: Dict[str, Fraction]
    name: str
    classification: str
    generation: Optional[int]
    colour: Optional[str]

    def as_row(self) -> Dict[str, str]:
        row = {"name": self.name}
        for n in OPERATOR_NAMES:
            row[n] = fmt(self.eigenvalues[n])
        row["colour"] = self.colour or "none"
        row["generation"] = str(self.generation) if self.generation else "none"
        row["classification"] = self.classification
        return row


_BY_SIGNATURE = {row.signature: row for row in PARTICLE_TABLE}


def classify_root(r: Sequence) -> ParticleRecord:
    r = tuple(r)
    q = quantum_numbers(r)
    gen = generation_of(r)
    colour = colour_of(r)
    sig = tuple(q[n] for n in SIGNATURE)
    if gen is not None:
        row = _BY_SIGNATURE.get(sig)
        if row is not None and row.symbol != "nu_R":
            return ParticleRecord(r, q, row.symbol, "fermion", gen, colour)
        row = _BY_SIGNATURE.get(tuple(-x for x in sig))
        if row is not None and row.symbol != "nu_R":
            return ParticleRecord(r, q, "anti-" + row.symbol, "anti-fermion", gen, colour)
        raise ParticleError(f"generation root {r} matches no table row")
    if r in set(sm_roots()):
        if q["W0"] in (1, -1):
            return ParticleRecord(r, q, "W+" if q["W0"] > 0 else "W-", "W boson", None, colour)
        return ParticleRecord(r, q, "gluon", "gluon", None, colour)
    if r in set(neutrino_roots()):
        pair = (q["rho3"], q["sqrt3rho8"])
        name = "nu_R" if pair in NEUTRINO_PARTICLE_PAIRS else "anti-nu_R"
        return ParticleRecord(r, q, name, "neutrino-sl3", None, colour)
    if q["B"] in (F(5, 3), F(-5, 3)):
        return ParticleRecord(r, q, "exotic", "exotic", None, colour)
    if q["H"] in (1, -1):
        return ParticleRecord(r, q, "extra", "extra", None, colour)
    raise ParticleError(f"root {r} cannot be classified")


@lru_cache(maxsize=None)
def _census() -> Tuple[ParticleRecord, ...]:
    return tuple(classify_root(r) for r in e7().roots)


def records() -> List[ParticleRecord]:
    """One record per E7 root, in canonical root order."""
    return list(_census())


def census() -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for rec in _census():
        key = f"generation {rec.generation}" if rec.generation else rec.classification
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def generation_roots(gen: int) -> List[Vector]:
    if gen not in (1, 2, 3):
        raise ParticleError("generation must be 1, 2 or 3")
    return [rec.root for rec in _census() if rec.generation == gen]


def particle_roots(gen: int) -> Dict[str, Vector]:
    """Table symbol -> root, for the fifteen particles of a generation."""
    out = {}
    for rec in _census():
        if rec.generation == gen and rec.classification == "fermion":
            if rec.name in out:
                raise ParticleError(f"two roots named {rec.name} in generation {gen}")
            out[rec.name] = rec.root
    return out


def trim_standard() -> List[Vector]:
    """Roots left after forbidding H = +-1 and B = +-5/3."""
    return [rec.root for rec in _census()
            if rec.eigenvalues["H"] not in (1, -1) and rec.eigenvalues["B"] not in (F(5, 3), F(-5, 3))]


def particle_table() -> List[TableRow]:
    return list(PARTICLE_TABLE)


# ------------------------------------------------------------------ triads


@dataclass(frozen=True)
class GenerationTriads:
    generation: int
    structure: IncidenceStructure
    names: Tuple[str, ...]
    triads: Tuple[Tuple[str, str, str], ...]
    srg: Tuple[int, int, int, int]

    @property
    def lepton_free(self) -> Tuple[Tuple[str, str, str], ...]:
        return tuple(t for t in self.triads if not LEPTONS & set(t))

    def in_published_order(self) -> List[Tuple[str, ...]]:
        """Triads in the printed order of the published list; unmatched ones last."""
        printed = {_sort_triad(t): t for t in PUBLISHED_TRIADS}
        rank = {t: i for i, t in enumerate(PUBLISHED_TRIADS)}
        out = [printed.get(t, t) for t in self.triads]
        return sorted(out, key=lambda t: (rank.get(t, len(rank)), t))

    def lepton_free_structure(self) -> IncidenceStructure:
        """The lepton-free triads on the nine points they cover."""
        points = sorted({p for t in self.lepton_free for p in t})
        pos = {p: i for i, p in enumerate(points)}
        blocks = tuple(tuple(sorted(pos[p] for p in t)) for t in self.lepton_free)
        return IncidenceStructure(tuple(points), tuple(sorted(blocks)))


def _sort_triad(t) -> Tuple[str, ...]:
    return tuple(sorted(t))


def generation_triads(gen: int) -> GenerationTriads:
    from .graphs import srg_check

    named = particle_roots(gen)
    by_line = {line(r): n for n, r in named.items()}
    A = LineSystem(e7(), tuple(named.values()))
    graph, _ = representation_graph(A)
    structure = triads_of(A)
    names = tuple(by_line[l] for l in structure.points)
    triads = tuple(sorted(_sort_triad(names[i] for i in b) for b in structure.blocks))
    return GenerationTriads(gen, structure, names, triads, srg_check(graph))


def published_triads() -> Tuple[Tuple[str, ...], ...]:
    return tuple(sorted(_sort_triad(t) for t in PUBLISHED_TRIADS))


@dataclass(frozen=True)
class SignSplitReport:
    generation: int
    within_gq21_min: int
    within_rest_min: int
    cross_max: int
    triad_sums_zero: bool

    @property
    def ok(self) -> bool:
        return (self.within_gq21_min >= 0 and self.within_rest_min >= 0
                and self.cross_max <= 0 and self.triad_sums_zero)


def sign_split_check(gen: int) -> SignSplitReport:
    """Inner-product signs between the GQ(2,1) particles and the other six."""
    sys = e7()
    named = particle_roots(gen)
    t = generation_triads(gen)
    inner = {p for tr in t.lepton_free for p in tr}
    outer = set(named) - inner
    def ips(pairs):
        return [sys.ip(named[a], named[b]) for a, b in pairs]
    within_in = ips(combinations(sorted(inner), 2))
    within_out = ips(combinations(sorted(outer), 2))
    cross = ips((a, b) for a in sorted(inner) for b in sorted(outer))
    sums_zero = all(
        sum(quantum_numbers(named[p])[op] for p in tr) == 0
        for tr in t.lepton_free for op in SIGNATURE
    )
    return SignSplitReport(gen, min(within_in), min(within_out), max(cross), sums_zero)


# ------------------------------------------------------------- subalgebras


@lru_cache(maxsize=None)
def e7_algebra() -> LieAlgebra:
    return build_chevalley(e7())


def g_sm(L: Optional[LieAlgebra] = None) -> Subalgebra:
    """Cartan of A4 plus the root spaces of A1 x A2 (dimension 12)."""
    L = L or e7_algebra()
    return span_of_roots(L, sm_roots(), L.system.simple_roots[:4])


def orthogonality_report() -> List[Tuple[str, str, Fraction]]:
    """Pairwise inner products of the seven operator vectors."""
    sys = e7()
    vecs = {n: operator_vector(n) for n in OPERATOR_NAMES}
    return [(a, b, sys.ip(vecs[a], vecs[b])) for a, b in combinations(OPERATOR_NAMES, 2)]


# ------------------------------------------------------------------ export

TABLE_HEADER = ["name", "symbol", "B", "W0", "lambda3", "sqrt3lambda8"]
CENSUS_HEADER = ["name", "B", "W0", "lambda3", "sqrt3lambda8", "rho3", "sqrt3rho8", "H",
                 "colour", "generation", "classification"]


def table_csv() -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for row in PARTICLE_TABLE:
        w.writerow([row.name, row.symbol, fmt(row.B), fmt(row.W0), fmt(row.lambda3),
                    fmt(row.sqrt3lambda8)])
    return buf.getvalue()


def table_json() -> str:
    return json.dumps([dict(zip(TABLE_HEADER, [r.name, r.symbol, fmt(r.B), fmt(r.W0),
                                               fmt(r.lambda3), fmt(r.sqrt3lambda8)]))
                       for r in PARTICLE_TABLE], indent=2, ensure_ascii=False)


def census_csv() -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CENSUS_HEADER, lineterminator="\n")
    w.writeheader()
    for rec in _census():
        w.writerow(rec.as_row())
    return buf.getvalue()


def census_json() -> str:
    return json.dumps([dict(rec.as_row(), root=list(rec.root)) for rec in _census()], indent=2)
