"""The verification suite behind ``rootlines verify-all``.

Every check computes a value and compares it for exact equality with a
pinned expectation. Values are rendered as JSON-friendly strings and lists
so that reports are byte-stable.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, List, Optional, Tuple

from . import chevalley, gradings, lines, smodel
from .graphs import find_isomorphism, local_subgraph, prism_graph, srg_check
from .linalg import fmt
from .roots import build, build_simply_laced, catalog_labels, identify_type, parse_label, root_count


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    expected: object
    computed: object
    elapsed: Optional[float] = None

    def to_dict(self, timings: bool = False) -> dict:
        d = {"name": self.name, "status": "pass" if self.ok else "fail",
             "expected": self.expected, "computed": self.computed}
        if timings and self.elapsed is not None:
            d["elapsed_seconds"] = round(self.elapsed, 3)
        return d


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self, timings: bool = False) -> str:
        return json.dumps({"status": "pass" if self.ok else "fail",
                           "checks": [c.to_dict(timings) for c in self.checks]}, indent=2,
                          ensure_ascii=False)

    def to_text(self, timings: bool = False) -> str:
        out = []
        for c in self.checks:
            line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}"
            if timings and c.elapsed is not None:
                line += f"  ({c.elapsed:.2f}s)"
            if not c.ok:
                line += f"\n      expected {c.expected}\n      computed {c.computed}"
            out.append(line)
        out.append(f"overall: {'pass' if self.ok else 'fail'} "
                   f"({sum(c.ok for c in self.checks)}/{len(self.checks)})")
        return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# individual checks: each returns (expected, computed)


def _expected_count(label: str) -> int:
    (family, n), = parse_label(label)
    return {"A": n * (n + 1), "D": 2 * n * (n - 1)}.get(family) or {6: 72, 7: 126, 8: 240}[n]


def check_root_counts():
    labels = catalog_labels(8)
    expected = [[l, _expected_count(l), _expected_count(l) + int(l[1:])] for l in labels]
    computed = []
    for l in labels:
        s = build_simply_laced(l)
        computed.append([l, len(s.roots), chevalley.build_chevalley(s).dim])
    return expected, computed


def check_grading_census():
    expected = {
        "E7": [[27, "E6", "Albert"]],
        "E6": [[16, "D5", "bi-Cayley"]],
        "D5": [[10, "A4", "alternating"], [8, "D4", "even quadratic"]],
        "A4": [[6, "A1xA2", "rectangular"], [4, "A3", "rectangular"]],
        "E8": [], "G2": [], "F4": [],
    }
    computed = {l: [list(x) for x in gradings.grading_census(build(l))] for l in expected}
    return expected, computed


def check_sequence_uniqueness():
    rep = gradings.verify_exceptional_uniqueness(8)
    star = list(gradings.EXCEPTIONAL_LABELS)
    expected = {"sources": ["E7"], "local": [star], "maximal": [star]}
    computed = {"sources": list(rep.sources), "local": [list(p) for p in rep.local_paths],
                "maximal": [list(p) for p in rep.maximal_paths]}
    return expected, computed


def check_part_a_cases():
    expected, computed = {}, {}
    for l in catalog_labels(8):
        (family, n), = parse_label(l)
        if family == "A" and n < 3:
            continue
        if family == "A":
            expected[l] = ["a", f"K{n - 2}"]
        elif family == "D":
            expected[l] = ["b", f"CP({n - 3})+K1"]
        else:
            expected[l] = [{6: "c", 7: "d", 8: "e"}[n],
                           {6: "srg(9,4,1,2)", 7: "srg(15,8,4,4)", 8: "srg(27,16,10,8)"}[n]]
        c = lines.classify_indecomposable(lines.lines_of(build_simply_laced(l)))
        computed[l] = [c.case, c.graph]
    return expected, computed


def star_decomposition_violations(label: str) -> Tuple[int, int]:
    """(stars checked, stars with a line orthogonal to 0 or 2 members)."""
    L = lines.lines_of(build_simply_laced(label))
    stars = L.stars()
    bad = 0
    for s in stars:
        try:
            lines.star_decomposition(L, s)
        except lines.LineSystemError:
            bad += 1
    return len(stars), bad


def check_star_decomposition():
    computed = {l: list(star_decomposition_violations(l)) for l in catalog_labels(8)}
    expected = {l: [v[0], 0] for l, v in computed.items()}
    return expected, computed


def _jacobi(label: str, jobs: int = 1):
    L = chevalley.build_chevalley(build_simply_laced(label))
    rep = chevalley.verify_jacobi(L, jobs=jobs)
    return [L.dim, rep.triples, rep.ok]


def check_jacobi_small(jobs: int = 1):
    labels = ["A1", "A2", "A4", "D5", "E6"]
    expected = {l: [d, comb(d, 3), True] for l, d in zip(labels, [3, 8, 24, 45, 78])}
    computed = {l: _jacobi(l, jobs) for l in labels}
    return expected, computed


def check_jacobi_e7(jobs: int = 1):
    return [133, comb(133, 3), True], _jacobi("E7", jobs)


def check_graded_pieces():
    E = smodel.e7_algebra()
    expected, computed = [], []
    for a in gradings.exceptional_sequence().arrows:
        p = chevalley.graded_pieces(E, a)
        d = chevalley.derived_subalgebra(p.zero)
        zero_dim = len(a.zero) + a.system.rank
        expected.append([a.source_type, a.weight, True, zero_dim, zero_dim - 1, a.zero_type, []])
        computed.append([a.source_type, p.plus.dim, p.plus.is_abelian() and p.minus.is_abelian(),
                         p.zero.dim, d.dim, d.root_type(), chevalley.check_graded_pieces(E, p)])
    return expected, computed


def check_particle_table():
    expected = [
        ["nu_R", "0", "0", "0", "0"], ["e_R", "-2", "0", "0", "0"],
        ["u_R^r", "4/3", "0", "-1", "-1"], ["u_R^g", "4/3", "0", "1", "-1"],
        ["u_R^b", "4/3", "0", "0", "2"], ["d_R^r", "-2/3", "0", "-1", "-1"],
        ["d_R^g", "-2/3", "0", "1", "-1"], ["d_R^b", "-2/3", "0", "0", "2"],
        ["nu_L", "-1", "1/2", "0", "0"], ["e_L", "-1", "-1/2", "0", "0"],
        ["u_L^r", "1/3", "1/2", "-1", "-1"], ["u_L^g", "1/3", "1/2", "1", "-1"],
        ["u_L^b", "1/3", "1/2", "0", "2"], ["d_L^r", "1/3", "-1/2", "-1", "-1"],
        ["d_L^g", "1/3", "-1/2", "1", "-1"], ["d_L^b", "1/3", "-1/2", "0", "2"],
    ]
    # every row must be realized by a root with exactly these eigenvalues
    computed = []
    for row in smodel.particle_table():
        realized = any(
            tuple(smodel.quantum_numbers(r)[n] for n in smodel.SIGNATURE) == row.signature
            for r in smodel.e7().roots
        )
        computed.append([row.symbol] + [fmt(x) for x in row.signature] if realized else [row.symbol, "unrealized"])
    return expected, computed


def check_census():
    expected = {"W boson": 2, "exotic": 12, "extra": 10, "generation 1": 30, "generation 2": 30,
                "generation 3": 30, "gluon": 6, "neutrino-sl3": 6, "neutrino type": "A2", "total": 126}
    c = smodel.census()
    computed = dict(c)
    computed["neutrino type"] = identify_type(smodel.neutrino_roots(), smodel.e7().gram)
    computed["total"] = sum(c.values())
    return expected, computed


def check_coweight_gradings():
    expected = {"2W0": list(range(-2, 3)), "3B": list(range(-6, 7)), "3H": list(range(-3, 4))}
    computed = {f"{s}{n}": smodel.operator_grading(n, s).indices
                for n, s in (("W0", 2), ("B", 3), ("H", 3))}
    return expected, computed


def check_centralizer():
    E = smodel.e7_algebra()
    C = chevalley.centralizer(E, smodel.g_sm(E))
    Z = chevalley.center(C)
    D = chevalley.derived_subalgebra(C)
    return [10, 2, 8, "A2"], [C.dim, Z.dim, D.dim, D.root_type()]


def check_triads():
    expected, computed = {}, {}
    published = [list(t) for t in smodel.published_triads()]
    for g in (1, 2, 3):
        t = smodel.generation_triads(g)
        s = smodel.sign_split_check(g)
        expected[str(g)] = {"srg": [15, 8, 4, 4], "triads": published, "gq": [2, 2],
                            "lepton_free": 6, "gq_lepton_free": [2, 1], "sign_split": True}
        computed[str(g)] = {
            "srg": list(t.srg), "triads": [list(x) for x in t.triads],
            "gq": list(lines.gq_check(t.structure)), "lepton_free": len(t.lepton_free),
            "gq_lepton_free": list(lines.gq_check(t.lepton_free_structure())), "sign_split": s.ok,
        }
    return expected, computed


def check_absolute_bound():
    e7 = smodel.e7()
    orbit = gradings.minuscule_orbit(e7)
    rep = lines.equiangular_bound_check([q.vector for q in orbit], e7.gram, d=7)
    return [56, 28, 7, 28, "1/3", True], [len(orbit), rep.n, rep.d, rep.bound, fmt(rep.cos), rep.meets_bound]


def check_acute_chain():
    e7 = smodel.e7()
    acute = gradings.exceptional_acute_coweights(e7)
    computed = [gradings.orthogonal_subsystem(e7, acute[:k]).label for k in range(1, 5)]
    return ["E6", "D5", "A4", "A1xA2"], computed


def check_local_chain():
    seq = gradings.exceptional_sequence()
    graphs = [gradings.decomposition_graph(a) for a in seq.arrows]
    computed = []
    for g in graphs[:-1]:
        computed.append(list(srg_check(g)))
    computed.append("prism" if find_isomorphism(graphs[-1], prism_graph(3)) else "not prism")
    links = [find_isomorphism(h, local_subgraph(g)) is not None for g, h in zip(graphs, graphs[1:])]
    computed.append(links)
    expected = [[27, 16, 10, 8], [16, 10, 6, 6], [10, 6, 3, 4], "prism", [True, True, True]]
    return expected, computed


def check_non_simply_laced():
    expected = {"B3": [18, 2, True], "C3": [18, 2, True], "G2": [12, 2, True], "F4": [48, 2, True]}
    computed = {}
    for l in expected:
        s = build(l)
        computed[l] = [len(s.roots), len({s.norm(r) for r in s.roots}), s.is_reflection_closed()]
    return expected, computed


CHECKS: List[Tuple[str, Callable]] = [
    ("root-counts", check_root_counts),
    ("grading-census", check_grading_census),
    ("sequence-uniqueness", check_sequence_uniqueness),
    ("part-a-cases", check_part_a_cases),
    ("star-decomposition", check_star_decomposition),
    ("jacobi-small", check_jacobi_small),
    ("e7-jacobi", check_jacobi_e7),
    ("graded-pieces-star", check_graded_pieces),
    ("particle-table", check_particle_table),
    ("particle-census", check_census),
    ("coweight-gradings", check_coweight_gradings),
    ("centralizer-g-sm", check_centralizer),
    ("generation-triads", check_triads),
    ("absolute-bound-28", check_absolute_bound),
    ("acute-coweight-chain", check_acute_chain),
    ("local-subgraph-chain", check_local_chain),
    ("non-simply-laced", check_non_simply_laced),
]

_JOBS_AWARE = {"jacobi-small", "e7-jacobi"}


def run_check(name: str, fn: Callable, jobs: int = 1) -> Check:
    start = time.perf_counter()
    try:
        expected, computed = fn(jobs) if name in _JOBS_AWARE else fn()
        ok = expected == computed
    except Exception as exc:  # a crashing check is a failing check
        expected, computed, ok = "no exception", f"{type(exc).__name__}: {exc}", False
    return Check(name, ok, expected, computed, time.perf_counter() - start)


def verify_all(jobs: int = 1, only: Optional[List[str]] = None) -> VerificationReport:
    report = VerificationReport()
    for name, fn in CHECKS:
        if only and name not in only:
            continue
        report.checks.append(run_check(name, fn, jobs))
    return report
