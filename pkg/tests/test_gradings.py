from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rootlines.graphs import prism_graph, find_isomorphism, srg_check
from rootlines.gradings import (
    EXCEPTIONAL_LABELS,
    GradingError,
    GradingSequence,
    ThreeGrading,
    binary_decomposition,
    build_mesh,
    coweight,
    decomposition_graph,
    enumerate_three_gradings,
    exceptional_acute_coweights,
    exceptional_sequence,
    fundamental_coweight,
    grading_census,
    grading_from_coweight,
    is_local_sequence,
    is_maximal_sequence,
    local_sequence_census,
    maximal_path,
    minuscule_orbit,
    orthogonal_subsystem,
    path_labels,
    realize,
    three_grading,
    verify_exceptional_uniqueness,
    verify_three_grading,
)
from rootlines.roots import build_simply_laced, catalog_labels


def minuscule_nodes_brute(system):
    """Nodes at which every root has coefficient in {-1, 0, 1}."""
    coords = [system.simple_coords(r) for r in system.roots]
    return [k for k in range(system.rank) if max(c[k] for c in coords) == 1]


@pytest.mark.parametrize("label", catalog_labels(8))
def test_enumeration_matches_brute_force(label):
    s = build_simply_laced(label)
    gs = enumerate_three_gradings(s)
    assert sorted(g.node for g in gs) == minuscule_nodes_brute(s)
    for g in gs:
        assert verify_three_grading(g).ok
        assert len(g.plus) == len(g.minus)
        assert len(g.plus) * 2 + len(g.zero) == len(s.roots)


@pytest.mark.parametrize("label,census", [
    ("E7", [(27, "E6", "Albert")]),
    ("E6", [(16, "D5", "bi-Cayley")]),
    ("D5", [(10, "A4", "alternating"), (8, "D4", "even quadratic")]),
    ("A4", [(6, "A1xA2", "rectangular"), (4, "A3", "rectangular")]),
    ("E8", []),
    ("D4", [(6, "A3", "even quadratic")]),
])
def test_census(label, census):
    assert grading_census(build_simply_laced(label)) == census


def test_a_n_weights():
    for n in range(1, 8):
        s = build_simply_laced(f"A{n}")
        assert sorted(g.weight for g in enumerate_three_gradings(s)) == \
            sorted(k * (n + 1 - k) for k in range(1, n + 1))


def test_perturbed_grading_fails():
    e6 = build_simply_laced("E6")
    g = enumerate_three_gradings(e6)[0]
    moved = g.plus[0]
    bad = ThreeGrading(e6, None, g.minus, g.zero + (moved,), g.plus[1:])
    check = verify_three_grading(bad)
    assert not check.ok and check.failures


def test_fundamental_coweights():
    e7 = build_simply_laced("E7")
    for k in range(7):
        q = fundamental_coweight(e7, k)
        assert [q.pairing(s) for s in e7.simple_roots] == [int(i == k) for i in range(7)]
        assert q.is_coweight
    assert fundamental_coweight(e7, 6).is_minuscule
    assert not fundamental_coweight(e7, 0).is_minuscule


def test_grading_from_coweight():
    a2 = build_simply_laced("A2")
    z = grading_from_coweight(a2, coweight(a2, [Fraction(2, 3), Fraction(1, 3)]))
    assert z.indices == [-1, 0, 1]
    with pytest.raises(GradingError):
        grading_from_coweight(a2, (Fraction(1, 2), 0))
    with pytest.raises(GradingError):
        coweight(a2, [1])


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "D4", "E6"]), st.data())
def test_integer_coweights_give_gradings(label, data):
    s = build_simply_laced(label)
    labels = data.draw(st.lists(st.integers(-2, 2), min_size=s.rank, max_size=s.rank))
    q = coweight(s, [0] * s.rank)
    for k, c in enumerate(labels):
        q = coweight(s, [a + c * b for a, b in zip(q.coefficients, fundamental_coweight(s, k).coefficients)])
    z = grading_from_coweight(s, q)
    for i in z.indices:
        assert len(z.parts[i]) == len(z.parts.get(-i, ()))
    assert sum(len(p) for p in z.parts.values()) == len(s.roots)


# ------------------------------------------------------------ sequences


def test_exceptional_sequence():
    seq = exceptional_sequence()
    assert seq.labels == EXCEPTIONAL_LABELS
    assert seq.weights == [27, 16, 10, 6]
    ok, steps = is_local_sequence(seq)
    assert ok and all(s.mapping is not None for s in steps)
    assert is_maximal_sequence(seq)


def test_binary_decompositions():
    sizes = []
    for g in exceptional_sequence().arrows:
        b = binary_decomposition(g)
        sizes.append((len(b.zero), len(b.one)))
    assert sizes == [(36, 27), (20, 16), (10, 10), (4, 6)]


def test_decomposition_graph_chain():
    graphs = [decomposition_graph(g) for g in exceptional_sequence().arrows]
    assert [srg_check(g) for g in graphs[:3]] == [(27, 16, 10, 8), (16, 10, 6, 6), (10, 6, 3, 4)]
    assert find_isomorphism(graphs[3], prism_graph(3)) is not None


def test_nesting_violation():
    e7 = build_simply_laced("E7")
    e6 = build_simply_laced("E6")
    with pytest.raises(GradingError):
        GradingSequence([three_grading(e7, 6), enumerate_three_gradings(e6)[0]])
    with pytest.raises(GradingError):
        GradingSequence([])


def test_d5_to_d4_is_not_maximal():
    d5 = build_simply_laced("D5")
    g = next(g for g in enumerate_three_gradings(d5) if g.zero_type == "D4")
    assert not is_maximal_sequence(GradingSequence([g]))


# ----------------------------------------------------------------- mesh


def test_mesh_examples():
    mesh = build_mesh(8)
    arrows = {(a.source, a.target, a.weight) for a in mesh.arrows}
    assert ("E7", "E6", 27) in arrows
    assert ("D8", "A7", 28) in arrows
    assert ("D8", "D7", 14) in arrows
    assert not mesh.successors("E8")
    assert "E6" in mesh.targets()
    assert all(a.source in catalog_labels(8) for a in mesh.arrows)


def test_mesh_empty_zero_option():
    with_empty = build_mesh(2, nonempty_zero=False)
    assert ("A1", "∅") in {(a.source, a.target) for a in with_empty.arrows}
    assert not build_mesh(2).successors("A1")


def test_mesh_bounds():
    with pytest.raises(GradingError):
        build_mesh(0)
    with pytest.raises(GradingError):
        build_mesh(10)


def test_maximal_path_from_e7():
    mesh = build_mesh(7)
    assert path_labels(maximal_path(mesh, "E7")) == EXCEPTIONAL_LABELS


def test_realize_rejects_broken_path():
    mesh = build_mesh(7)
    e7 = mesh.successors("E7")[0]
    d5 = mesh.successors("D5")[0]
    with pytest.raises(GradingError):
        realize([e7, d5])


def test_uniqueness():
    rep = verify_exceptional_uniqueness(8)
    assert rep.sources == ("E7",)
    assert rep.local_paths == [tuple(EXCEPTIONAL_LABELS)]
    assert rep.maximal_paths == [tuple(EXCEPTIONAL_LABELS)]
    assert rep.ok and rep.to_dict()["ok"]


@pytest.mark.slow
def test_local_census_contains_d_chain():
    census = local_sequence_census(7)
    assert EXCEPTIONAL_LABELS in census
    assert ["D6", "A5", "A1xA3"] in census


def test_mesh_exports():
    mesh = build_mesh(7)
    dot = mesh.to_dot()
    assert '"E7" -> "E6" [label="27", weight=27];' in dot
    assert '"arrows"' in mesh.to_json()


# ------------------------------------------------------- acute coweights


def test_minuscule_orbit_size():
    e7 = build_simply_laced("E7")
    orbit = minuscule_orbit(e7)
    assert len(orbit) == 56
    assert all(q.is_minuscule for q in orbit)
    with pytest.raises(GradingError):
        minuscule_orbit(build_simply_laced("E6"))


def test_acute_chain():
    e7 = build_simply_laced("E7")
    qs = exceptional_acute_coweights(e7)
    orbit = set(minuscule_orbit(e7))
    assert all(q in orbit for q in qs)
    types = [orthogonal_subsystem(e7, qs[:k]).label for k in range(1, 5)]
    assert types == EXCEPTIONAL_LABELS[1:]


def test_non_acute_coweights_rejected():
    e7 = build_simply_laced("E7")
    q = fundamental_coweight(e7, 6)
    minus = type(q)(e7, tuple(-x for x in q.vector))
    with pytest.raises(GradingError):
        orthogonal_subsystem(e7, [q, minus])
