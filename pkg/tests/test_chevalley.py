from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rootlines.chevalley import (
    LieAlgebraError,
    Subalgebra,
    bracket,
    build_chevalley,
    cartan_eigenvalue,
    cartan_subalgebra,
    center,
    centralizer,
    check_graded_pieces,
    derived_subalgebra,
    graded_pieces,
    span_of_roots,
    structure_constants,
    verify_jacobi,
)
from rootlines.gradings import enumerate_three_gradings, exceptional_sequence
from rootlines.roots import add, build, build_simply_laced, neg
from rootlines.smodel import OPERATORS


@pytest.fixture(scope="module")
def e7():
    return build_chevalley(build_simply_laced("E7"))


@pytest.mark.parametrize("label,dim", [("A1", 3), ("A2", 8), ("A4", 24), ("D5", 45), ("E6", 78), ("E7", 133)])
def test_dimension(label, dim):
    assert build_chevalley(build_simply_laced(label)).dim == dim


def test_non_simply_laced_rejected():
    with pytest.raises(LieAlgebraError):
        build_chevalley(build("B3"))


@pytest.mark.parametrize("label", ["A3", "D4", "E6"])
def test_structure_constants_are_signs(label):
    s = build_simply_laced(label)
    table = structure_constants(s)
    roots = s.root_set
    expected = {(r, t) for r in s.roots for t in s.roots if add(r, t) in roots}
    assert set(table) == expected
    for (r, t), n in table.items():
        assert n in (1, -1)
        assert table[(t, r)] == -n
        assert table[(neg(r), neg(t))] == -n


def test_a2_convention():
    a2 = build_simply_laced("A2")
    L = build_chevalley(a2)
    s1, s2 = a2.simple_roots
    assert L.N(s1, s2) == -1
    assert L.N(s2, s1) == 1


@pytest.mark.parametrize("label", ["A1", "A2", "A4", "D5", "E6"])
def test_jacobi_small(label):
    rep = verify_jacobi(build_chevalley(build_simply_laced(label)))
    assert rep.ok and rep.witness is None


def test_jacobi_e7(e7):
    rep = verify_jacobi(e7, jobs=2)
    assert rep.ok
    assert rep.triples == 133 * 132 * 131 // 6 == 383306


@pytest.mark.parametrize("label", ["A2", "A3", "D4"])
def test_sign_flip_breaks_jacobi(label):
    s = build_simply_laced(label)
    L = build_chevalley(s)
    r, t = next((r, t) for r in s.positive_roots for t in s.positive_roots if add(r, t) in s.root_set)
    bad = L.with_sign_flip(r, t)
    assert bad.N(r, t) == -L.N(r, t)
    rep = verify_jacobi(bad)
    assert not rep.ok and rep.witness is not None


def test_sign_flip_requires_root_sum():
    a2 = build_simply_laced("A2")
    L = build_chevalley(a2)
    s1 = a2.simple_roots[0]
    with pytest.raises(LieAlgebraError):
        L.with_sign_flip(s1, s1)


def test_basic_brackets():
    a2 = build_simply_laced("A2")
    L = build_chevalley(a2)
    s1, s2 = a2.simple_roots
    assert L.bracket(L.e(s1), L.e(neg(s1))) == L.h(0)
    assert L.bracket(L.h(0), L.e(s1)) == 2 * L.e(s1)
    assert L.bracket(L.h(1), L.e(s1)) == -1 * L.e(s1)
    assert not L.bracket(L.h(0), L.h(1))
    with pytest.raises(LieAlgebraError):
        L.e((5, 5))
    with pytest.raises(LieAlgebraError):
        L.element({99: 1})


def elements(L):
    coeff = st.integers(-3, 3)
    return st.dictionaries(st.integers(0, L.dim - 1), coeff, max_size=5).map(L.element)


A3 = build_chevalley(build_simply_laced("A3"))


@settings(max_examples=60, deadline=None)
@given(elements(A3), elements(A3), elements(A3), st.integers(-4, 4))
def test_bilinear_and_antisymmetric(x, y, z, c):
    assert bracket(x + y, z) == bracket(x, z) + bracket(y, z)
    assert bracket(c * x, y) == c * bracket(x, y)
    assert bracket(x, y) == -bracket(y, x)
    assert not bracket(x, x)


@settings(max_examples=40, deadline=None)
@given(elements(A3), elements(A3), elements(A3))
def test_jacobi_on_random_elements(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert not total


def test_eigenvalues_against_bracket(e7):
    sys = e7.system
    for name, labels in OPERATORS.items():
        h = e7.cartan(labels)
        for r in sys.roots:
            ev = cartan_eigenvalue(sys, labels, r)
            assert bracket(h, e7.e(r)) == ev * e7.e(r), name


def test_cartan_subalgebra(e7):
    H = cartan_subalgebra(e7)
    assert H.dim == 7 and H.is_abelian() and H.is_subalgebra()
    assert centralizer(e7, H).dim == 7


def test_graded_pieces_star(e7):
    expected = [(27, 79, 27), (16, 46, 16), (10, 25, 10), (6, 12, 6)]
    for g, dims in zip(exceptional_sequence().arrows, expected):
        p = graded_pieces(e7, g)
        assert (p.minus.dim, p.zero.dim, p.plus.dim) == dims
        assert sum(dims) == len(g.system.roots) + g.system.rank
        assert check_graded_pieces(e7, p) == []
        assert p.plus.is_abelian() and p.minus.is_abelian()
        assert p.zero.is_subalgebra()
        assert derived_subalgebra(p.zero).root_type() == g.zero_type


def test_graded_pieces_own_algebra():
    e6 = build_simply_laced("E6")
    L = build_chevalley(e6)
    g = enumerate_three_gradings(e6)[0]
    p = graded_pieces(L, g)
    assert (p.minus.dim, p.zero.dim, p.plus.dim) == (16, 46, 16)
    assert check_graded_pieces(L, p) == []


def test_graded_pieces_foreign_grading(e7):
    g = enumerate_three_gradings(build_simply_laced("A2"))[0]
    with pytest.raises(LieAlgebraError):
        graded_pieces(e7, g)


def test_subalgebra_failure_certificate():
    a2 = build_simply_laced("A2")
    L = build_chevalley(a2)
    s1, s2 = a2.simple_roots
    S = span_of_roots(L, [s1, s2])
    assert not S.is_subalgebra()
    assert S.closure_certificate() is not None


def test_center_of_gl2_like():
    a2 = build_simply_laced("A2")
    L = build_chevalley(a2)
    s1 = a2.simple_roots[0]
    # span{e_s1, e_-s1, h_1, h_2} is sl2 plus a one-dimensional centre
    S = span_of_roots(L, [s1, neg(s1)], a2.simple_roots)
    assert S.is_subalgebra()
    assert center(S).dim == 1
    assert derived_subalgebra(S).dim == 3
    assert Subalgebra(L, []).dim == 0


def test_cartan_eigenvalue_rank_check():
    with pytest.raises(Exception):
        cartan_eigenvalue(build_simply_laced("A2"), [1], (1, 0))


def test_json_export():
    L = build_chevalley(build_simply_laced("A1"))
    data = L.to_json()
    assert '"dim": 3' in data and "h1" in data
