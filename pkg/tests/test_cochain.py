from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cofilling import gf2
from cofilling.cochain import (
    Cochain,
    CochainError,
    MAX_BITS,
    coboundary,
    cone,
    face_degree,
    fill_by_min_link,
    is_coboundary,
    is_cocycle,
    link,
    lk,
    normalized_size,
    pair_degrees,
    star,
    subset_rank,
    subset_unrank,
    vertex_degrees,
)

from conftest import cochains, naive_coboundary


def test_rank_extremes():
    assert subset_rank((1, 2), 5) == 0
    assert subset_rank((4, 5), 5) == 9


@pytest.mark.parametrize("r", [1, 2, 3])
def test_rank_roundtrip(r):
    subsets = list(combinations(range(1, 7), r))
    ranks = [subset_rank(s, 6) for s in subsets]
    assert sorted(ranks) == list(range(len(subsets)))
    assert all(subset_unrank(k, r, 6) == s for k, s in zip(ranks, subsets))


def test_rank_rejects_bad_subset():
    with pytest.raises(CochainError):
        subset_rank((0, 2), 5)
    with pytest.raises(CochainError):
        subset_rank((2, 2), 5)


def test_coboundary_examples():
    e = Cochain.from_sets(5, 2, [(2, 4), (2, 5)])
    assert set(coboundary(e).sets()) == {(1, 2, 4), (1, 2, 5), (2, 3, 4), (2, 3, 5)}
    assert not coboundary(Cochain.empty(5, 2))
    assert set(coboundary(Cochain.from_sets(3, 1, [(1,)])).sets()) == {(1, 2), (1, 3)}


def test_add_examples(fx, fy):
    assert not fx + fx
    assert fx + Cochain.empty(5, 3) == fx
    assert set((fx + fy).sets()) == {(1, 2, 4), (1, 2, 5), (2, 3, 4), (2, 3, 5)}


def test_add_rejects_mismatch():
    with pytest.raises(CochainError):
        Cochain.empty(5, 2) + Cochain.empty(6, 2)


def test_normalized_size():
    assert normalized_size(Cochain.from_sets(5, 2, [(2, 4), (2, 5)])) == Fraction(2, 10)
    assert normalized_size(Cochain.empty(5, 2)) == 0
    assert normalized_size(Cochain.full(6, 2)) == 1


def test_link_examples(fx):
    e = Cochain.from_sets(5, 2, [(2, 4), (2, 5)])
    st_, l = link(2, e)
    assert st_ == e and set(l.sets()) == {(4,), (5,)}
    assert set(lk(3, fx).sets()) == {(1, 2)}
    assert not lk(1, Cochain.empty(5, 2))


def test_face_degree(fx):
    e = Cochain.from_sets(5, 2, [(2, 4), (2, 5)])
    assert face_degree((2,), e) == 2
    assert face_degree((1, 2), fx) == 3
    assert face_degree((4,), Cochain.empty(5, 2)) == 0


def test_degrees_agree_with_face_degree(fx):
    degs = vertex_degrees(fx)
    assert [face_degree((v,), fx) for v in range(1, 6)] == degs.tolist()
    pd = pair_degrees(fx)
    for p in combinations(range(1, 6), 2):
        assert pd[subset_rank(p, 5)] == face_degree(p, fx)


def test_cocycle_examples(fz):
    assert is_cocycle(fz)
    assert not is_cocycle(Cochain.from_sets(5, 3, [(1, 2, 3)]))
    assert is_cocycle(Cochain.full(5, 1))


def test_coboundary_predicate(fz):
    assert not is_coboundary(Cochain.full(5, 1))
    for r in (1, 2, 3):
        assert is_coboundary(Cochain.empty(5, r))
    assert is_coboundary(fz)


def test_fill_examples(fx):
    e = fill_by_min_link(fx)
    assert set(e.sets()) == {(1, 2)}
    assert coboundary(e) == fx
    assert not fill_by_min_link(Cochain.empty(5, 3))
    with pytest.raises(CochainError):
        fill_by_min_link(Cochain.from_sets(5, 3, [(1, 2, 3)]))


def test_guard_rail():
    with pytest.raises(CochainError):
        Cochain(200, 100)
    assert MAX_BITS == 2 ** 33


def test_immutable_and_hashable(fx):
    with pytest.raises(AttributeError):
        fx.bits = 0
    assert len({fx, Cochain.from_sets(5, 3, fx.sets())}) == 1


def test_cone_and_star(fx):
    c = cone(3, Cochain.from_sets(5, 2, [(1, 2)]))
    assert set(c.sets()) == {(1, 2, 3)}
    assert star(3, fx) == Cochain.from_sets(5, 3, [(1, 2, 3)])


@given(cochains())
def test_coboundary_matches_naive(e):
    assert set(coboundary(e).sets()) == naive_coboundary(e)


@given(cochains(n=st.integers(3, 8)))
def test_delta_squared_zero(e):
    if e.arity + 2 <= e.n:
        assert not coboundary(coboundary(e))


@given(st.data())
def test_linearity(data):
    e = data.draw(cochains())
    f = Cochain(e.n, e.arity, data.draw(st.integers(0, (1 << e.size) - 1)))
    assert coboundary(e + f) == coboundary(e) + coboundary(f)


@given(cochains(n=st.integers(3, 8)), st.data())
def test_link_formula(e, data):
    if e.arity < 2:
        return
    v = data.draw(st.integers(1, e.n))
    ev = star(v, e)
    rhs_b = lk(v, coboundary(ev))
    assert not (ev & rhs_b)
    assert coboundary(lk(v, e)) == ev + rhs_b


@given(cochains(n=st.integers(3, 7), arity=2))
def test_fill_property(e):
    f = coboundary(e)
    filled = fill_by_min_link(f)
    assert coboundary(filled) == f
    assert filled.norm() <= f.norm()


@given(cochains(n=st.integers(3, 6)))
def test_is_coboundary_matches_linear_solve(f):
    if f.arity < 2:
        return
    images = [coboundary(Cochain(f.n, f.arity - 1, 1 << k)).bits for k in range(Cochain(f.n, f.arity - 1).size)]
    basis, _ = gf2.reduce_basis(images)
    assert is_coboundary(f) == gf2.in_span(f.bits, basis)


@given(cochains())
def test_array_roundtrip(e):
    assert Cochain.from_array(e.n, e.arity, e.to_array()) == e
    assert Cochain.from_sets(e.n, e.arity, e.sets()) == e
    assert e.ranks() == list(np.flatnonzero(e.to_array()))
