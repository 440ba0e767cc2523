from fractions import Fraction
from math import comb

import pytest

from cofilling.cochain import CochainError, coboundary
from cofilling.constructions import (
    edge_cut_density,
    edge_cut_example,
    lemma8_normal_form,
    max_part_argument,
    multipartite_example,
    nonminimal_bipartite_delta_count,
    nonminimal_bipartite_example,
)
from cofilling.minimality import is_minimal_exact, necessary_conditions


def test_multipartite_n6():
    ex = multipartite_example(6, 2, (2, 2, 2))
    assert (len(ex.E), len(ex.F)) == (4, 8)
    assert ex.E.norm() == Fraction(4, 15) and ex.F.norm() == Fraction(8, 20)
    assert ex.counts_match()
    assert is_minimal_exact(ex.E).minimal


def test_multipartite_n8_d3():
    ex = multipartite_example(8, 3, (2, 2, 2, 2))
    assert (len(ex.E), len(ex.F)) == (8, 16)
    arg = max_part_argument(ex)
    assert arg["every_f_hit"] and arg["load_ok"] and arg["tight"]
    assert necessary_conditions(ex.E).passes


@pytest.mark.parametrize("sizes", [(1, 2, 3), (3, 2, 1), (2, 1, 1, 2), (1, 1, 1, 1, 1)])
def test_product_counts(sizes):
    ex = multipartite_example(sum(sizes), len(sizes) - 1, sizes)
    assert ex.counts_match()


def test_permuted_parts():
    perm = [6, 1, 5, 2, 4, 3]
    ex = multipartite_example(6, 2, (2, 2, 2), perm=perm)
    assert ex.parts[0] == (1, 6)
    assert ex.counts_match()


def test_bad_parts():
    with pytest.raises(CochainError):
        multipartite_example(6, 2, (2, 2))
    with pytest.raises(CochainError):
        multipartite_example(6, 2, (3, 3, 0))


def test_edge_cut():
    s, cut = edge_cut_example(6, 3)
    assert len(cut) == 9
    assert not edge_cut_example(6, 0)[1]
    for n in (10, 40):
        for k in range(n + 1):
            assert edge_cut_density(n, k) == Fraction(k * (n - k), comb(n, 2))
            assert len(edge_cut_example(n, k)[1]) == k * (n - k)


def test_nonminimal_bipartite():
    for n in (8, 12, 16, 20):
        for a in range(0, n // 4 + 1):
            e, m = nonminimal_bipartite_example(n, a)
            assert m == nonminimal_bipartite_delta_count(n, a) == len(coboundary(e))
            assert necessary_conditions(e, degree_cap=Fraction(n, 2)).passes
    assert not nonminimal_bipartite_example(12, 0)[0]


def test_bipartite_density_limit():
    # ||dE|| -> 3 a (1/2 - a) with a = |V1|/n
    n, a = 400, 100
    m = nonminimal_bipartite_delta_count(n, a)
    alpha = Fraction(a, n)
    assert abs(Fraction(m, comb(n, 3)) - 3 * alpha * (Fraction(1, 2) - alpha)) < Fraction(1, 50)


def test_normal_form_respects_cap():
    for n in (8, 10, 16):
        for m in range(0, comb(n, 2) // 4 + 1):
            g = lemma8_normal_form(n, m)
            assert len(g) == m
            degs = [sum(1 for s in g.sets() if v in s) for v in range(1, n + 1)]
            assert max(degs, default=0) <= n // 2
