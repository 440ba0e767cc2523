from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cofilling.cochain import Cochain, CochainError
from cofilling.constructions import multipartite_example, nonminimal_bipartite_example
from cofilling.exhaustive import minimal_mask
from cofilling.inequalities import (
    degree_order,
    highdeg_certificate,
    lemma8_extremal,
    lobo2_bound,
    lobo2_check,
    lobo2_coefficient,
    low3_certificate,
    normal_form_leading,
    pie_decompose,
    random_pair_capped_triples,
    thm5_audit,
)

from conftest import cochains


def test_pie_triangle():
    p = pie_decompose(Cochain.from_sets(4, 2, [(1, 2), (1, 3), (2, 3)]))
    assert p.formula == 4 and p.delta_size == 4 and p.identity_holds()


def test_pie_empty():
    p = pie_decompose(Cochain.empty(6, 2))
    assert p.formula == p.delta_size == 0


@given(cochains(n=st.integers(3, 9), arity=2))
def test_pie_identity_and_relaxation(e):
    p = pie_decompose(e)
    assert p.identity_holds()
    assert p.m1 + 2 * p.m2 + 3 * p.m3 == (e.n - 2) * len(e)
    assert p.delta_size >= p.truncated


def test_pie_rejects_arity():
    with pytest.raises(CochainError):
        pie_decompose(Cochain.empty(6, 3))


def test_lobo2_values():
    assert lobo2_coefficient(Fraction(1, 4)) == Fraction(1, 8)
    assert lobo2_bound(10, 0) == 0
    with pytest.raises(ValueError):
        lobo2_bound(10, 20)


@pytest.mark.parametrize("sigma", [Fraction(1, 10), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)])
def test_normal_form_leading_matches_bound(sigma):
    # alpha = sigma (1 - sigma) inverts the sigma formula
    n = 40
    alpha = sigma * (1 - sigma)
    lead = normal_form_leading(n, sigma * n)
    coef = lobo2_coefficient(alpha)
    assert abs(float(lead) - float(coef) * n ** 3) < 1e-9 * n ** 3


def test_lemma8_extremal():
    for n in (8, 16, 40):
        rep = lemma8_extremal(n)
        assert rep["attains"] and rep["bound"] == Fraction(n ** 3, 8)
        assert rep["graph_within_bound"]


def test_lobo2_bipartite():
    e, _ = nonminimal_bipartite_example(16, 2)
    rep = lobo2_check(e)
    assert rep.holds and rep.slack > 0


def test_thm5_audit_small():
    a = thm5_audit(5)
    assert a.c == 0 and a.worst_deficit <= 0 and a.instances_checked == 56


def test_degree_order_ties_by_label():
    e = Cochain.from_sets(6, 3, [(1, 2, 3), (4, 5, 6)])
    assert degree_order(e) == [1, 2, 3, 4, 5, 6]


def test_highdeg_empty():
    c = highdeg_certificate(Cochain.empty(8, 3), Fraction(1, 4))
    assert c.holds and c.quantities["F_hi"] == 0


def test_highdeg_multipartite():
    ex = multipartite_example(8, 3, (2, 2, 2, 2))
    c = highdeg_certificate(ex.E, Fraction(1, 4))
    assert c.holds
    assert c.hypotheses["E_minimality"]["minimal"]


def test_highdeg_recounts():
    ex = multipartite_example(8, 3, (2, 2, 2, 2))
    c = highdeg_certificate(ex.E, Fraction(1, 4))
    top = set(c.quantities["order"][:2])
    assert c.quantities["E_hi"] == sum(1 for s in ex.E.sets() if top & set(s))
    assert c.quantities["F_hi"] == sum(1 for s in ex.F.sets() if top & set(s))
    assert c.quantities["alpha_hi"] + c.quantities["alpha_lo"] == c.alpha


def test_highdeg_sample_of_minimal_n6():
    idx = np.flatnonzero(minimal_mask(6, 3))[::97]
    for x in idx:
        for beta in (Fraction(1, 6), Fraction(2, 6)):
            assert highdeg_certificate(Cochain(6, 3, int(x)), beta, check_minimality=False).holds


def test_low3_empty():
    assert low3_certificate(Cochain.empty(12, 3)).holds


@pytest.mark.parametrize("seed", range(5))
def test_low3_random(seed):
    rng = np.random.default_rng(seed)
    e = random_pair_capped_triples(12, 40, rng)
    c = low3_certificate(e)
    assert c.hypotheses["pair_degree_cap"]
    assert c.holds, c.failed_lines()
    assert c.params["tau"] == pytest.approx(float(c.params["sigma"]) ** (1 / 3))


def test_low3_recounts():
    e = random_pair_capped_triples(10, 25, np.random.default_rng(1))
    c = low3_certificate(e)
    ek = c.quantities["E_k"]
    assert sum(ek) == len(e)
    tau_n = c.params["tau"] * 10
    heavy = {p for p in combinations(range(1, 11), 2)
             if sum(1 for s in e.sets() if set(p) <= set(s)) >= tau_n}
    assert c.quantities["heavy_pairs"] == len(heavy)


def test_low3_reports_hypothesis_violation():
    e = Cochain.from_sets(8, 3, [(1, 2, k) for k in range(3, 9)])
    c = low3_certificate(e)
    assert not c.hypotheses["pair_degree_cap"]
    assert c.to_json()["hypotheses"]["max_pair_degree"] == 6
