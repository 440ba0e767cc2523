import json
from fractions import Fraction
from math import comb

import pytest

from cofilling.cochain import Cochain, CochainError
from cofilling.io import dumps
from cofilling.pagoda import (
    Pagoda,
    QUADRIPARTITE_LIMIT,
    SELECTION_FLOOR,
    pagoda_search,
    prop9_chain,
    quadripartite_pagoda,
    quadripartite_top_norm,
    relation_residuals,
    solve_c3_lower,
    verify_pagoda,
)


def test_quadripartite_n8():
    p = quadripartite_pagoda(8)
    rep = verify_pagoda(p, 0)
    assert rep.passes and rep.exact_minimality
    assert len(p.G) == 16 and rep.top_norm == Fraction(16, 70)
    assert all(v == 0 for v in rep.residuals.values())


@pytest.mark.parametrize("n", [4, 12, 16, 20, 24])
def test_quadripartite_relations_exact(n):
    p = quadripartite_pagoda(n)
    assert all(not r for r in relation_residuals(p).values())
    assert len(p.G) == (n // 4) ** 4


def test_top_norm_limit():
    assert quadripartite_top_norm(64) == Fraction(65536, 635376)
    vals = [quadripartite_top_norm(n) for n in range(8, 400, 4)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(v > QUADRIPARTITE_LIMIT for v in vals)
    assert vals[-1] - QUADRIPARTITE_LIMIT < Fraction(1, 200)


def test_bad_n():
    with pytest.raises(CochainError):
        quadripartite_pagoda(10)


def test_perturbation_detected():
    p = quadripartite_pagoda(8)
    q = p.copy()
    q.E[(1, 2)] = q.E[(1, 2)] + Cochain.from_sets(8, 2, [(1, 2)])
    rep = verify_pagoda(q, 0, check_minimality=False)
    assert not rep.relations_ok
    assert rep.residuals["dE12=sum F12k"] == Fraction(8 - 2, comb(8, 3))
    assert rep.residuals["dV1=sum E1j"] == Fraction(1, comb(8, 2))


def test_degenerate_fails_minimality():
    n = 8
    V = {1: Cochain.full(n, 1), 2: Cochain.empty(n, 1), 3: Cochain.empty(n, 1), 4: Cochain.empty(n, 1)}
    E = {k: Cochain.empty(n, 2) for k in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]}
    F = {k: Cochain.empty(n, 3) for k in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]}
    rep = verify_pagoda(Pagoda(n, V, E, F, Cochain.empty(n, 4)), 0)
    assert rep.relations_ok and not rep.minimal_ok and not rep.minimality["V1"]["minimal"]


def test_structure_checked():
    p = quadripartite_pagoda(8)
    with pytest.raises(CochainError):
        Pagoda(8, p.V, p.E, {}, p.G)
    with pytest.raises(CochainError):
        Pagoda(8, p.V, p.E, p.F, Cochain.empty(8, 3))


def test_json_roundtrip():
    p = quadripartite_pagoda(8)
    obj = json.loads(dumps(p))
    assert set(obj) >= {"V1", "E34", "F234", "G"}
    q = Pagoda.from_json(obj)
    assert q.G == p.G and q.F == p.F


def test_prop9_zero():
    c = prop9_chain(0.0)
    assert c.eps1 == c.eps2 == c.f_value == 0


def test_prop9_series():
    c = prop9_chain(1e-6)
    assert c.eps1 / 1e-6 == pytest.approx(6, rel=1e-4)
    assert c.eps2 / 1e-6 == pytest.approx(18, rel=1e-4)
    assert c.f_value / 1e-6 == pytest.approx(73.5, rel=1e-4)
    e = 1e-4
    assert prop9_chain(e).eps2 == pytest.approx(18 * e + 864 * e * e, rel=1e-4)
    for e in (1e-5, 1e-4, 1e-3):
        assert prop9_chain(e).eps1 == pytest.approx(6 * e + 72 * e * e, rel=1e-3)


def test_prop9_domain():
    with pytest.raises(ValueError):
        prop9_chain(1 / 48)


def test_solve_c3():
    eps0, c3 = solve_c3_lower()
    assert 0.00082 < eps0 < 0.00082 + 1e-5
    assert 0.06332 < c3 < 0.06332 + 1e-5
    assert prop9_chain(eps0).bound == pytest.approx(1 / 16, abs=1e-12)


def test_chain_monotone():
    grid = [i / 48 / 1000 for i in range(1000)]
    vals = [prop9_chain(e).bound for e in grid]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_search_result_verifies():
    res = pagoda_search(8, budget=150, seed=3)
    assert len(res.pagoda.G) <= 16
    rep = verify_pagoda(res.pagoda, 0)
    assert rep.passes
    out = res.to_json()
    assert out["optimal"] is False and out["reference_value"] == 0.0703125
    assert not out["below_selection_floor"] or res.report.top_norm < SELECTION_FLOOR


def test_search_deterministic():
    a = pagoda_search(8, budget=100, seed=7)
    b = pagoda_search(8, budget=100, seed=7)
    assert dumps(a) == dumps(b)
