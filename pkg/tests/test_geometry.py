import json
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from cofilling.cochain import coboundary, is_cocycle
from cofilling.geometry import (
    EXAMPLE_SETS,
    GeneralPositionError,
    PointConfig,
    candidate_depths,
    depth_direct,
    fig1_check,
    fig1_config,
    fig1_probes,
    intersection_cochain,
    max_depth,
    orientation,
    point,
    probe_violations,
    verify_duality,
)


def random_config(rng, n, span=50):
    while True:
        P = PointConfig([(Fraction(int(a), int(b)), Fraction(int(c), int(d)))
                         for a, b, c, d in rng.integers(1, span, (n, 4))])
        if P.in_general_position() and len(set(P.points)) == n:
            return P


def random_probe(rng, P, k):
    while True:
        probe = [point(Fraction(int(a), int(b)), Fraction(int(c), int(d)))
                 for a, b, c, d in rng.integers(1, 60, (k, 4))]
        if not probe_violations(P, probe):
            return probe


def test_orientation():
    o, a, b = point(0, 0), point(1, 0), point(0, 1)
    assert orientation(o, a, b) == 1
    assert orientation(o, a, point(2, 0)) == 0
    assert orientation(a, o, b) == -1


def test_fig1_realization():
    assert all(fig1_check().values())
    P, _ = fig1_config()
    assert P.in_general_position()
    for key, probe in fig1_probes().items():
        assert not verify_duality(P, probe)
        assert sorted(intersection_cochain(P, probe).sets()) == sorted(EXAMPLE_SETS[key])


def test_fig1_depth():
    P, q = fig1_config()
    rep = max_depth(P)
    assert rep.depth >= 4 and rep.two_path_agree
    assert len(intersection_cochain(P, [q["z"]])) == 4


def test_outside_hull_and_single_triangle():
    P = PointConfig([(0, 0), (4, 0), (0, 4)])
    assert not intersection_cochain(P, [point(10, 10)])
    assert intersection_cochain(P, [point(1, 1)]).sets() == [(1, 2, 3)]


def test_degenerate_inputs():
    P = PointConfig([(0, 0), (1, 1), (2, 2), (0, 1)])
    assert P.degenerate_triples() == [(1, 2, 3)]
    with pytest.raises(GeneralPositionError):
        max_depth(P)
    Q = PointConfig([(0, 0), (4, 0), (0, 4)])
    with pytest.raises(GeneralPositionError):
        intersection_cochain(Q, [point(2, 0)])
    with pytest.raises(GeneralPositionError):
        intersection_cochain(Q, [point(-1, -1), point(1, 1)])


def test_n4_depth_oracle():
    # one point inside the triangle of the other three
    P = PointConfig([(0, 0), (6, 0), (0, 6), (1, 1)])
    rep = max_depth(P)
    grid = [point(Fraction(i, 7), Fraction(j, 7)) for i in range(-7, 50) for j in range(-7, 50)]
    grid = [x for x in grid if not probe_violations(P, [x])]
    assert rep.depth == max(depth_direct(P, x) for x in grid) == 2


@pytest.mark.parametrize("seed", range(20))
def test_duality_random(seed):
    rng = np.random.default_rng(seed)
    P = random_config(rng, int(rng.integers(4, 9)))
    x = random_probe(rng, P, 1)
    assert is_cocycle(intersection_cochain(P, x))
    for k in (2, 3):
        assert not verify_duality(P, random_probe(rng, P, k))


@pytest.mark.parametrize("seed", range(3))
def test_two_paths_all_candidates(seed):
    P = random_config(np.random.default_rng(100 + seed), 6)
    for x, a, b in candidate_depths(P):
        assert a == b == len(intersection_cochain(P, [x], check=False))


def test_depth_invariance():
    P = random_config(np.random.default_rng(7), 6)
    d = max_depth(P).depth
    assert max_depth(P.relabeled([3, 1, 6, 2, 5, 4])).depth == d
    assert max_depth(P.transformed(2, 1, Fraction(1, 3), 5, 7, -1)).depth == d


def test_json_roundtrip():
    P, _ = fig1_config()
    obj = json.loads(json.dumps(P.to_json()))
    assert PointConfig.from_json(obj) == P
    assert obj["points"][0] == [12, 1, 11, 1]


def test_duality_vacuous_at_three_points():
    P = PointConfig([(0, 0), (4, 0), (0, 4)])
    assert not verify_duality(P, [point(1, 1)])
