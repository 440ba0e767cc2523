"""Pagodas: towers of minimal cochains over four indices with a common arity-4 top.

Index conventions: ``V[i]`` for i in 1..4, ``E[(i, j)]`` for i < j,
``F[(i, j, k)]`` for i < j < k.  The relations are

    V1 + V2 + V3 + V4 ~ V,   delta V_i ~ sum_j E_ij,
    delta E_ij ~ sum_k F_ijk,   delta F_ijk ~ G,

with ``~`` meaning a normalized symmetric difference of at most ``eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .bounds import bisect, phi1
from .cochain import Cochain, CochainError, coboundary
from .constructions import multipart_cochain
from .io import cochain_from_json, cochain_to_json
from .minimality import CosetTooLarge, is_minimal_exact, necessary_conditions

IDX = (1, 2, 3, 4)
PAIRS = tuple(combinations(IDX, 2))
TRIPLES = tuple(combinations(IDX, 3))
QUADRIPARTITE_LIMIT = Fraction(3, 32)
SELECTION_FLOOR = Fraction(1, 16)
SEARCH_REFERENCE = 0.0703125  # numerically indicated optimum, for comparison only


def _key(idx) -> str:
    return "".join(str(i) for i in idx)


@dataclass
class Pagoda:
    n: int
    V: dict[int, Cochain]
    E: dict[tuple[int, int], Cochain]
    F: dict[tuple[int, int, int], Cochain]
    G: Cochain

    def __post_init__(self):
        want = [(self.V, IDX, 1), (self.E, PAIRS, 2), (self.F, TRIPLES, 3), ({(): self.G}, ((),), 4)]
        for table, keys, arity in want:
            if set(table) != set(keys):
                raise CochainError(f"pagoda needs index set {keys}, got {sorted(table)}")
            for c in table.values():
                if c.n != self.n or c.arity != arity:
                    raise CochainError(f"expected arity {arity} on n={self.n}, got {c.arity} on n={c.n}")

    @property
    def top_norm(self) -> Fraction:
        return self.G.norm()

    def copy(self) -> "Pagoda":
        return Pagoda(self.n, dict(self.V), dict(self.E), dict(self.F), self.G)

    def to_json(self) -> dict:
        out = {"n": self.n}
        for i, c in self.V.items():
            out[f"V{i}"] = cochain_to_json(c)
        for k, c in self.E.items():
            out[f"E{_key(k)}"] = cochain_to_json(c)
        for k, c in self.F.items():
            out[f"F{_key(k)}"] = cochain_to_json(c)
        out["G"] = cochain_to_json(self.G)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Pagoda":
        try:
            V = {i: cochain_from_json(obj[f"V{i}"]) for i in IDX}
            E = {k: cochain_from_json(obj[f"E{_key(k)}"]) for k in PAIRS}
            F = {k: cochain_from_json(obj[f"F{_key(k)}"]) for k in TRIPLES}
            G = cochain_from_json(obj["G"])
        except KeyError as exc:
            raise CochainError(f"pagoda JSON missing field {exc}") from None
        return cls(int(obj.get("n", G.n)), V, E, F, G)


def _others(idx: tuple[int, ...]) -> list[int]:
    return [k for k in IDX if k not in idx]


def _tri(i: int, j: int, k: int) -> tuple[int, int, int]:
    return tuple(sorted((i, j, k)))


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def relation_residuals(p: Pagoda) -> dict[str, Cochain]:
    """Symmetric differences of every relation, keyed by a readable name."""
    n = p.n
    out = {}
    s = Cochain.full(n, 1)
    for i in IDX:
        s = s + p.V[i]
    out["V1+V2+V3+V4=V"] = s
    for i in IDX:
        r = coboundary(p.V[i])
        for j in _others((i,)):
            r = r + p.E[_pair(i, j)]
        out[f"dV{i}=sum E{i}j"] = r
    for key in PAIRS:
        r = coboundary(p.E[key])
        for k in _others(key):
            r = r + p.F[_tri(*key, k)]
        out[f"dE{_key(key)}=sum F{_key(key)}k"] = r
    for key in TRIPLES:
        out[f"dF{_key(key)}=G"] = coboundary(p.F[key]) + p.G
    return out


@dataclass
class PagodaReport:
    n: int
    eps: Fraction
    residuals: dict[str, Fraction]
    minimality: dict[str, dict]
    top_size: int
    top_norm: Fraction
    relations_ok: bool
    minimal_ok: bool
    exact_minimality: bool

    @property
    def passes(self) -> bool:
        return self.relations_ok and self.minimal_ok

    def to_json(self) -> dict:
        return {
            "n": self.n, "eps": self.eps, "residuals": self.residuals,
            "minimality": self.minimality, "top_size": self.top_size,
            "top_norm": self.top_norm, "relations_ok": self.relations_ok,
            "minimal_ok": self.minimal_ok, "exact_minimality": self.exact_minimality,
            "passes": self.passes,
        }


def _minimality_entry(c: Cochain, max_rank: int) -> dict:
    if c.arity == 1:
        return {"method": "exact", "minimal": 2 * len(c) <= c.n}
    try:
        return {"method": "exact", "minimal": is_minimal_exact(c, max_rank).minimal}
    except CosetTooLarge:
        return {"method": "necessary-only", "minimal": necessary_conditions(c).passes}


def verify_pagoda(p: Pagoda, eps=0, max_rank: int = 21, check_minimality: bool = True) -> PagodaReport:
    """Residual norm of every relation, plus minimality of every V, E, F.

    Arity-1 minimality means ``|V_i| <= n/2``.  Higher arities use the exact
    coset scan when its rank is at most ``max_rank`` and the necessary
    conditions otherwise; the method is recorded per member.
    """
    eps = Fraction(eps)
    res = {name: c.norm() for name, c in relation_residuals(p).items()}
    mins: dict[str, dict] = {}
    if check_minimality:
        for i in IDX:
            mins[f"V{i}"] = _minimality_entry(p.V[i], max_rank)
        for key in PAIRS:
            mins[f"E{_key(key)}"] = _minimality_entry(p.E[key], max_rank)
        for key in TRIPLES:
            mins[f"F{_key(key)}"] = _minimality_entry(p.F[key], max_rank)
    return PagodaReport(
        p.n, eps, res, mins, len(p.G), p.top_norm,
        relations_ok=all(v <= eps for v in res.values()),
        minimal_ok=all(m["minimal"] for m in mins.values()),
        exact_minimality=bool(mins) and all(m["method"] == "exact" for m in mins.values()),
    )


def quadripartite_pagoda(n: int) -> Pagoda:
    """Quarters V_i; E, F, G the complete bi-, tri- and quadripartite systems."""
    if n <= 0 or n % 4:
        raise CochainError(f"n must be a positive multiple of 4, got {n}")
    q = n // 4
    parts = {i: tuple(range((i - 1) * q + 1, i * q + 1)) for i in IDX}
    V = {i: multipart_cochain(n, [parts[i]]) for i in IDX}
    E = {k: multipart_cochain(n, [parts[i] for i in k]) for k in PAIRS}
    F = {k: multipart_cochain(n, [parts[i] for i in k]) for k in TRIPLES}
    G = multipart_cochain(n, [parts[i] for i in IDX])
    return Pagoda(n, V, E, F, G)


def quadripartite_top_norm(n: int) -> Fraction:
    return Fraction((n // 4) ** 4, comb(n, 4))


# ---------------------------------------------------------------------------
# the numeric chain


@dataclass
class Prop9Chain:
    eps0: float
    eps1: float
    eps2: float
    f_value: float
    bound: float  # f + 2 eps0

    def to_json(self) -> dict:
        return dict(self.__dict__)


def prop9_chain(eps0: float) -> Prop9Chain:
    if not 0 <= eps0 < 1 / 48:
        raise ValueError(f"eps0 must lie in [0, 1/48), got {eps0}")
    eps1 = (1 - math.sqrt(1 - 48 * eps0)) / 4
    # 4 phi1(1/4 - 3 eps1) = 4 (3/8 - eps2)
    eps2 = 0.375 - phi1(0.25 - 3 * eps1)
    f = 6 * eps0 + 6.75 * eps1 - 24 * eps1 ** 2 + 1.5 * eps2 - 2 * eps1 * eps2
    return Prop9Chain(eps0, eps1, eps2, f, f + 2 * eps0)


def solve_c3_lower(tol: float = 1e-14) -> tuple[float, float]:
    """Root of f(e) + 2e = 1/16 on (0, 1/48); returns (eps0*, 1/16 + eps0*)."""
    root = bisect(lambda e: prop9_chain(e).bound - 0.0625, 0.0, 1 / 48 - 1e-15, tol=tol)
    return root, 0.0625 + root


# ---------------------------------------------------------------------------
# local search


@dataclass
class SearchResult:
    pagoda: Pagoda
    report: PagodaReport
    moves_tried: int
    moves_accepted: int
    budget_exhausted: bool
    seed: int
    start_top_norm: Fraction
    history: list[tuple[int, int]] = field(default_factory=list)  # (move, |G|)

    def to_json(self) -> dict:
        norm = self.report.top_norm
        return {
            "pagoda": self.pagoda.to_json(),
            "report": self.report.to_json(),
            "moves_tried": self.moves_tried,
            "moves_accepted": self.moves_accepted,
            "budget_exhausted": self.budget_exhausted,
            "seed": self.seed,
            "start_top_norm": self.start_top_norm,
            "top_norm": norm,
            "reference_value": SEARCH_REFERENCE,
            "below_selection_floor": norm < SELECTION_FLOOR,
            "optimal": False,
        }


def _random_move(p: Pagoda, rng: np.random.Generator) -> Pagoda:
    """One relation-preserving move; every relation stays exact."""
    n = p.n
    q = p.copy()
    kind = rng.integers(3)
    if kind == 0:
        # all F change by a triple t, G by delta t
        t = tuple(sorted(rng.choice(np.arange(1, n + 1), 3, replace=False).tolist()))
        dt = Cochain.from_sets(n, 3, [t])
        for key in TRIPLES:
            q.F[key] = q.F[key] + dt
        q.G = q.G + coboundary(dt)
    elif kind == 1:
        # gauge: E_ij, E_ik, E_jk += D, F_ijk += delta D
        key = TRIPLES[rng.integers(len(TRIPLES))]
        e = tuple(sorted(rng.choice(np.arange(1, n + 1), 2, replace=False).tolist()))
        D = Cochain.from_sets(n, 2, [e])
        for pr in combinations(key, 2):
            q.E[pr] = q.E[pr] + D
        q.F[key] = q.F[key] + coboundary(D)
    else:
        # vertex: V_i, V_j += {v}, E_ij += delta {v}
        key = PAIRS[rng.integers(len(PAIRS))]
        v = int(rng.integers(1, n + 1))
        S = Cochain.from_sets(n, 1, [(v,)])
        for i in key:
            q.V[i] = q.V[i] + S
        q.E[key] = q.E[key] + coboundary(S)
    return q


def _cheap_ok(p: Pagoda) -> bool:
    if any(2 * len(v) > p.n for v in p.V.values()):
        return False
    return all(necessary_conditions(c, max_violations=1).passes
               for c in list(p.E.values()) + list(p.F.values()))


def pagoda_search(n: int, budget: int = 2000, seed: int = 0, start: Pagoda | None = None,
                  max_rank: int = 21, temperature: float = 2.0) -> SearchResult:
    """Annealed local search on ``|G|`` from the quadripartite pagoda.

    Moves keep all relations exact; an uphill step of size k is taken with
    probability exp(-k/T), T falling linearly from ``temperature`` to 0.  Candidates are screened with the cheap
    necessary conditions and re-verified in full (exact minimality where the
    coset rank allows) before they replace the incumbent.  The result is a
    heuristic best, never a claimed optimum.
    """
    rng = np.random.default_rng(seed)
    cur = start.copy() if start is not None else quadripartite_pagoda(n)
    best_report = verify_pagoda(cur, 0, max_rank)
    if not best_report.passes:
        raise CochainError("starting pagoda does not verify")
    start_norm = best_report.top_norm
    best = cur
    accepted = 0
    history = [(0, len(cur.G))]
    for t in range(1, budget + 1):
        cand = _random_move(cur, rng)
        up = len(cand.G) - len(cur.G)
        temp = temperature * (1 - t / budget)
        if up > 0 and (temp <= 0 or rng.random() >= math.exp(-up / temp)):
            continue
        if not _cheap_ok(cand):
            continue
        if len(cand.G) < len(best.G):
            rep = verify_pagoda(cand, 0, max_rank)
            if not rep.passes:
                continue
            best, best_report = cand, rep
            history.append((t, len(cand.G)))
        cur = cand
        accepted += 1
    final = verify_pagoda(best, 0, max_rank)
    if not final.passes:
        raise AssertionError("search result failed re-verification")
    return SearchResult(best, final, budget, accepted, True, seed, start_norm, history)
