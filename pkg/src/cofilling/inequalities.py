"""Instance-level certificates for the counting arguments behind the d = 2, 3 bounds.

Every asymptotic inequality is checked here in an exact finite-n form; the
gap to the asymptotic statement is reported as an explicit slack rather than
being treated as zero.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .bounds import thm5
from .cochain import (
    Cochain,
    CochainError,
    coboundary,
    lk,
    pair_degrees,
    subset_table,
    vertex_degrees,
)
from .constructions import lemma8_normal_form
from .exhaustive import minimal_mask, popcount_table
from .minimality import CosetTooLarge, is_minimal_exact, necessary_conditions
from .profile import profile_exact


# ---------------------------------------------------------------------------
# graphs


@dataclass
class PieDecomposition:
    n: int
    E_size: int
    m1: int
    m2: int
    m3: int
    t: int
    degree_sequence: list[int]
    delta_size: int

    @property
    def formula(self) -> int:
        """(n-2)|E| - sum deg(deg-1) + 4t."""
        degs = self.degree_sequence
        return (self.n - 2) * self.E_size - sum(x * (x - 1) for x in degs) + 4 * self.t

    @property
    def truncated(self) -> int:
        """(n-2)|E| - sum deg^2, a lower bound on |delta E|."""
        return (self.n - 2) * self.E_size - sum(x * x for x in self.degree_sequence)

    def identity_holds(self) -> bool:
        return self.delta_size == self.m1 + self.m3 == self.formula

    def to_json(self) -> dict:
        out = asdict(self)
        out.update(formula=self.formula, truncated=self.truncated, identity_holds=self.identity_holds())
        return out


def pie_decompose(e: Cochain) -> PieDecomposition:
    """Count triples by how many edges of ``e`` they contain."""
    if e.arity != 2:
        raise CochainError("pie decomposition needs an arity-2 cochain")
    n = e.n
    arr = e.to_array()
    triples = subset_table(n, 3)
    if len(triples):
        # facets of {a,b,c}: bc, ac, ab -> edge ranks via colex formula
        a, b, c = triples[:, 0], triples[:, 1], triples[:, 2]

        def er(u, v):
            return (u - 1) + (v - 1) * (v - 2) // 2

        hits = arr[er(b, c)].astype(int) + arr[er(a, c)] + arr[er(a, b)]
        m = np.bincount(hits, minlength=4)
    else:
        m = np.zeros(4, dtype=int)
    degs = vertex_degrees(e).tolist()
    delta_size = len(coboundary(e)) if n >= 3 else 0
    return PieDecomposition(n, len(e), int(m[1]), int(m[2]), int(m[3]), int(m[3]), degs, delta_size)


def lobo2_sigma(alpha: float) -> float:
    return (1 - math.sqrt(1 - 4 * alpha)) / 2


def lobo2_coefficient(alpha) -> Fraction | float:
    """(s/4)(1 + 2s - 4s^2) with s = (1 - sqrt(1 - 4 alpha))/2; exact at alpha = 1/4."""
    if alpha > Fraction(1, 4):
        raise ValueError("the degree-squared bound needs alpha <= 1/4")
    if alpha == Fraction(1, 4):
        s = Fraction(1, 2)
    else:
        s = lobo2_sigma(float(alpha))
    return s / 4 * (1 + 2 * s - 4 * s * s)


def lobo2_bound(n: int, e_size: int) -> float:
    """Leading-order bound on sum of squared degrees, coefficient times n^3."""
    alpha = Fraction(e_size, comb(n, 2))
    return lobo2_coefficient(alpha) * n ** 3


def normal_form_leading(n: int, k) -> Fraction:
    """k n^2/4 + (n/2 - k) k^2: the degree-square count of the normal form, O(n^2) dropped."""
    return Fraction(k) * n * n / 4 + (Fraction(n, 2) - k) * Fraction(k) ** 2


@dataclass
class Lobo2Report:
    n: int
    E_size: int
    alpha: Fraction
    degree_cap_ok: bool
    sum_deg_sq: int
    bound: float
    slack: float  # bound - sum_deg_sq
    holds: bool

    def to_json(self) -> dict:
        return asdict(self)


def lobo2_check(e: Cochain) -> Lobo2Report:
    if e.arity != 2:
        raise CochainError("needs an arity-2 cochain")
    degs = vertex_degrees(e)
    alpha = Fraction(len(e), comb(e.n, 2))
    cap_ok = bool((2 * degs <= e.n).all())
    s2 = int((degs ** 2).sum())
    b = float(lobo2_bound(e.n, len(e)))
    return Lobo2Report(e.n, len(e), alpha, cap_ok, s2, b, b - s2, cap_ok and s2 <= b)


def lemma8_extremal(n: int) -> dict:
    """The alpha = 1/4 end of the degree-squared bound.

    The proof's normal form with ``k = n/2`` saturated vertices has leading
    degree-square count exactly equal to the bound ``n^3/8``; the concrete
    normal-form graph with ``C(n,2)/4`` edges is also built and measured.
    """
    if n % 2:
        raise CochainError("need even n")
    lead = normal_form_leading(n, Fraction(n, 2))
    bound = lobo2_coefficient(Fraction(1, 4)) * n ** 3
    m = comb(n, 2) // 4
    g = lemma8_normal_form(n, m)
    rep = lobo2_check(g)
    return {
        "n": n,
        "bound": bound,
        "normal_form_leading": lead,
        "attains": lead == bound,
        "graph_edges": m,
        "graph_sum_deg_sq": rep.sum_deg_sq,
        "graph_within_bound": rep.sum_deg_sq <= bound,
    }


# ---------------------------------------------------------------------------
# the d = 2 finite-n audit


@dataclass
class Thm5Audit:
    n: int
    instances_checked: int
    worst_deficit: float  # max over minimal E of thm5(||E||) - ||delta E||
    c: float  # n * max(worst_deficit, 0)
    rows: list[tuple[int, int, float, float]]  # (|E|, min |delta E|, ||delta E||, thm5)

    def to_json(self) -> dict:
        return asdict(self)


def thm5_audit(n: int) -> Thm5Audit:
    """Compare every exactly-minimal graph with ||E|| <= 1/4 against the d = 2 bound.

    The bound depends only on |E|, so the worst instance of each size is the
    profile minimum; the measured correction is ``c = n * max deficit``.
    """
    records = profile_exact(n, 2)
    total = comb(n, 2)
    worst = -math.inf
    rows = []
    mask = minimal_mask(n, 2)
    pop = popcount_table(n, 2)
    checked = 0
    for rec in records:
        a = Fraction(rec.E_size, total)
        if a > Fraction(1, 4):
            continue
        checked += int(np.count_nonzero(mask & (pop == rec.E_size)))
        val = float(rec.norm_delta)
        f = float(thm5(a))
        rows.append((rec.E_size, rec.min_delta_size, val, f))
        worst = max(worst, f - val)
    return Thm5Audit(n, checked, worst, n * max(worst, 0.0), rows)


# ---------------------------------------------------------------------------
# d = 3: high-degree vertices


def degree_order(e: Cochain) -> list[int]:
    """Vertices by decreasing degree, ties by label."""
    degs = vertex_degrees(e)
    return sorted(range(1, e.n + 1), key=lambda v: (-int(degs[v - 1]), v))


@dataclass
class HighLowCertificate:
    kind: str
    n: int
    d: int
    E_size: int
    alpha: Fraction
    params: dict
    quantities: dict = field(default_factory=dict)
    lines: list[dict] = field(default_factory=list)
    hypotheses: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(line["holds"] for line in self.lines)

    def failed_lines(self) -> list[str]:
        return [line["name"] for line in self.lines if not line["holds"]]

    def to_json(self) -> dict:
        out = asdict(self)
        out["holds"] = self.holds
        return out


def _line(name: str, lhs, rhs, relation: str = ">=") -> dict:
    holds = lhs >= rhs if relation == ">=" else lhs <= rhs
    return {"name": name, "lhs": lhs, "relation": relation, "rhs": rhs, "holds": bool(holds)}


def _minimality_record(e: Cochain, max_rank: int) -> dict:
    try:
        v = is_minimal_exact(e, max_rank)
        return {"method": "exact", "minimal": v.minimal}
    except CosetTooLarge:
        return {"method": "necessary-only", "minimal": necessary_conditions(e).passes}


def highdeg_certificate(e: Cochain, beta: Fraction, max_rank: int = 20,
                        check_minimality: bool = True) -> HighLowCertificate:
    """Check the high-degree counting argument line by line on one instance.

    With v_1..v_n in decreasing degree order, r = floor(beta n), L_i the link
    of v_i and F_hi the members of delta E meeting v_1..v_r, the exact chain is

        #{f in delta E : v_i in f, f avoids v_1..v_{i-1}}
            >= (n-2d+1)/d |L_i| - |E| - (i-1) C(n-2, d-1)              (per vertex)
        |F_hi| >= (n-2d+1)/d |E_hi| - r(r-1)/2 C(n-2,d-1) - r|E|       (summed)

    which normalizes to (d+1)/d a_hi - (d+1)d/2 b^2 - (d+1) a b - O(1/n).
    The per-vertex line needs |delta L_i| >= (n-d+1)/d |L_i|, which holds
    whenever L_i is minimal; it is checked directly.
    """
    n, d = e.n, e.arity
    beta = Fraction(beta)
    r = math.floor(beta * n)
    order = degree_order(e)
    top = order[:r]
    cap = comb(n - 2, d - 1)
    total = comb(n, d)
    total_f = comb(n, d + 1)
    alpha = Fraction(len(e), total)

    delta_e = coboundary(e)
    f_subs = subset_table(n, d + 1)[delta_e.to_array()]
    e_subs = subset_table(n, d)[e.to_array()]
    top_arr = np.array(top, dtype=np.int64)
    e_hi = int(np.isin(e_subs, top_arr).any(axis=1).sum()) if len(e_subs) else 0
    f_hi = int(np.isin(f_subs, top_arr).any(axis=1).sum()) if len(f_subs) else 0

    cert = HighLowCertificate("highdeg", n, d, len(e), alpha, {"beta": beta, "r": r})
    if check_minimality:
        cert.hypotheses["E_minimality"] = _minimality_record(e, max_rank)
    lines = cert.lines
    coef = Fraction(n - 2 * d + 1, d)
    link_sum = 0
    per_vertex_total = Fraction(0)
    for i, v in enumerate(top, start=1):
        L = lk(v, e)
        link_sum += len(L)
        dL = len(coboundary(L))
        lines.append(_line(f"basic_bound_link[v={v}]", Fraction(dL), Fraction(n - d + 1, d) * len(L)))
        earlier = np.array(top[:i - 1], dtype=np.int64)
        has_v = (f_subs == v).any(axis=1)
        avoid = ~np.isin(f_subs, earlier).any(axis=1) if i > 1 else np.ones(len(f_subs), dtype=bool)
        count = int((has_v & avoid).sum())
        rhs = coef * len(L) - len(e) - (i - 1) * cap
        per_vertex_total += rhs
        lines.append(_line(f"new_coboundary_sets[v={v}]", Fraction(count), rhs))
    lines.append(_line("F_hi_vs_vertex_sum", Fraction(f_hi), per_vertex_total))
    lines.append(_line("link_sum_covers_E_hi", link_sum, e_hi))
    finite_rhs = coef * e_hi - Fraction(r * (r - 1), 2) * cap - r * len(e)
    lines.append(_line("F_hi_finite", Fraction(f_hi), finite_rhs))

    norm_f_hi = Fraction(f_hi, total_f)
    a_hi = Fraction(e_hi, total)
    asym = Fraction(d + 1, d) * a_hi - Fraction((d + 1) * d, 2) * beta ** 2 - (d + 1) * alpha * beta
    cert.quantities.update(
        order=order, E_hi=e_hi, F_hi=f_hi, alpha_hi=a_hi, alpha_lo=alpha - a_hi, norm_F_hi=norm_f_hi,
        finite_rhs_normalized=finite_rhs / total_f, asymptotic_rhs=asym,
        o1n_slack=asym - finite_rhs / total_f,
    )
    return cert


# ---------------------------------------------------------------------------
# d = 3: low vertex degrees


def low3_certificate(e: Cochain, tau: float | Fraction | None = None) -> HighLowCertificate:
    """Check the low-degree counting argument for triple systems line by line.

    ``tau`` defaults to sigma^(1/3), sigma = max vertex degree / C(n,2).
    Hypothesis violations (pair degree above n/2) are recorded in
    ``hypotheses`` and the lines that depend on them are still evaluated.
    """
    if e.arity != 3:
        raise CochainError("needs an arity-3 cochain")
    n = e.n
    size = len(e)
    vdeg = vertex_degrees(e)
    sigma = Fraction(int(vdeg.max()) if size else 0, comb(n, 2))
    if tau is None:
        tau = float(sigma) ** (1 / 3) if sigma else 1.0
    tau_f = Fraction(tau) if not isinstance(tau, Fraction) else tau
    tau_n = tau_f * n

    pdeg = pair_degrees(e)
    heavy = pdeg >= tau_n
    light_sq = int((pdeg[~heavy] ** 2).sum())
    heavy_sq = int((pdeg[heavy] ** 2).sum())

    # per triple: number of heavy pairs
    subs = subset_table(n, 3)[e.to_array()]
    if size:
        a, b, c = subs[:, 0], subs[:, 1], subs[:, 2]

        def pr(u, v):
            return (u - 1) + (v - 1) * (v - 2) // 2

        k = heavy[pr(a, b)].astype(int) + heavy[pr(a, c)] + heavy[pr(b, c)]
        ek = np.bincount(k, minlength=4)
    else:
        ek = np.zeros(4, dtype=int)

    cert = HighLowCertificate("low3", n, 3, size, Fraction(size, comb(n, 3)),
                              {"tau": tau_f, "sigma": sigma})
    cert.hypotheses["pair_degree_cap"] = bool((2 * pdeg <= n).all())
    cert.hypotheses["max_pair_degree"] = int(pdeg.max()) if size else 0
    lines = cert.lines
    delta_size = len(coboundary(e))
    total_sq = light_sq + heavy_sq
    lines.append(_line("delta_vs_pair_squares", delta_size, (n - 3) * size - total_sq))
    lines.append(_line("light_pairs", Fraction(light_sq), 3 * tau_n * size, "<="))
    lines.append(_line("heavy_pairs", Fraction(heavy_sq),
                       Fraction(n, 2) * (int(ek[1]) + 2 * int(ek[2]) + 3 * int(ek[3])), "<="))

    # heavy-heavy pairs inside vertex links
    m_total = 0
    bound_total = Fraction(0)
    for v in range(1, n + 1):
        L = lk(v, e)
        if not L:
            continue
        gdeg = vertex_degrees(L)
        hv = np.flatnonzero(gdeg >= tau_n) + 1
        hset = set(hv.tolist())
        m_v = sum(1 for (x, y) in L.sets() if x in hset and y in hset)
        h = len(hv)
        m_total += m_v
        lines.append(_line(f"heavy_vertices_in_link[v={v}]", Fraction(h), 2 * Fraction(len(L)) / tau_n, "<="))
        bnd = sigma / tau_f ** 2 * len(L)
        bound_total += bnd
        lines.append(_line(f"m_v[v={v}]", Fraction(m_v), min(Fraction(comb(h, 2)), bnd), "<="))
    e23 = int(ek[2]) + int(ek[3])
    lines.append(_line("E2_plus_E3", Fraction(e23), Fraction(m_total), "<="))
    lines.append(_line("E2_plus_E3_bound", Fraction(e23), 3 * sigma / tau_f ** 2 * size, "<="))
    pair_sq_bound = (3 * tau_n + Fraction(n, 2) + 3 * sigma / tau_f ** 2 * n) * size
    lines.append(_line("pair_squares_total", Fraction(total_sq), pair_sq_bound, "<="))
    conclusion_rhs = (n - 3) * size - pair_sq_bound
    lines.append(_line("conclusion", Fraction(delta_size), conclusion_rhs))

    norm_e = Fraction(size, comb(n, 3))
    norm_d = Fraction(delta_size, comb(n, 4))
    # normalized: ||dE|| >= (4 - 4n/(n-3) (3 tau + 1/2 + 3 sigma/tau^2)) ||E||
    factor = 4 - Fraction(4 * n, n - 3) * (3 * tau_f + Fraction(1, 2) + 3 * sigma / tau_f ** 2)
    cert.quantities.update(
        E_k=[int(x) for x in ek], light_sq=light_sq, heavy_sq=heavy_sq,
        heavy_pairs=int(heavy.sum()), delta_size=delta_size, norm_E=norm_e, norm_delta=norm_d,
        factor=factor, m_total=m_total,
        # with tau = sigma^(1/3) the factor tends to 2 - 24 sigma^(1/3)
        asymptotic_constant=24,
    )
    lines.append(_line("normalized_conclusion", norm_d, factor * norm_e))
    return cert


def random_pair_capped_triples(n: int, m: int, rng: np.random.Generator) -> Cochain:
    """Random triple system with pair degrees <= n/2, grown by rejection."""
    chosen: list[tuple[int, int, int]] = []
    seen = set()
    pd: dict[tuple[int, int], int] = {}
    cap = n // 2
    attempts = 0
    while len(chosen) < m and attempts < 50 * m + 100:
        attempts += 1
        t = tuple(sorted(rng.choice(np.arange(1, n + 1), 3, replace=False).tolist()))
        if t in seen:
            continue
        pairs = list(combinations(t, 2))
        if any(pd.get(p, 0) >= cap for p in pairs):
            continue
        seen.add(t)
        chosen.append(t)
        for p in pairs:
            pd[p] = pd.get(p, 0) + 1
    return Cochain.from_sets(n, 3, chosen)
