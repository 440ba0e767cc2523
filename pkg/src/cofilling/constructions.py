"""Named example cochains with exact counts attached."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, prod
from typing import Sequence

from .cochain import Cochain, CochainError, coboundary


@dataclass
class PartitionedExample:
    part_sizes: tuple[int, ...]
    d: int
    parts: tuple[tuple[int, ...], ...]
    E: Cochain
    F: Cochain
    predicted_E_count: int
    predicted_F_count: int
    provenance: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.E.n

    def counts_match(self) -> bool:
        return len(self.E) == self.predicted_E_count and len(self.F) == self.predicted_F_count


def _blocks(sizes: Sequence[int], perm: Sequence[int] | None, n: int) -> list[tuple[int, ...]]:
    labels = list(range(1, n + 1))
    if perm is not None:
        if sorted(perm) != labels:
            raise CochainError("permutation must be a rearrangement of 1..n")
        labels = list(perm)
    out = []
    start = 0
    for s in sizes:
        out.append(tuple(sorted(labels[start:start + s])))
        start += s
    return out


def multipart_cochain(n: int, parts: Sequence[Sequence[int]]) -> Cochain:
    """All tuples that take exactly one vertex from each given part."""
    sets = [tuple(sorted(t)) for t in product(*parts)]
    return Cochain.from_sets(n, len(parts), sets)


def multipartite_example(n: int, d: int, part_sizes: Sequence[int],
                         perm: Sequence[int] | None = None) -> PartitionedExample:
    """The extremal upper-bound family: E is complete d-partite on V_1..V_d.

    Its coboundary is the complete (d+1)-partite system on V_1..V_{d+1}; this
    is checked by direct computation before returning.
    """
    sizes = tuple(int(s) for s in part_sizes)
    if len(sizes) != d + 1 or any(s <= 0 for s in sizes) or sum(sizes) != n:
        raise CochainError(f"need {d + 1} positive part sizes summing to {n}, got {sizes}")
    parts = _blocks(sizes, perm, n)
    e = multipart_cochain(n, parts[:d])
    f = coboundary(e)
    expected = multipart_cochain(n, parts)
    if f != expected:
        raise AssertionError("coboundary is not the complete (d+1)-partite system")
    return PartitionedExample(
        sizes, d, tuple(parts), e, f, prod(sizes[:d]), prod(sizes),
        {"construction": "multipartite", "n": n, "d": d, "part_sizes": list(sizes)},
    )


def max_part_argument(ex: PartitionedExample) -> dict:
    """Check the counting behind minimality of the multipartite example.

    Every f in F contains >= 1 member of E, every e in E lies in at most
    M = max |V_i| members of F, hence any E' with delta E' = F has
    |E'| >= |F| / M = |E| (the last equality needs M = |V_{d+1}|).
    """
    e, f = ex.E, ex.F
    e_set = set(e.sets())
    per_f = [sum(1 for c in combinations(s, ex.d) if c in e_set) for s in f.sets()]
    f_set = set(f.sets())
    n = e.n
    per_e = [sum(1 for v in range(1, n + 1) if v not in s and tuple(sorted(s + (v,))) in f_set)
             for s in e.sets()]
    m = max(ex.part_sizes)
    return {
        "every_f_hit": min(per_f, default=1) >= 1,
        "max_e_load": max(per_e, default=0),
        "M": m,
        "load_ok": max(per_e, default=0) <= m,
        "lower_bound": Fraction(len(f), m),
        "E_size": len(e),
        "tight": Fraction(len(f), m) == len(e),
    }


def edge_cut_example(n: int, s: int) -> tuple[Cochain, Cochain]:
    """``S = {1..s}`` and its edge cut ``delta S`` (complete bipartite S vs rest)."""
    if not 0 <= s <= n:
        raise CochainError(f"need 0 <= s <= n, got s={s}")
    S = Cochain.from_sets(n, 1, [(v,) for v in range(1, s + 1)])
    return S, coboundary(S)


def edge_cut_density(n: int, s: int) -> Fraction:
    return Fraction(s * (n - s), comb(n, 2))


def nonminimal_bipartite_example(n: int, a: int) -> tuple[Cochain, int]:
    """Complete bipartite graph between V_1 = {1..a} and V_2 = {a+1..a+n/2}.

    Satisfies the degree condition for a <= n/4 but is not minimal.  Returns
    the edge set and the exact size of its coboundary.
    """
    if n % 2:
        raise CochainError("n must be even")
    half = n // 2
    if a < 0 or a + half > n:
        raise CochainError(f"infeasible sizes a={a}, n/2={half} for n={n}")
    v1 = range(1, a + 1)
    v2 = range(a + 1, a + half + 1)
    e = Cochain.from_sets(n, 2, [(u, w) for u in v1 for w in v2])
    return e, len(coboundary(e))


def nonminimal_bipartite_delta_count(n: int, a: int) -> int:
    """Closed-form |delta E| for :func:`nonminimal_bipartite_example`.

    Only an edge plus a vertex outside both sides meets E in one edge.  Two
    vertices on one side and one on the other give two edges, and a bipartite
    graph has no triangles.
    """
    half = n // 2
    rest = n - a - half
    return a * half * rest


def lemma8_normal_form(n: int, m: int) -> Cochain:
    """Graph with m edges in the normal form used to maximize sum of deg^2.

    Vertices are filled greedily in label order: each v_i connects to all
    later vertices among v_1..v_{floor(n/2)+1} until the edge budget runs out,
    respecting the degree cap floor(n/2).
    """
    cap = n // 2
    top = cap + 1
    edges: list[tuple[int, int]] = []
    deg = [0] * (n + 1)
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            if len(edges) == m:
                break
            if deg[i] < cap and deg[j] < cap:
                edges.append((i, j))
                deg[i] += 1
                deg[j] += 1
    if len(edges) < m:
        raise CochainError(f"cannot place {m} edges under degree cap {cap} in normal form")
    return Cochain.from_sets(n, 2, edges)
