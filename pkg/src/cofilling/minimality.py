"""Minimality of cochains inside their switching class.

A cochain E is minimal when no E' with the same coboundary is smaller.  The
E' with ``delta E' = delta E`` form the coset ``E + ker(delta)``; on the
simplex the kernel at arity r >= 2 is the coboundary space ``delta(arity r-1)``,
and at arity 1 it is ``{0, V}``.

Exact tests enumerate the whole coset and are therefore guarded by the coset
rank.  Deciding minimality is NP-complete already for graphs, so for large n
only :func:`necessary_conditions` is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

from . import gf2
from .cochain import (
    Cochain,
    CochainError,
    coboundary,
    face_table,
    subset_unrank,
)

MAX_COSET_RANK = 28
_LOW_BLOCK = 14


class CosetTooLarge(CochainError):
    """Exact enumeration refused: the coset has more than 2^MAX_COSET_RANK members."""


@dataclass(frozen=True)
class CoboundaryBasis:
    n: int
    arity: int
    basis: tuple[Cochain, ...]
    preimages: tuple[Cochain, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass
class MinimalityVerdict:
    minimal: bool
    method: str  # "exact" | "necessary-only"
    coset_rank: int
    witness: Cochain | None = None  # D with ||E + delta D|| < ||E||
    improved: Cochain | None = None  # E + delta D

    def to_json(self) -> dict:
        from .io import cochain_to_json

        return {
            "minimal": self.minimal,
            "method": self.method,
            "witness": None if self.witness is None else cochain_to_json(self.witness),
            "improved": None if self.improved is None else cochain_to_json(self.improved),
            "coset_rank": self.coset_rank,
        }


@dataclass
class NecessaryReport:
    passes: bool
    norm: Fraction
    norm_ok: bool
    cap: Fraction
    violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passes": self.passes,
            "norm": str(self.norm),
            "norm_ok": self.norm_ok,
            "face_degree_cap": str(self.cap),
            "violations": [{"face": list(x), "degree": d} for x, d in self.violations],
        }


# ---------------------------------------------------------------------------
# bases


@lru_cache(maxsize=32)
def coboundary_basis(n: int, r: int) -> CoboundaryBasis:
    """Independent spanning set of the arity-r coboundaries ``{delta D}``.

    Non-reduced convention: at arity 1 only the empty cochain is a
    coboundary, so the basis is empty.
    """
    if r < 1:
        raise CochainError("coboundary basis needs arity >= 1")
    if r > n:
        raise CochainError(f"arity {r} exceeds n = {n}")
    if r == 1:
        return CoboundaryBasis(n, 1, (), ())
    images = []
    tags = []
    for k in range(comb(n, r - 1)):
        images.append(coboundary(Cochain(n, r - 1, 1 << k)).bits)
        tags.append(1 << k)
    basis, btags = gf2.reduce_basis(images, tags)
    keys = sorted(basis)
    return CoboundaryBasis(
        n,
        r,
        tuple(Cochain(n, r, basis[p]) for p in keys),
        tuple(Cochain(n, r - 1, btags[p]) for p in keys),
    )


def switching_rank(n: int, r: int) -> int:
    """Dimension of ``ker(delta)`` at arity r, i.e. log2 of the coset size.

    The simplex is acyclic, so for r >= 2 this is the rank of the coboundary
    space, ``C(n-1, r-1)``; at arity 1 the kernel is ``{0, V}``.
    """
    if r < 1 or r > n:
        raise CochainError(f"arity {r} outside 1..{n}")
    return 1 if r == 1 else comb(n - 1, r - 1)


def switching_basis(n: int, r: int) -> CoboundaryBasis:
    """Basis of ``ker(delta)`` at arity r: the moves that keep delta fixed.

    For arity 1 this is ``{V}`` (its preimage recorded as the empty arity-0
    cochain, since V is a cocycle but not a coboundary).
    """
    if r == 1:
        return CoboundaryBasis(n, 1, (Cochain.full(n, 1),), (Cochain(n, 0, 0),))
    return coboundary_basis(n, r)


# ---------------------------------------------------------------------------
# coset scan


def _to_words(x: int, w: int) -> np.ndarray:
    return np.array([(x >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(w)], dtype=np.uint64)


def _from_words(row: np.ndarray) -> int:
    return sum(int(v) << (64 * i) for i, v in enumerate(row))


def _least_row(rows: np.ndarray) -> int:
    """Index of the row with the smallest integer value (words little-endian)."""
    keys = [rows[:, i] for i in range(rows.shape[1])]
    return int(np.lexsort(keys)[0])


@dataclass
class _Scan:
    min_pop: int
    min_bits: int  # colex-least member of minimum size
    min_mask: int
    below_bits: int | None  # colex-least member strictly smaller than E
    below_mask: int | None


def _coset_scan(e_bits: int, nbits: int, vectors: list[int]) -> _Scan:
    """Walk ``e + span(vectors)``; vectorized over a low block, Gray code over the rest."""
    w = max(1, (nbits + 63) // 64)
    k = len(vectors)
    k1 = min(k, _LOW_BLOCK)
    low = np.zeros((1, w), dtype=np.uint64)
    for v in vectors[:k1]:
        low = np.concatenate([low, low ^ _to_words(v, w)])
    high = [_to_words(v, w) for v in vectors[k1:]]
    target = e_bits.bit_count()

    cur = _to_words(e_bits, w)
    hi_mask = 0
    best: tuple[int, int, int] | None = None  # (pop, bits, mask)
    below: tuple[int, int] | None = None  # (bits, mask)

    def visit(cur_words, hi_mask):
        nonlocal best, below
        rows = low ^ cur_words
        pops = gf2.popcount(rows).sum(axis=1, dtype=np.int64)
        m = int(pops.min())
        if best is None or m <= best[0]:
            idx = np.flatnonzero(pops == m)
            j = idx[_least_row(rows[idx])]
            bits = _from_words(rows[j])
            mask = (hi_mask << k1) | int(j)
            if best is None or m < best[0] or bits < best[1]:
                best = (m, bits, mask)
        if m < target:
            idx = np.flatnonzero(pops < target)
            j = idx[_least_row(rows[idx])]
            bits = _from_words(rows[j])
            if below is None or bits < below[0]:
                below = (bits, (hi_mask << k1) | int(j))

    visit(cur, 0)
    for _, i in gf2.gray_sequence(len(high)):
        cur = cur ^ high[i]
        hi_mask ^= 1 << i
        visit(cur, hi_mask)
    assert best is not None
    return _Scan(
        best[0], best[1], best[2],
        None if below is None else below[0],
        None if below is None else below[1],
    )


def _combine_tags(mask: int, tags: tuple[Cochain, ...], n: int, arity: int) -> Cochain:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out ^= tags[i].bits
        mask >>= 1
        i += 1
    return Cochain(n, arity, out)


def _check_arity(e: Cochain) -> None:
    if e.arity < 1:
        raise CochainError("minimality is defined for arity >= 1")


def is_minimal_exact(e: Cochain, max_rank: int = MAX_COSET_RANK) -> MinimalityVerdict:
    """Decide minimality by enumerating the full switching coset of ``e``."""
    _check_arity(e)
    k = switching_rank(e.n, e.arity)
    if k > max_rank:
        raise CosetTooLarge(f"coset rank {k} exceeds {max_rank}")
    sb = switching_basis(e.n, e.arity)
    if not e.bits:
        return MinimalityVerdict(True, "exact", sb.rank)
    scan = _coset_scan(e.bits, e.size, [b.bits for b in sb.basis])
    if scan.below_bits is None:
        return MinimalityVerdict(True, "exact", sb.rank)
    d_arity = e.arity - 1
    witness = _combine_tags(scan.below_mask, sb.preimages, e.n, d_arity)
    return MinimalityVerdict(False, "exact", sb.rank, witness, Cochain(e.n, e.arity, scan.below_bits))


def minimize_in_class(e: Cochain, max_rank: int = MAX_COSET_RANK) -> Cochain:
    """Smallest member of the switching class of ``e`` (colex-least on ties)."""
    _check_arity(e)
    k = switching_rank(e.n, e.arity)
    if k > max_rank:
        raise CosetTooLarge(f"coset rank {k} exceeds {max_rank}")
    sb = switching_basis(e.n, e.arity)
    scan = _coset_scan(e.bits, e.size, [b.bits for b in sb.basis])
    return Cochain(e.n, e.arity, scan.min_bits)


def necessary_conditions(e: Cochain, max_violations: int = 100,
                         degree_cap: Fraction | None = None) -> NecessaryReport:
    """Cheap conditions every minimal cochain satisfies.

    (a) ``||E|| <= 1/2``; (b) for arity r >= 2, every (r-1)-subset lies in at
    most ``(n - r + 1)/2`` members.  At arity 1, (b) is vacuous and (a) is the
    whole story (``|S| <= n/2``).

    ``degree_cap`` replaces the cap in (b); the looser ``n/2`` form of the
    graph degree condition is ``degree_cap=n/2``.
    """
    _check_arity(e)
    norm = Fraction(len(e), e.size)
    norm_ok = norm <= Fraction(1, 2)
    cap = Fraction(e.n - e.arity + 1, 2) if degree_cap is None else Fraction(degree_cap)
    violations: list[tuple[tuple[int, ...], int]] = []
    if e.arity >= 2 and e.bits:
        faces = face_table(e.n, e.arity - 1)[e.to_array()]
        counts = np.bincount(faces.ravel(), minlength=comb(e.n, e.arity - 1))
        bad = np.flatnonzero(counts > cap)
        for k in bad[:max_violations]:
            violations.append((subset_unrank(int(k), e.arity - 1, e.n), int(counts[k])))
        n_bad = bad.size
    else:
        n_bad = 0
    return NecessaryReport(norm_ok and n_bad == 0, norm, norm_ok, cap, violations)


def is_minimal(e: Cochain, max_rank: int = MAX_COSET_RANK) -> MinimalityVerdict:
    """Exact verdict when the coset is small enough, otherwise necessary conditions."""
    try:
        return is_minimal_exact(e, max_rank)
    except CosetTooLarge:
        rep = necessary_conditions(e)
        return MinimalityVerdict(rep.passes, "necessary-only", switching_rank(e.n, e.arity))


def seidel_switch(e: Cochain, s: Cochain | Iterable[int]) -> Cochain:
    """Switch a graph at the vertex set ``s``: returns ``E + delta S``."""
    if e.arity != 2:
        raise CochainError("Seidel switching acts on arity-2 cochains")
    if not isinstance(s, Cochain):
        s = Cochain.from_sets(e.n, 1, [(v,) for v in s])
    return e + coboundary(s)
