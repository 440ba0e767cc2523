"""Exact finite-n cofilling profiles by exhaustive search.

For fixed n and d, the profile record at size s is the minimum of |delta E|
over minimal E with |E| = s.  Asymptotic bounds live in :mod:`.bounds`; the
two are reported side by side and never interpolated.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import gf2
from .cochain import Cochain, CochainError, coboundary
from .exhaustive import (
    MAX_TABLE_BITS,
    coboundary_size_table,
    minimal_mask,
    popcount_table,
)
from .io import cochain_to_json
from .minimality import switching_basis

DEFAULT_BUDGET = 1 << 22
_CHUNK_CELLS = 1 << 22


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, records: list["ProfileRecord"]):
        super().__init__(message)
        self.records = records


@dataclass
class ProfileRecord:
    n: int
    d: int
    E_size: int
    min_delta_size: int
    witness: Cochain
    complete: bool = True

    @property
    def norm_E(self) -> Fraction:
        return Fraction(self.E_size, comb(self.n, self.d))

    @property
    def norm_delta(self) -> Fraction:
        return Fraction(self.min_delta_size, comb(self.n, self.d + 1))

    def to_row(self) -> list:
        return [
            self.n, self.d, self.E_size, self.min_delta_size,
            f"{float(self.norm_E):.12g}", f"{float(self.norm_delta):.12g}",
            json.dumps(cochain_to_json(self.witness)["sets"], separators=(",", ":")),
            int(self.complete),
        ]


CSV_HEADER = ["n", "d", "E_size", "min_delta_size", "norm_E", "norm_delta", "witness_json", "complete_flag"]


def _full_profile(n: int, d: int) -> list[ProfileRecord]:
    mask = minimal_mask(n, d)
    pop = popcount_table(n, d)
    dsz = coboundary_size_table(n, d)
    idx = np.flatnonzero(mask)
    p, q = pop[idx], dsz[idx]
    # sort by (size, delta size, colex); idx is already ascending
    order = np.lexsort((idx, q, p))
    idx, p, q = idx[order], p[order], q[order]
    first = np.flatnonzero(np.r_[True, p[1:] != p[:-1]])
    return [
        ProfileRecord(n, d, int(p[i]), int(q[i]), Cochain(n, d, int(idx[i])))
        for i in first
    ]


def _minimal_chunk(xs: np.ndarray, span: np.ndarray) -> np.ndarray:
    step = max(1, _CHUNK_CELLS // len(span))
    out = np.empty(len(xs), dtype=bool)
    for a in range(0, len(xs), step):
        blk = xs[a:a + step]
        pops = gf2.popcount(blk[:, None] ^ span[None, :]).min(axis=1)
        out[a:a + step] = gf2.popcount(blk) <= pops
    return out


def _sized_profile(n: int, d: int, budget: int) -> list[ProfileRecord]:
    """Size-by-size search; every size whose candidates fit the budget is complete."""
    nbits = comb(n, d)
    if nbits > 64:
        raise CochainError("size-by-size search supports C(n,d) <= 64")
    sb = switching_basis(n, d)
    if sb.rank > 16:
        raise CochainError(f"coset rank {sb.rank} too large for the size-by-size search")
    span = gf2.span_array([b.bits for b in sb.basis])
    records: list[ProfileRecord] = []
    spent = 0
    for s in range(nbits // 2 + 1):
        total = comb(nbits, s)
        complete = spent + total <= budget
        best: tuple[int, int] | None = None
        seen = 0
        batch: list[int] = []

        def flush():
            nonlocal best, batch
            if not batch:
                return
            xs = np.array(batch, dtype=np.uint64)
            batch = []
            ok = _minimal_chunk(xs, span)
            for x in xs[ok]:
                e = Cochain(n, d, int(x))
                m = len(coboundary(e))
                if best is None or m < best[0]:
                    best = (m, int(x))

        for combo in combinations(range(nbits), s):
            if spent + seen >= budget:
                break
            x = 0
            for i in combo:
                x |= 1 << i
            seen += 1
            batch.append(x)
            if len(batch) >= 4096:
                flush()
        flush()
        spent += seen
        if best is not None:
            records.append(ProfileRecord(n, d, s, best[0], Cochain(n, d, best[1]), complete))
        if not complete:
            break
    return records


def profile_exact(n: int, d: int, budget: int = DEFAULT_BUDGET) -> list[ProfileRecord]:
    """Minimum |delta E| over minimal E, one record per attainable size |E|.

    With ``2^C(n,d) <= budget`` the whole space is tabulated.  Otherwise
    candidates are enumerated size by size (then colex); records carry
    ``complete=False`` once the budget cuts a size short, and
    :class:`BudgetExceeded` is raised carrying the partial records.
    """
    if not 1 <= d < n:
        raise CochainError(f"need 1 <= d < n, got d={d}, n={n}")
    nbits = comb(n, d)
    if nbits <= MAX_TABLE_BITS and (1 << nbits) <= budget:
        return _full_profile(n, d)
    records = _sized_profile(n, d, budget)
    if not records or not records[-1].complete:
        raise BudgetExceeded(f"budget {budget} exhausted for n={n}, d={d}", records)
    return records


def lower_envelope(records: list[ProfileRecord]) -> list[ProfileRecord]:
    """Replace each record's value by the best over all sizes >= its own.

    This matches the ``||E|| >= alpha`` form of the profile definition and
    makes ``min_delta_size`` nondecreasing in ``E_size``.
    """
    out = []
    best: ProfileRecord | None = None
    for rec in sorted(records, key=lambda r: r.E_size, reverse=True):
        if best is None or rec.min_delta_size <= best.min_delta_size:
            best = rec
        out.append(ProfileRecord(rec.n, rec.d, rec.E_size, best.min_delta_size, best.witness,
                                 rec.complete and best.complete))
    return out[::-1]


def records_to_csv(records: list[ProfileRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(rec.to_row())
    return buf.getvalue()
