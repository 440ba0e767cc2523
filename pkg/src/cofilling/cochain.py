"""Z2 cochains on the full simplex over the ground set [n].

A cochain of arity ``r`` is a set of r-subsets of ``{1, ..., n}``.  It is stored
as a Python int whose bit ``k`` is set iff the subset of colex rank ``k`` is a
member.  Comparing two such ints numerically is exactly colex order on the
member families, which is what the deterministic tie-breaks elsewhere rely on.

Arity conventions: a "(d-1)-dimensional cochain" (a system of d-tuples) has
arity d here.

============  ==========  ==============
usual name    dimension   arity
============  ==========  ==============
S, V_i        0           1
E (graphs)    1           2
F (triples)   2           3
G (4-tuples)  3           4
============  ==========  ==============
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

MAX_BITS = 2**33


class CochainError(ValueError):
    """Raised for malformed cochains or operations outside their domain."""


def _check_size(n: int, r: int) -> int:
    size = comb(n, r)
    if size > MAX_BITS:
        raise CochainError(f"C({n},{r}) = {size} exceeds the supported 2^33 bits")
    return size


# ---------------------------------------------------------------------------
# colex ranking


def subset_rank(subset: Iterable[int], n: int) -> int:
    """Colex rank of a subset of ``{1..n}`` among subsets of the same size."""
    s = sorted(subset)
    if len(set(s)) != len(s):
        raise CochainError(f"repeated element in {s}")
    if s and (s[0] < 1 or s[-1] > n):
        raise CochainError(f"{s} is not a subset of [1..{n}]")
    return sum(comb(v - 1, i) for i, v in enumerate(s, start=1))


def subset_unrank(k: int, r: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`subset_rank`; returns the sorted r-subset."""
    if not 0 <= k < comb(n, r):
        raise CochainError(f"rank {k} out of range for C({n},{r})")
    out = []
    v = n
    for i in range(r, 0, -1):
        # largest v with C(v-1, i) <= k
        while comb(v - 1, i) > k:
            v -= 1
        out.append(v)
        k -= comb(v - 1, i)
        v -= 1
    return tuple(reversed(out))


@lru_cache(maxsize=64)
def subset_table(n: int, r: int) -> np.ndarray:
    """All r-subsets of [n] in colex order, shape (C(n,r), r), labels 1..n."""
    _check_size(n, r)
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    # colex order == lexicographic order of reversed tuples
    subs = sorted(combinations(range(1, n + 1), r), key=lambda t: t[::-1])
    table = np.array(subs, dtype=np.int64).reshape(len(subs), r)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def _binom_table(n: int, r: int) -> np.ndarray:
    t = np.array([[comb(v, i) for i in range(r + 2)] for v in range(n + 1)], dtype=np.int64)
    t.setflags(write=False)
    return t


def rank_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Vectorized colex rank of sorted rows (labels 1..n)."""
    r = rows.shape[1]
    if r == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    b = _binom_table(n, r)
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(r):
        out += b[rows[:, i] - 1, i + 1]
    return out


@lru_cache(maxsize=64)
def face_table(n: int, r: int) -> np.ndarray:
    """For each (r+1)-subset f, the ranks of its r facets.

    Row ``k`` lists the ranks of ``f_k`` with its ``i``-th smallest element
    dropped, for ``i = 0..r``.  This is the incidence of the coboundary map
    from arity r to arity r+1.
    """
    subs = subset_table(n, r + 1)
    cols = []
    for i in range(r + 1):
        facet = np.delete(subs, i, axis=1)
        cols.append(rank_rows(facet, n))
    table = np.stack(cols, axis=1) if cols else np.zeros((subs.shape[0], 0), dtype=np.int64)
    table.setflags(write=False)
    return table


# ---------------------------------------------------------------------------
# bit packing


def bits_to_array(bits: int, size: int) -> np.ndarray:
    """Little-endian unpack of an int into a bool array of length ``size``."""
    nbytes = (size + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def array_to_bits(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr.astype(np.uint8), bitorder="little").tobytes(), "little")


# ---------------------------------------------------------------------------


class Cochain:
    """An immutable Z2 cochain of a given arity over [n]."""

    __slots__ = ("n", "arity", "bits")

    def __init__(self, n: int, arity: int, bits: int = 0):
        if n < 1:
            raise CochainError("ground set needs n >= 1")
        if not 0 <= arity <= n:
            raise CochainError(f"arity {arity} outside 0..{n}")
        size = _check_size(n, arity)
        if bits < 0 or bits >> size:
            raise CochainError("bit-vector longer than C(n, arity)")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    def __reduce__(self):
        return (Cochain, (self.n, self.arity, self.bits))

    # construction -------------------------------------------------------
    @classmethod
    def from_sets(cls, n: int, arity: int, sets: Iterable[Iterable[int]]) -> "Cochain":
        bits = 0
        for s in sets:
            s = tuple(s)
            if len(s) != arity:
                raise CochainError(f"{s} does not have arity {arity}")
            bits ^= 1 << subset_rank(s, n)
        return cls(n, arity, bits)

    @classmethod
    def from_ranks(cls, n: int, arity: int, ranks: Iterable[int]) -> "Cochain":
        bits = 0
        for k in ranks:
            bits |= 1 << int(k)
        return cls(n, arity, bits)

    @classmethod
    def from_array(cls, n: int, arity: int, arr: np.ndarray) -> "Cochain":
        return cls(n, arity, array_to_bits(arr))

    @classmethod
    def empty(cls, n: int, arity: int) -> "Cochain":
        return cls(n, arity, 0)

    @classmethod
    def full(cls, n: int, arity: int) -> "Cochain":
        return cls(n, arity, (1 << comb(n, arity)) - 1)

    # views --------------------------------------------------------------
    @property
    def size(self) -> int:
        """Number of r-subsets in the ambient space, C(n, arity)."""
        return comb(self.n, self.arity)

    def ranks(self) -> list[int]:
        b = self.bits
        out = []
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def sets(self) -> list[tuple[int, ...]]:
        """Members as sorted tuples, in colex order."""
        return [subset_unrank(k, self.arity, self.n) for k in self.ranks()]

    def to_array(self) -> np.ndarray:
        return bits_to_array(self.bits, self.size)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, subset) -> bool:
        s = tuple(subset)
        if len(s) != self.arity:
            return False
        return bool(self.bits >> subset_rank(s, self.n) & 1)

    def __iter__(self):
        return iter(self.sets())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.n, self.arity, self.bits) == (other.n, other.arity, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.arity, self.bits))

    def __repr__(self) -> str:
        if len(self) <= 12:
            body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.sets())
            return f"Cochain(n={self.n}, arity={self.arity}, [{body}])"
        return f"Cochain(n={self.n}, arity={self.arity}, |E|={len(self)})"

    def _compatible(self, other: "Cochain") -> None:
        if not isinstance(other, Cochain):
            raise TypeError(f"expected Cochain, got {type(other).__name__}")
        if self.n != other.n or self.arity != other.arity:
            raise CochainError(
                f"mismatched cochains: (n={self.n}, r={self.arity}) vs (n={other.n}, r={other.arity})"
            )

    # algebra ------------------------------------------------------------
    def __add__(self, other: "Cochain") -> "Cochain":
        return add(self, other)

    __xor__ = __add__

    def __and__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.n, self.arity, self.bits & other.bits)

    def __or__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.n, self.arity, self.bits | other.bits)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.n, self.arity, self.bits & ~other.bits)

    def issubset(self, other: "Cochain") -> bool:
        self._compatible(other)
        return self.bits & ~other.bits == 0

    def complement(self) -> "Cochain":
        return Cochain(self.n, self.arity, self.bits ^ ((1 << self.size) - 1))

    def norm(self) -> Fraction:
        return normalized_size(self)


# ---------------------------------------------------------------------------
# operations


def add(e: Cochain, f: Cochain) -> Cochain:
    """Symmetric difference of two cochains of the same arity and ground set."""
    e._compatible(f)
    return Cochain(e.n, e.arity, e.bits ^ f.bits)


def normalized_size(e: Cochain) -> Fraction:
    return Fraction(len(e), e.size)


def coboundary(e: Cochain) -> Cochain:
    """The (r+1)-subsets containing an odd number of members of ``e``."""
    if e.arity >= e.n:
        raise CochainError(f"no coboundary at arity {e.arity} = n")
    if not e.bits:
        return Cochain(e.n, e.arity + 1, 0)
    faces = face_table(e.n, e.arity)
    arr = e.to_array()
    parity = np.bitwise_xor.reduce(arr[faces], axis=1)
    return Cochain.from_array(e.n, e.arity + 1, parity)


delta = coboundary


def star(v: int, e: Cochain) -> Cochain:
    """E_v: members of ``e`` that contain ``v``."""
    if not 1 <= v <= e.n:
        raise CochainError(f"vertex {v} outside [1..{e.n}]")
    if e.arity == 0:
        return Cochain(e.n, 0, 0)
    mask = (subset_table(e.n, e.arity) == v).any(axis=1)
    return Cochain.from_array(e.n, e.arity, e.to_array() & mask)


def link(v: int, e: Cochain) -> tuple[Cochain, Cochain]:
    """Return ``(E_v, lk(v, E))``; the link drops ``v`` from every member of E_v."""
    if e.arity < 1:
        raise CochainError("link needs arity >= 1")
    st = star(v, e)
    subs = subset_table(e.n, e.arity)
    faces = face_table(e.n, e.arity - 1)
    sel = np.flatnonzero(st.to_array())
    if sel.size == 0:
        return st, Cochain(e.n, e.arity - 1, 0)
    pos = np.argmax(subs[sel] == v, axis=1)
    lk_ranks = faces[sel, pos]
    out = np.zeros(comb(e.n, e.arity - 1), dtype=bool)
    out[lk_ranks] = True
    return st, Cochain.from_array(e.n, e.arity - 1, out)


def lk(v: int, e: Cochain) -> Cochain:
    return link(v, e)[1]


def cone(v: int, c: Cochain) -> Cochain:
    """``c * v``: add ``v`` to every member of ``c`` that avoids it."""
    sets = [tuple(sorted(s + (v,))) for s in c.sets() if v not in s]
    return Cochain.from_sets(c.n, c.arity + 1, sets)


def face_degree(x: Sequence[int], e: Cochain) -> int:
    """Number of members of ``e`` containing the subset ``x``."""
    x = tuple(x)
    if len(x) >= e.arity:
        raise CochainError(f"face of size {len(x)} is not smaller than arity {e.arity}")
    if any(not 1 <= v <= e.n for v in x):
        raise CochainError(f"{x} is not a subset of [1..{e.n}]")
    if not e.bits:
        return 0
    subs = subset_table(e.n, e.arity)
    mask = np.ones(subs.shape[0], dtype=bool)
    for v in x:
        mask &= (subs == v).any(axis=1)
    return int(np.count_nonzero(e.to_array() & mask))


def vertex_degrees(e: Cochain) -> np.ndarray:
    """deg_E(v) for v = 1..n, returned as an array indexed by v - 1."""
    subs = subset_table(e.n, e.arity)
    sel = subs[e.to_array()]
    return np.bincount(sel.ravel() - 1, minlength=e.n).astype(np.int64)


def pair_degrees(e: Cochain) -> np.ndarray:
    """deg_E(p) for every pair p, indexed by the colex rank of p."""
    if e.arity < 2:
        raise CochainError("pair degrees need arity >= 2")
    subs = subset_table(e.n, e.arity)[e.to_array()]
    counts = np.zeros(comb(e.n, 2), dtype=np.int64)
    for i, j in combinations(range(e.arity), 2):
        np.add.at(counts, rank_rows(subs[:, [i, j]], e.n), 1)
    return counts


def is_cocycle(f: Cochain) -> bool:
    if f.arity == f.n:
        return True
    return not coboundary(f).bits


def is_coboundary(f: Cochain) -> bool:
    """Whether ``f = delta D`` for some D (non-reduced: V itself is not a coboundary)."""
    if f.arity < 1:
        raise CochainError("coboundaries have arity >= 1")
    if f.arity == 1:
        return not f.bits
    return is_cocycle(f)


def fill_by_min_link(f: Cochain) -> Cochain:
    """Fill a coboundary with the link of a minimum-degree vertex.

    Returns ``E`` with ``delta E = f`` and ``||E|| <= ||f||``; ties between
    vertices of equal degree go to the smallest label.
    """
    if f.arity < 2:
        raise CochainError("filling needs arity >= 2")
    if not is_coboundary(f):
        raise CochainError("input is not a coboundary")
    if not f.bits:
        return Cochain(f.n, f.arity - 1, 0)
    degs = vertex_degrees(f)
    v = int(np.argmin(degs)) + 1
    return lk(v, f)
