"""Whole-space tables: evaluate linear maps and minimality on all 2^C(n,r) cochains.

Cochain ``x`` (an int < 2^N, N = C(n, r)) is used directly as an array index,
so every table here is indexed by the cochain's bit pattern.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from . import gf2
from .cochain import Cochain, CochainError, coboundary, lk
from .minimality import switching_basis

MAX_TABLE_BITS = 24


def _space_bits(n: int, r: int) -> int:
    nbits = comb(n, r)
    if nbits > MAX_TABLE_BITS:
        raise CochainError(f"2^C({n},{r}) = 2^{nbits} cochains is beyond the table limit 2^{MAX_TABLE_BITS}")
    return nbits


def _image_table(images: list[int]) -> np.ndarray:
    if any(img >> 64 for img in images):
        raise CochainError("image vectors wider than 64 bits")
    return gf2.linear_table(images)


@lru_cache(maxsize=8)
def popcount_table(n: int, r: int) -> np.ndarray:
    nbits = _space_bits(n, r)
    t = gf2.popcount(np.arange(1 << nbits, dtype=np.uint64)).astype(np.int16)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=8)
def coboundary_table(n: int, r: int) -> np.ndarray:
    """``delta x`` (as bits) for every arity-r cochain x."""
    nbits = _space_bits(n, r)
    imgs = [coboundary(Cochain(n, r, 1 << i)).bits for i in range(nbits)]
    t = _image_table(imgs)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=8)
def coboundary_size_table(n: int, r: int) -> np.ndarray:
    t = gf2.popcount(coboundary_table(n, r)).astype(np.int16)
    t.setflags(write=False)
    return t


def link_table(n: int, r: int, v: int) -> np.ndarray:
    """``lk(v, x)`` (as bits) for every arity-r cochain x."""
    nbits = _space_bits(n, r)
    imgs = [lk(v, Cochain(n, r, 1 << i)).bits for i in range(nbits)]
    return _image_table(imgs)


@lru_cache(maxsize=8)
def minimal_mask(n: int, r: int) -> np.ndarray:
    """Boolean table: is cochain x minimal in its switching class?

    Each x is mapped to its canonical coset representative (a linear map),
    the minimum size per coset is accumulated, and x is minimal iff it attains
    that minimum.
    """
    nbits = _space_bits(n, r)
    basis, _ = gf2.reduce_basis([b.bits for b in switching_basis(n, r).basis])
    reps = [gf2.reduce_vector(1 << i, basis) for i in range(nbits)]
    ids = gf2.linear_table(reps)
    pop = popcount_table(n, r)
    best = np.full(1 << nbits, np.iinfo(np.int16).max, dtype=np.int16)
    np.minimum.at(best, ids, pop)
    mask = pop == best[ids]
    mask.setflags(write=False)
    return mask
