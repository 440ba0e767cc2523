"""GF(2) linear algebra on int bit-vectors, plus bulk evaluation helpers."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def reduce_basis(vectors: Sequence[int], tags: Sequence[int] | None = None):
    """Row-reduce ``vectors`` into an echelon basis keyed by leading bit.

    Returns ``(basis, basis_tags)`` where ``basis`` maps pivot bit -> vector
    and ``basis_tags`` tracks the same XOR combinations applied to ``tags``
    (used to remember preimages).  Fully reduced: no basis vector has a set
    bit at another vector's pivot.
    """
    basis: dict[int, int] = {}
    btags: dict[int, int] = {}
    if tags is None:
        tags = [0] * len(vectors)
    for vec, tag in zip(vectors, tags):
        for p, b in basis.items():
            if vec >> p & 1:
                vec ^= b
                tag ^= btags[p]
        if not vec:
            continue
        p = vec.bit_length() - 1
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= vec
                btags[q] ^= tag
        basis[p] = vec
        btags[p] = tag
    return basis, btags


def rank(vectors: Sequence[int]) -> int:
    return len(reduce_basis(vectors)[0])


def in_span(vec: int, basis: dict[int, int]) -> bool:
    return reduce_vector(vec, basis) == 0


def reduce_vector(vec: int, basis: dict[int, int]) -> int:
    """Canonical coset representative of ``vec`` modulo a reduced basis."""
    for p, b in basis.items():
        if vec >> p & 1:
            vec ^= b
    return vec


def gray_sequence(k: int):
    """Yield ``(step, flipped_index)`` for the reflected Gray code on k bits."""
    for step in range(1, 1 << k):
        yield step, (step & -step).bit_length() - 1


def span_array(vectors: Sequence[int]) -> np.ndarray:
    """All 2^k combinations of ``vectors`` (each < 2^64) as a uint64 array."""
    out = np.zeros(1, dtype=np.uint64)
    for v in vectors:
        out = np.concatenate([out, out ^ np.uint64(v)])
    return out


def popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr)


def linear_table(images: Sequence[int], dtype=np.uint64) -> np.ndarray:
    """Evaluate a GF(2)-linear map on every input in ``[0, 2^N)``.

    ``images[i]`` is the image of the unit vector ``1 << i``.  The table is
    built by doubling, so entry ``x`` holds the XOR of ``images[i]`` over the
    set bits ``i`` of ``x``.
    """
    out = np.zeros(1, dtype=dtype)
    for img in images:
        out = np.concatenate([out, out ^ dtype(img)])
    return out
