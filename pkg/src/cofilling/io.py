"""JSON and CSV encodings of cochains and reports.

Cochain JSON comes in two forms that readers accept interchangeably::

    {"n": 5, "arity": 2, "sets": [[2, 4], [2, 5]]}
    {"n": 5, "arity": 2, "bits_hex": "0002"}

``bits_hex`` is the hex dump of the little-endian byte string of the bit
vector: bit ``k`` (byte ``k // 8``, bit ``k % 8``) is the subset of colex rank
``k``.  Writers use ``sets`` unless the cochain has more than 10^4 members.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cochain import Cochain, CochainError

SETS_LIMIT = 10**4


def cochain_to_json(e: Cochain, compact: bool | None = None) -> dict:
    if compact is None:
        compact = len(e) > SETS_LIMIT
    out: dict[str, Any] = {"n": e.n, "arity": e.arity}
    if compact:
        nbytes = (e.size + 7) // 8
        out["bits_hex"] = e.bits.to_bytes(nbytes, "little").hex()
    else:
        out["sets"] = [list(s) for s in e.sets()]
    return out


def cochain_from_json(obj: dict) -> Cochain:
    try:
        n = int(obj["n"])
        arity = int(obj["arity"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CochainError(f"cochain JSON needs integer 'n' and 'arity': {exc}") from None
    if "bits_hex" in obj:
        bits = int.from_bytes(bytes.fromhex(obj["bits_hex"]), "little")
        return Cochain(n, arity, bits)
    if "sets" in obj:
        sets = [tuple(int(v) for v in s) for s in obj["sets"]]
        if len(set(map(frozenset, sets))) != len(sets):
            raise CochainError("duplicate member in 'sets'")
        return Cochain.from_sets(n, arity, sets)
    raise CochainError("cochain JSON needs 'sets' or 'bits_hex'")


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, Cochain):
        return cochain_to_json(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if hasattr(o, "item"):  # numpy scalars
        return o.item()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj: Any, **kw) -> str:
    """``json.dumps`` that understands cochains, fractions and report objects."""
    kw.setdefault("sort_keys", False)
    return json.dumps(obj, default=_default, **kw)
