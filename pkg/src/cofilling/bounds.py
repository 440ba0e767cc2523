"""Bound functions for the cofilling profiles and the nested selection bound.

Each bound maps a normalized size alpha to a lower (or upper) bound on the
normalized size of the coboundary.  Rational formulas evaluate exactly on
:class:`fractions.Fraction` input; formulas with square roots return a float
unless the radicand is a perfect rational square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

Number = Union[Fraction, float, int]

BISECT_TOL = 1e-12
BISECT_MAXITER = 200

# Quadratic-loss coefficient for the d = 3 bound 4/3 a - K a^2.  Derived from
# the high/low degree split with beta = C a, C = (3/2)^3 (so the low-degree
# loss (a/beta)^(1/3) stays at 2/3): K = 6 C^2 + 4 C.  Not a proven constant.
THM6_DEFAULT_C = 6 * Fraction(27, 8) ** 2 + 4 * Fraction(27, 8)


class DomainError(ValueError):
    """A bound was evaluated outside the interval where it is valid."""


def bisect(g: Callable[[float], float], lo: float, hi: float,
           tol: float = BISECT_TOL, maxiter: int = BISECT_MAXITER) -> float:
    """Root of ``g`` on ``[lo, hi]`` by bisection; needs a sign change."""
    glo, ghi = g(lo), g(hi)
    if glo == 0:
        return lo
    if ghi == 0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0 or hi - lo < tol:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def exact_sqrt(x: Number) -> Number:
    """Square root, kept rational when ``x`` is a rational perfect square."""
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        if x < 0:
            raise DomainError("negative radicand")
        p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if p * p == x.numerator and q * q == x.denominator:
            return Fraction(p, q)
        return math.sqrt(x)
    return math.sqrt(x)


# ---------------------------------------------------------------------------
# individual bounds


def phi1(alpha: Number) -> Number:
    return 2 * alpha * (1 - alpha)


def basic(alpha: Number) -> Number:
    return alpha


def thm5(alpha: Number) -> Number:
    if isinstance(alpha, (Fraction, int)):
        root = exact_sqrt(1 - 4 * Fraction(alpha))
        return Fraction(3, 4) * (1 - root) * (1 - 4 * alpha)
    return 0.75 * (1 - math.sqrt(1 - 4 * alpha)) * (1 - 4 * alpha)


def thm6(alpha: Number, c: Number = THM6_DEFAULT_C) -> Number:
    return Fraction(4, 3) * alpha - c * alpha * alpha


def kms(alpha: Number) -> Number:
    return Fraction(9, 7) * alpha * (1 - alpha)


def prop7_alpha(d: int, sigma: float) -> float:
    """Density d! s ((1-s)/d)^(d-1) of the multipartite example with |V_1| = s n."""
    return math.factorial(d) * sigma * ((1 - sigma) / d) ** (d - 1)


def prop7_alpha_max(d: int) -> Fraction:
    """Largest alpha reachable on the increasing branch, capped at 1/(d+1)."""
    if d == 1:
        return Fraction(1, 2)
    s = Fraction(1, d)
    peak = math.factorial(d) * s * ((1 - s) / d) ** (d - 1)
    return min(Fraction(1, d + 1), peak)


def upper_bound_prop7(d: int, alpha: Number) -> tuple[float, float, float]:
    """Solve for the smallest sigma with prop7_alpha(d, sigma) = alpha.

    Returns ``(sigma, bound, relaxed)`` where ``bound = (d+1)/d alpha (1-sigma)``
    and ``relaxed = (d+1)/d alpha``.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    amax = prop7_alpha_max(d)
    if not 0 < alpha <= amax:
        raise DomainError(f"alpha={float(alpha)} outside (0, {float(amax)}] for d={d}")
    a = float(alpha)
    if d == 1:
        sigma = a
    else:
        sigma = bisect(lambda s: prop7_alpha(d, s) - a, 0.0, 1.0 / d)
    ratio = (d + 1) / d
    return sigma, ratio * a * (1 - sigma), ratio * a


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundFunction:
    """A named alpha -> beta bound with its interval of validity."""

    name: str
    params: dict = field(default_factory=dict, hash=False, compare=False)

    NAMES = ("phi1_exact", "basic", "thm5", "thm6", "kms", "upper_prop7")

    def __post_init__(self):
        if self.name not in self.NAMES:
            raise ValueError(f"unknown bound {self.name!r}; choose from {self.NAMES}")
        if self.name == "upper_prop7" and "d" not in self.params:
            raise ValueError("upper_prop7 needs a 'd' parameter")

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        half = Fraction(1, 2)
        if self.name in ("phi1_exact", "basic", "kms"):
            return Fraction(0), half
        if self.name == "thm5":
            return Fraction(0), Fraction(1, 4)
        if self.name == "thm6":
            c = Fraction(self.params.get("C", THM6_DEFAULT_C))
            return Fraction(0), min(half, Fraction(4, 3) / c)
        return Fraction(0), prop7_alpha_max(int(self.params["d"]))

    def __call__(self, alpha: Number) -> Number:
        lo, hi = self.domain
        if not lo <= alpha <= hi:
            raise DomainError(f"{self.label()} is not defined at alpha={float(alpha):.6g}; "
                              f"domain is [{lo}, {hi}]")
        if self.name == "phi1_exact":
            return phi1(alpha)
        if self.name == "basic":
            return basic(alpha)
        if self.name == "thm5":
            return thm5(alpha)
        if self.name == "thm6":
            return thm6(alpha, self.params.get("C", THM6_DEFAULT_C))
        if self.name == "kms":
            return kms(alpha)
        if alpha == 0:
            return Fraction(0)
        return upper_bound_prop7(int(self.params["d"]), alpha)[1]

    def label(self) -> str:
        if self.name == "upper_prop7":
            return f"upper_prop7(d={self.params['d']})"
        return self.name


def parse_bound(text: str, level: int | None = None) -> BoundFunction:
    """Parse ``name`` or ``name:key=value[+key=value]`` (e.g. ``thm6:C=20``).

    ``upper_prop7`` without an explicit ``d`` takes ``d = level``.
    """
    name, _, rest = text.partition(":")
    params: dict = {}
    for item in filter(None, rest.split("+")):
        k, _, v = item.partition("=")
        params[k] = Fraction(v) if k == "C" else int(v)
    if name == "phi1":
        name = "phi1_exact"
    if name == "upper_prop7" and "d" not in params:
        if level is None:
            raise ValueError("upper_prop7 needs d")
        params["d"] = level
    return BoundFunction(name, params)


def eval_bound(b: BoundFunction | str, alpha: Number) -> Number:
    if isinstance(b, str):
        b = parse_bound(b)
    return b(alpha)


@dataclass
class NestedResult:
    value: Number
    trace: list[dict]


def nested_gromov(d: int, phis: Sequence[BoundFunction | str]) -> NestedResult:
    """Evaluate phi_d(1/2 phi_{d-1}(1/3 ... 1/d phi_1(1/(d+1)))).

    ``phis[k-1]`` is used at level k.  Level k's output is divided by
    ``d + 1 - k`` before it is fed to level k + 1.
    """
    if len(phis) != d:
        raise ValueError(f"need one bound per level 1..{d}, got {len(phis)}")
    arg: Number = Fraction(1, d + 1)
    trace = []
    for k, b in enumerate(phis, start=1):
        if isinstance(b, str):
            b = parse_bound(b, level=k)
        out = b(arg)
        step = {"level": k, "bound": b.label(), "alpha": arg, "value": out}
        if k < d:
            arg = out / (d + 1 - k)
            step["next_alpha"] = arg
        trace.append(step)
    return NestedResult(out, trace)


def gromov_closed_form(d: int) -> Fraction:
    """Value of the nested bound with phi_1 exact and the basic bound above it."""
    return Fraction(2 * d, math.factorial(d + 1) * (d + 1))


def kms_thm5_crossover() -> float:
    """alpha in (0, 1/4) where the KMS bound overtakes the d = 2 bound above."""
    return bisect(lambda a: thm5(a) - kms(a), 0.01, 0.2)


def bound_curve(b: BoundFunction, points: int = 101) -> list[tuple[float, float]]:
    lo, hi = b.domain
    out = []
    for i in range(points):
        a = lo + (hi - lo) * Fraction(i, points - 1)
        out.append((float(a), float(b(a))))
    return out
