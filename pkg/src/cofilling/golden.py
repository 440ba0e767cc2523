"""Reference constants and the checks that reproduce them."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .bounds import basic, gromov_closed_form, nested_gromov, phi1, upper_bound_prop7
from .pagoda import solve_c3_lower

DEFAULT_TOLERANCE = 1e-6
PROP9_TOLERANCE = 1e-5


@dataclass
class GoldenCheck:
    name: str
    value: object
    expected: object
    relation: str  # "==", "~" (within tol) or ">" (strict, and within tol)
    tol: float
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.name}: {_fmt(self.value)} {self.relation} {_fmt(self.expected)}"

    def to_json(self) -> dict:
        return {
            "name": self.name, "value": self.value, "expected": self.expected,
            "relation": self.relation, "tol": self.tol, "passed": self.passed,
        }


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x} ({float(x):.10g})"
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def _close(name, value, expected, tol) -> GoldenCheck:
    return GoldenCheck(name, value, expected, "~", tol, abs(float(value) - float(expected)) <= tol)


def _exact(name, value, expected) -> GoldenCheck:
    return GoldenCheck(name, value, expected, "==", 0.0,
                       isinstance(value, (Fraction, int)) and value == expected)


def _above(name, value, floor, tol) -> GoldenCheck:
    ok = value > floor and value - floor <= tol
    return GoldenCheck(name, value, floor, ">", tol, ok)


def golden_checks(tolerance: float = DEFAULT_TOLERANCE) -> list[GoldenCheck]:
    out = [
        _exact("phi1(1/3)", phi1(Fraction(1, 3)), Fraction(4, 9)),
        _exact("nested d=2 [phi1, basic]", nested_gromov(2, ["phi1", "basic"]).value, Fraction(2, 9)),
        _exact("nested d=3 [phi1, basic, basic]",
               nested_gromov(3, ["phi1", "basic", "basic"]).value, Fraction(1, 16)),
    ]
    for d in range(2, 9):
        v = nested_gromov(d, ["phi1"] + ["basic"] * (d - 1)).value
        out.append(_exact(f"nested d={d} closed form 2d/((d+1)!(d+1))", v, gromov_closed_form(d)))
    v = nested_gromov(3, ["phi1", "upper_prop7", "upper_prop7"]).value
    out.append(_close("nested d=3 [phi1, upper, upper]", v, 0.0877695, tolerance))
    out.append(_exact("nested d=3 [phi1, kms, basic]",
                      nested_gromov(3, ["phi1", "kms", "basic"]).value, Fraction(9, 128)))
    _, ub, _ = upper_bound_prop7(2, Fraction(2, 9))
    out.append(_close("upper(d=2, 2/9) = basic(2/9)", ub, basic(Fraction(2, 9)), tolerance))
    eps0, c3 = solve_c3_lower()
    out.append(_above("eps0*", eps0, 0.00082, PROP9_TOLERANCE))
    out.append(_above("c3 lower bound", c3, 0.06332, PROP9_TOLERANCE))
    return out


def verify_all(tolerance: float = DEFAULT_TOLERANCE) -> tuple[bool, list[GoldenCheck], float]:
    """Run every check; returns (all passed, checks, seconds)."""
    t0 = time.perf_counter()
    checks = golden_checks(tolerance)
    return all(c.passed for c in checks), checks, time.perf_counter() - t0
