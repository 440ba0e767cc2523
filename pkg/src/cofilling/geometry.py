"""Exact planar geometry: intersection cochains of probes and first-selection depth.

All coordinates are :class:`fractions.Fraction`; every predicate is an exact
sign.  General position is checked, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .cochain import Cochain, CochainError, coboundary

Point = tuple[Fraction, Fraction]


class GeneralPositionError(CochainError):
    """A degenerate configuration or probe was detected."""


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of det[q - p, r - p]: +1 counterclockwise, -1 clockwise, 0 collinear."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def _cross(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class PointConfig:
    points: tuple[Point, ...]

    def __init__(self, points: Iterable[Sequence]):
        object.__setattr__(self, "points", tuple(point(*p) for p in points))

    @property
    def n(self) -> int:
        return len(self.points)

    def p(self, i: int) -> Point:
        """1-based access."""
        return self.points[i - 1]

    def degenerate_triples(self) -> list[tuple[int, int, int]]:
        return [t for t in combinations(range(1, self.n + 1), 3)
                if orientation(self.p(t[0]), self.p(t[1]), self.p(t[2])) == 0]

    def in_general_position(self) -> bool:
        return not self.degenerate_triples()

    def check(self) -> None:
        bad = self.degenerate_triples()
        if bad:
            raise GeneralPositionError(f"collinear triples {bad[:5]}")

    def transformed(self, a, b, c, d, e=0, f=0) -> "PointConfig":
        """Image under (x, y) -> (a x + b y + e, c x + d y + f)."""
        if a * d - b * c == 0:
            raise CochainError("affine map is singular")
        return PointConfig([(a * x + b * y + e, c * x + d * y + f) for x, y in self.points])

    def relabeled(self, perm: Sequence[int]) -> "PointConfig":
        """New point i is old point perm[i-1]."""
        return PointConfig([self.p(i) for i in perm])

    def to_json(self) -> dict:
        return {"points": [[x.numerator, x.denominator, y.numerator, y.denominator] for x, y in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> "PointConfig":
        try:
            return cls([(Fraction(a, b), Fraction(c, d)) for a, b, c, d in obj["points"]])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise CochainError(f"bad point configuration JSON: {exc}") from None


# ---------------------------------------------------------------------------
# probes


def _on_segment_closed(p: Point, a: Point, b: Point) -> bool:
    if orientation(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def probe_violations(P: PointConfig, probe: Sequence[Point]) -> list[str]:
    """Degeneracies between a probe simplex and the simplices spanned by P.

    A probe vertex may not lie on a closed P-segment (which covers P points);
    a probe edge may not pass through a P point; the probe itself must be
    non-degenerate.
    """
    probe = [point(*q) for q in probe]
    out = []
    if len(set(probe)) != len(probe):
        out.append("repeated probe vertex")
    if len(probe) == 3 and orientation(*probe) == 0:
        out.append("degenerate probe triangle")
    pts = P.points
    for qi, q in enumerate(probe):
        for i, j in combinations(range(len(pts)), 2):
            if _on_segment_closed(q, pts[i], pts[j]):
                out.append(f"probe vertex {qi} on segment {i + 1}{j + 1}")
        if len(pts) == 1 and q == pts[0]:
            out.append(f"probe vertex {qi} equals point 1")
    for a, b in combinations(range(len(probe)), 2):
        for i, p in enumerate(pts, start=1):
            if _on_segment_closed(p, probe[a], probe[b]):
                out.append(f"point {i} on probe edge {a}{b}")
    return out


def _check_probe(P: PointConfig, probe: Sequence[Point]) -> list[Point]:
    probe = [point(*q) for q in probe]
    if not 1 <= len(probe) <= 3:
        raise CochainError("a planar probe has 1 to 3 vertices")
    bad = probe_violations(P, probe)
    if bad:
        raise GeneralPositionError("; ".join(bad[:5]))
    return probe


def in_triangle(x: Point, a: Point, b: Point, c: Point) -> bool:
    """Strict containment by orientation signs."""
    s1, s2, s3 = orientation(a, b, x), orientation(b, c, x), orientation(c, a, x)
    return s1 == s2 == s3 != 0


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper crossing of ab and cd."""
    return (orientation(a, b, c) * orientation(a, b, d) < 0
            and orientation(c, d, a) * orientation(c, d, b) < 0)


def intersection_cochain(P: PointConfig, probe: Sequence[Point], check: bool = True) -> Cochain:
    """Simplices of P met by the probe.

    A point gives the triangles containing it (arity 3), a segment the
    P-segments it crosses (arity 2), a triangle the P points inside it (arity 1).
    """
    probe = _check_probe(P, probe) if check else [point(*q) for q in probe]
    n, pts = P.n, P.points
    k = len(probe)
    if k == 1:
        x = probe[0]
        sets = [(i + 1, j + 1, l + 1) for i, j, l in combinations(range(n), 3)
                if in_triangle(x, pts[i], pts[j], pts[l])]
        return Cochain.from_sets(n, 3, sets)
    if k == 2:
        x, y = probe
        sets = [(i + 1, j + 1) for i, j in combinations(range(n), 2)
                if segments_cross(x, y, pts[i], pts[j])]
        return Cochain.from_sets(n, 2, sets)
    x, y, z = probe
    return Cochain.from_sets(n, 1, [(i + 1,) for i in range(n) if in_triangle(pts[i], x, y, z)])


def boundary_faces(probe: Sequence[Point]) -> list[list[Point]]:
    k = len(probe)
    return [[probe[j] for j in range(k) if j != i] for i in range(k)] if k > 1 else []


def verify_duality(P: PointConfig, probe: Sequence[Point]) -> Cochain:
    """delta F_A + sum of F over the facets of A; empty when the duality holds."""
    probe = _check_probe(P, probe)
    fa = intersection_cochain(P, probe, check=False)
    if fa.arity >= P.n:
        # no (arity+1)-subsets exist and a point has no facets
        return Cochain(P.n, fa.arity, 0)
    res = coboundary(fa)
    for face in boundary_faces(probe):
        res = res + intersection_cochain(P, face, check=False)
    return res


# ---------------------------------------------------------------------------
# depth


def _area2(a: Point, b: Point, c: Point) -> Fraction:
    return abs(_cross(_sub(b, a), _sub(c, a)))


def depth_direct(P: PointConfig, x: Point) -> int:
    """Triangles strictly containing x, counted by area additivity."""
    pts = P.points
    count = 0
    for a, b, c in combinations(pts, 3):
        whole = _area2(a, b, c)
        parts = (_area2(x, b, c), _area2(a, x, c), _area2(a, b, x))
        if all(parts) and sum(parts) == whole:
            count += 1
    return count


def arrangement_lines(P: PointConfig) -> list[tuple[Point, Point]]:
    """(anchor, direction) of every line through two points of P."""
    return [(P.points[i], _sub(P.points[j], P.points[i]))
            for i, j in combinations(range(P.n), 2)]


def _line_intersection(l1, l2) -> Point | None:
    (p, u), (q, v) = l1, l2
    den = _cross(u, v)
    if den == 0:
        return None
    t = _cross(_sub(q, p), v) / den
    return (p[0] + t * u[0], p[1] + t * u[1])


def _angle_key(u: Point):
    # half-plane index, then counterclockwise order inside it via cross products
    upper = u[1] > 0 or (u[1] == 0 and u[0] > 0)
    return 0 if upper else 1


def _sort_by_angle(rays: list[Point]) -> list[Point]:
    from functools import cmp_to_key

    def cmp(a, b):
        ha, hb = _angle_key(a), _angle_key(b)
        if ha != hb:
            return ha - hb
        c = _cross(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(rays, key=cmp_to_key(cmp))


def arrangement_vertices(P: PointConfig) -> list[Point]:
    lines = arrangement_lines(P)
    verts = set()
    for a, b in combinations(lines, 2):
        w = _line_intersection(a, b)
        if w is not None:
            verts.add(w)
    return sorted(verts)


def cell_representatives(P: PointConfig) -> list[Point]:
    """One point in every open sector around every arrangement vertex.

    Every cell of the line arrangement has a vertex on its closure, so these
    points meet every cell.  Each sector point is w + t (r_k + r_{k+1}) for
    consecutive rays r_k, r_{k+1} at w, with t half the first hit of any
    other line along that direction.
    """
    lines = arrangement_lines(P)
    reps = set()
    for w in arrangement_vertices(P):
        through, others = [], []
        for anchor, d in lines:
            (through if _cross(d, _sub(w, anchor)) == 0 else others).append((anchor, d))
        rays = []
        for _, d in through:
            rays.extend([d, (-d[0], -d[1])])
        rays = _sort_by_angle(rays)
        for k in range(len(rays)):
            r1, r2 = rays[k], rays[(k + 1) % len(rays)]
            u = (r1[0] + r2[0], r1[1] + r2[1])
            hits = []
            for anchor, d in others:
                den = _cross(d, u)
                if den != 0:
                    t = -_cross(d, _sub(w, anchor)) / den
                    if t > 0:
                        hits.append(t)
            t = min(hits) / 2 if hits else Fraction(1)
            reps.add((w[0] + t * u[0], w[1] + t * u[1]))
    return sorted(reps)


@dataclass
class DepthReport:
    witness: Point
    depth: int
    witness_cochain: Cochain
    candidates: int
    two_path_agree: bool

    def to_json(self) -> dict:
        from .io import cochain_to_json
        x, y = self.witness
        return {
            "witness": [x.numerator, x.denominator, y.numerator, y.denominator],
            "depth": self.depth,
            "witness_cochain": cochain_to_json(self.witness_cochain),
            "candidates": self.candidates,
            "two_path_agree": self.two_path_agree,
        }


def _integer_scale(P: PointConfig) -> tuple[int, list[tuple[int, int]]]:
    m = math.lcm(*(c.denominator for p in P.points for c in p))
    return m, [(int(x * m), int(y * m)) for x, y in P.points]


def _homogeneous(x: Point) -> tuple[int, int, int]:
    w = math.lcm(x[0].denominator, x[1].denominator)
    return int(x[0] * w), int(x[1] * w), w


class _DepthCounter:
    """Integer-only containment counts for points given as (X, Y, W), W > 0."""

    def __init__(self, pts: list[tuple[int, int]]):
        self.pts = pts
        n = len(pts)
        self.triples = list(combinations(range(n), 3))
        # orientation(p_i, p_j, x) = sign(a X + b Y + c W)
        self.lines = {}
        for i, j in combinations(range(n), 2):
            (px, py), (qx, qy) = pts[i], pts[j]
            self.lines[i, j] = (-(qy - py), qx - px, (qy - py) * px - (qx - px) * py)

    def sign_table(self, h) -> dict:
        X, Y, W = h
        out = {}
        for key, (a, b, c) in self.lines.items():
            v = a * X + b * Y + c * W
            out[key] = (v > 0) - (v < 0)
        return out

    def containing(self, h) -> list[tuple[int, int, int]]:
        """Triangles (1-based) containing the point, via orientation signs."""
        s = self.sign_table(h)
        return [(i + 1, j + 1, k + 1) for i, j, k in self.triples
                if s[i, j] == s[j, k] == -s[i, k] != 0]

    def direct(self, h) -> int:
        """Same count by area additivity: |xbc| + |axc| + |abx| = |abc|, all parts nonzero."""
        X, Y, W = h
        pts = self.pts
        count = 0
        for i, j, k in self.triples:
            (ax, ay), (bx, by), (cx, cy) = pts[i], pts[j], pts[k]
            whole = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) * W
            p1 = abs((bx * W - X) * (cy * W - Y) - (by * W - Y) * (cx * W - X))
            p2 = abs((X - ax * W) * (cy - ay) * W - (Y - ay * W) * (cx - ax) * W)
            p3 = abs((bx - ax) * (Y - ay * W) - (by - ay) * (X - ax * W)) * W
            if p1 and p2 and p3 and p1 + p2 + p3 == whole * W:
                count += 1
        return count


def candidate_depths(P: PointConfig) -> list[tuple[Point, int, int]]:
    """(candidate, depth by orientation signs, depth by areas) for every cell representative."""
    P.check()
    m, ipts = _integer_scale(P)
    counter = _DepthCounter(ipts)
    out = []
    for x in cell_representatives(PointConfig(ipts)):
        h = _homogeneous(x)
        out.append(((x[0] / m, x[1] / m), len(counter.containing(h)), counter.direct(h)))
    return out


def max_depth(P: PointConfig, two_paths: bool = True) -> DepthReport:
    """Exact maximum number of P-triangles containing a generic point of the plane.

    Coordinates are scaled to integers (depth is invariant) and each cell
    representative is counted with integer predicates.  With ``two_paths``
    the area-additivity count is compared on every candidate; the witness
    cochain is recomputed with :func:`intersection_cochain` and must match.
    """
    P.check()
    if P.n < 3:
        raise CochainError("depth needs at least three points")
    m, ipts = _integer_scale(P)
    counter = _DepthCounter(ipts)
    best: tuple[int, Point] | None = None
    agree = True
    cands = cell_representatives(PointConfig(ipts))
    for x in cands:
        h = _homogeneous(x)
        dep = len(counter.containing(h))
        if two_paths and counter.direct(h) != dep:
            agree = False
        if best is None or dep > best[0]:
            best = (dep, x)
    witness = (best[1][0] / m, best[1][1] / m)
    fx = intersection_cochain(P, [witness], check=False)
    if len(fx) != best[0]:
        agree = False
    return DepthReport(witness, best[0], fx, len(cands), agree)


# ---------------------------------------------------------------------------
# a realization of the five-point example

# Integer coordinates found by random search and certified by recomputation;
# any realization with the same intersection sets would do.
FIG1_POINTS = ((12, 11), (12, 5), (5, 0), (7, 9), (9, 4))
FIG1_PROBES = {"x": (11, 6), "y": (10, 4), "z": (7, 3)}

EXAMPLE_SETS = {
    "x": [(1, 2, 3), (1, 2, 4), (1, 2, 5)],
    "y": [(1, 2, 3), (2, 3, 4), (2, 3, 5)],
    "z": [(1, 2, 3), (1, 3, 5), (2, 3, 4), (3, 4, 5)],
    "xy": [(2, 4), (2, 5)],
    "yz": [(3, 5)],
    "xz": [(1, 5), (2, 4), (4, 5)],
    "xyz": [(5,)],
}


def fig1_config() -> tuple[PointConfig, dict[str, Point]]:
    return PointConfig(FIG1_POINTS), {k: point(*v) for k, v in FIG1_PROBES.items()}


def fig1_probes() -> dict[str, list[Point]]:
    """The seven probes x, y, z, xy, yz, xz, xyz of the realization."""
    _, q = fig1_config()
    return {key: [q[c] for c in key] for key in EXAMPLE_SETS}


def fig1_check() -> dict[str, bool]:
    """Does each intersection cochain of the realization match its listed set?"""
    P, _ = fig1_config()
    return {key: sorted(intersection_cochain(P, probe).sets()) == sorted(EXAMPLE_SETS[key])
            for key, probe in fig1_probes().items()}
