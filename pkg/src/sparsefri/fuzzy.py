"""Convex normal piecewise-linear fuzzy sets and the numeric primitives built on them.

A fuzzy set is stored as an ordered list of ``(x, mu)`` breakpoints; membership
between breakpoints is linear and zero outside ``[first x, last x]``. Singletons,
triangles, trapezoids and arbitrary polygons all share this representation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

TOL = 1e-9
"""Absolute tolerance for invariant checks (ordering, nesting, normality)."""

DEFAULT_NUM_POINTS = 501
DEFAULT_USER_LEVELS = 101


@dataclass(frozen=True)
class PiecewiseLinearFuzzySet:
    """Ordered ``(x, mu)`` breakpoints plus a label.

    Construction only checks that the points are finite and that every ``mu``
    lies in ``[0, 1]``; the convex/normal invariants are reported by
    :func:`validate_cnf` so that malformed sets can still be diagnosed.
    ``abnormal`` marks a raw interpolation result whose alpha-cuts were not
    nested; such a set is kept verbatim and is not a valid membership function.
    """

    points: tuple[tuple[float, float], ...]
    label: str = ""
    abnormal: bool = False

    def __post_init__(self):
        pts = tuple((float(x), float(mu)) for x, mu in self.points)
        if not pts:
            raise DomainError("a fuzzy set needs at least one breakpoint")
        for x, mu in pts:
            if not (math.isfinite(x) and math.isfinite(mu)):
                raise DomainError(f"non-finite breakpoint ({x}, {mu})")
            if mu < -TOL or mu > 1 + TOL:
                raise DomainError(f"membership {mu} outside [0, 1]")
        pts = tuple((x, min(1.0, max(0.0, mu))) for x, mu in pts)
        object.__setattr__(self, "points", pts)

    @classmethod
    def singleton(cls, x, label=""):
        return cls(((x, 1.0),), label)

    @classmethod
    def triangle(cls, a, b, c, label=""):
        return cls.from_breakpoints([a, b, c], [0.0, 1.0, 0.0], label)

    @classmethod
    def trapezoid(cls, a, b, c, d, label=""):
        return cls.from_breakpoints([a, b, c, d], [0.0, 1.0, 1.0, 0.0], label)

    @classmethod
    def from_breakpoints(cls, xs, mus, label=""):
        """Build a set from parallel x/mu sequences, merging coincident x values.

        Adjacent points sharing an x (a vertical, crisp edge) collapse to the
        point with the larger membership, which is the closure convention.
        """
        xs = [float(v) for v in xs]
        mus = [float(v) for v in mus]
        if len(xs) != len(mus):
            raise DomainError("x and mu lists differ in length")
        return cls(tuple(_merge_coincident(list(zip(xs, mus)))), label)

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def mus(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    @property
    def support(self) -> tuple[float, float]:
        cut = alpha_cut(self, 0.0)
        return cut.lower, cut.upper

    @property
    def core(self) -> tuple[float, float]:
        cut = alpha_cut(self, 1.0)
        return cut.lower, cut.upper

    def __call__(self, x):
        return membership(self, x)

    def with_label(self, label):
        return PiecewiseLinearFuzzySet(self.points, label, self.abnormal)


@dataclass(frozen=True)
class AlphaCut:
    level: float
    lower: float
    upper: float

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def centre(self):
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class AlphaLevelScheme:
    """How the alpha levels of an alpha-cut based method are chosen.

    ``kind`` is ``"breakpoints"`` (the membership values occurring at the
    breakpoints of the involved sets) or ``"userdefined"`` (``count``
    uniformly spaced levels in ``[0, 1]``).
    """

    kind: str = "breakpoints"
    count: int | None = None

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in ("breakpoints", "userdefined"):
            raise DomainError(f"unknown alpha level scheme {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "userdefined":
            count = DEFAULT_USER_LEVELS if self.count is None else int(self.count)
            if count < 2:
                raise DomainError("a user defined alpha level scheme needs at least 2 levels")
            object.__setattr__(self, "count", count)
        elif self.count is not None:
            raise DomainError("the breakpoint scheme takes no level count")

    @classmethod
    def breakpoints(cls):
        return cls("breakpoints")

    @classmethod
    def user_defined(cls, count=DEFAULT_USER_LEVELS):
        return cls("userdefined", count)

    @classmethod
    def parse(cls, text):
        """Parse ``breakpoints``, ``userdefined`` or ``userdefined:<n>``."""
        if isinstance(text, cls):
            return text
        kind, _, count = str(text).strip().partition(":")
        if kind.lower() == "userdefined" and count:
            try:
                return cls(kind, int(count))
            except ValueError as exc:
                raise DomainError(f"bad alpha level count {count!r}") from exc
        return cls(kind)

    def __str__(self):
        if self.kind == "userdefined":
            return f"userdefined:{self.count}"
        return "breakpoints"


class ReferencePointKind(enum.Enum):
    """How a fuzzy set is summarised by a single position."""

    CORE_CENTRE = "corecentre"
    CENTROID = "centroid"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("_", "").replace("-", "")
        aliases = {
            "corecentre": cls.CORE_CENTRE,
            "corecenter": cls.CORE_CENTRE,
            "centroid": cls.CENTROID,
            "centroidofcharacteristicpoints": cls.CENTROID,
        }
        try:
            return aliases[text]
        except KeyError:
            raise DomainError(f"unknown reference point type {value!r}") from None


def _merge_coincident(points, tol=TOL):
    merged: list[tuple[float, float]] = []
    for x, mu in points:
        if merged and abs(x - merged[-1][0]) <= tol:
            if mu > merged[-1][1]:
                merged[-1] = (merged[-1][0], mu)
            continue
        merged.append((x, mu))
    return merged


def membership(fset: PiecewiseLinearFuzzySet, x):
    """Membership degree of ``x`` (scalar or array) in ``fset``."""
    xs, mus = fset.xs, fset.mus
    values = np.interp(x, xs, mus, left=0.0, right=0.0)
    if np.ndim(values) == 0:
        return float(values)
    return values


def _check_level(level):
    if not (0.0 <= level <= 1.0) or math.isnan(level):
        raise DomainError(f"alpha level {level} outside [0, 1]")


def alpha_cut(fset: PiecewiseLinearFuzzySet, level: float) -> AlphaCut:
    """Closed interval ``{x : mu(x) >= level}``; the support closure at level 0."""
    level = float(level)
    _check_level(level)
    pts = fset.points

    def reaches(mu):
        return mu > 0.0 if level == 0.0 else mu >= level - 1e-12

    lower = upper = None
    for i, (x, mu) in enumerate(pts):
        if reaches(mu):
            if i == 0 or abs(mu - level) <= 1e-12:
                lower = x
            else:
                x0, m0 = pts[i - 1]
                lower = x0 + (level - m0) / (mu - m0) * (x - x0)
            break
    for i in range(len(pts) - 1, -1, -1):
        x, mu = pts[i]
        if reaches(mu):
            if i == len(pts) - 1 or abs(mu - level) <= 1e-12:
                upper = x
            else:
                x1, m1 = pts[i + 1]
                upper = x1 - (level - m1) / (mu - m1) * (x1 - x)
            break
    if lower is None:
        raise DomainError(f"set {fset.label!r} never reaches level {level}")
    return AlphaCut(level, lower, upper)


def breakpoint_levels(sets: Iterable[PiecewiseLinearFuzzySet]) -> list[float]:
    """Sorted union of the membership values at all breakpoints, always with 0 and 1."""
    sets = list(sets)
    if not sets:
        raise DomainError("breakpoint_levels needs at least one set")
    levels = sorted({0.0, 1.0, *(mu for s in sets for _, mu in s.points)})
    out: list[float] = []
    for lv in levels:
        if out and lv - out[-1] <= TOL:
            continue
        out.append(lv)
    if out[-1] != 1.0:
        out[-1] = 1.0
    return out


def generate_levels(scheme: AlphaLevelScheme, sets: Sequence[PiecewiseLinearFuzzySet]) -> list[float]:
    if scheme.kind == "userdefined":
        return [float(v) for v in np.linspace(0.0, 1.0, scheme.count)]
    return breakpoint_levels(sets)


def characteristic_points(fset: PiecewiseLinearFuzzySet) -> list[tuple[float, float]]:
    """Breakpoints with interior collinear points removed."""
    return _drop_collinear(list(fset.points))


def _drop_collinear(pts, tol=1e-12):
    if len(pts) <= 2:
        return list(pts)
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        (x0, m0), (x1, m1), (x2, m2) = out[-1], pts[i], pts[i + 1]
        if x2 - x0 > 0:
            # twice the triangle area, against a tolerance scaled to the x magnitude
            area = abs((x1 - x0) * (m2 - m0) - (x2 - x0) * (m1 - m0))
            if area <= tol * max(1.0, abs(x0), abs(x2)):
                continue
        out.append(pts[i])
    out.append(pts[-1])
    return out


def representative_value(fset: PiecewiseLinearFuzzySet, kind=ReferencePointKind.CORE_CENTRE) -> float:
    """Single-number position of a set: its core midpoint or the mean of its characteristic points."""
    kind = ReferencePointKind.parse(kind)
    if kind is ReferencePointKind.CORE_CENTRE:
        return alpha_cut(fset, 1.0).centre
    return float(np.mean([x for x, _ in characteristic_points(fset)]))


def cog_samples(fset: PiecewiseLinearFuzzySet, num_points: int = DEFAULT_NUM_POINTS):
    """Quadrature nodes used by :func:`cog_defuzzify`: a uniform grid over the
    support, augmented with the set's breakpoints. Returns ``(x, mu)`` arrays."""
    if num_points < 2:
        raise DomainError("num_points must be at least 2")
    lo, hi = fset.xs[0], fset.xs[-1]
    grid = np.union1d(np.linspace(lo, hi, int(num_points)), fset.xs)
    return grid, np.asarray(membership(fset, grid), dtype=float)


def cog_defuzzify(fset: PiecewiseLinearFuzzySet, num_points: int = DEFAULT_NUM_POINTS) -> float:
    """Centre of gravity by trapezoidal quadrature over :func:`cog_samples`."""
    if num_points < 2:
        raise DomainError("num_points must be at least 2")
    if fset.xs[-1] - fset.xs[0] <= TOL:
        return float(fset.xs[np.argmax(fset.mus)])
    x, mu = cog_samples(fset, num_points)
    return cog_from_samples(x, mu)


def cog_from_samples(x, mu) -> float:
    x = np.asarray(x, dtype=float)
    mu = np.asarray(mu, dtype=float)
    area = np.trapezoid(mu, x)
    if area <= 0.0:
        return float(np.mean(x[mu == mu.max()]))
    return float(np.trapezoid(x * mu, x) / area)


def lower_upper_distance(a: PiecewiseLinearFuzzySet, b: PiecewiseLinearFuzzySet, level: float):
    """Signed ``(inf(b_level) - inf(a_level), sup(b_level) - sup(a_level))``."""
    ca, cb = alpha_cut(a, level), alpha_cut(b, level)
    return cb.lower - ca.lower, cb.upper - ca.upper


def minkowski_distance(a, b, w: float = 2.0) -> float:
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        raise DomainError(f"vector lengths differ ({a.size} vs {b.size})")
    if not w >= 1:
        raise DomainError(f"Minkowski exponent must be >= 1, got {w}")
    diff = np.abs(a - b)
    if diff.size == 1:
        return float(diff[0])
    return float(np.sum(diff**w) ** (1.0 / w))


@dataclass(frozen=True)
class Violation:
    kind: str  # "order", "normal" or "convex"
    index: int
    message: str


@dataclass(frozen=True)
class CnfReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "valid"
        return "; ".join(v.message for v in self.violations)


def validate_cnf(fset: PiecewiseLinearFuzzySet) -> CnfReport:
    """Report ordering, normality and convexity violations of a breakpoint list."""
    violations = []
    pts = fset.points
    if fset.abnormal:
        violations.append(Violation("convex", 0, "set is flagged abnormal (non-nested alpha-cuts)"))
    for i in range(1, len(pts)):
        if pts[i][0] - pts[i - 1][0] <= TOL:
            violations.append(
                Violation("order", i, f"x not strictly increasing at point {i} ({pts[i][0]} after {pts[i - 1][0]})")
            )
    peak = max(mu for _, mu in pts)
    if peak < 1.0 - TOL:
        violations.append(Violation("normal", int(np.argmax([mu for _, mu in pts])), f"not normal: max mu is {peak}"))
    falling = False
    for i in range(1, len(pts)):
        step = pts[i][1] - pts[i - 1][1]
        if step < -TOL:
            falling = True
        elif step > TOL and falling:
            violations.append(Violation("convex", i, f"not convex: mu rises again at point {i}"))
            break
    return CnfReport(tuple(violations))


def cuts_are_nested(cuts: Sequence[AlphaCut], tol=TOL) -> bool:
    """True when every cut is a proper interval inside the cut one level below."""
    for i, c in enumerate(cuts):
        if c.lower > c.upper + tol:
            return False
        if i:
            prev = cuts[i - 1]
            if c.lower < prev.lower - tol or c.upper > prev.upper + tol:
                return False
    return True


def set_from_alpha_cuts(cuts: Iterable[AlphaCut], label: str = "") -> PiecewiseLinearFuzzySet:
    """Reassemble a set from its cuts; ascending lower ends then descending upper ends.

    Non-nested or inverted cuts are not repaired: the raw polygon is returned
    with ``abnormal=True``.
    """
    cuts = sorted(cuts, key=lambda c: c.level)
    if not cuts or abs(cuts[0].level) > TOL:
        raise DomainError("alpha cuts must include level 0")
    if abs(cuts[-1].level - 1.0) > TOL:
        raise DomainError("alpha cuts must include level 1")
    raw = [(c.lower, c.level) for c in cuts] + [(c.upper, c.level) for c in reversed(cuts)]
    if not cuts_are_nested(cuts):
        return PiecewiseLinearFuzzySet(tuple(raw), label, abnormal=True)
    pts = _merge_coincident(raw)
    # within-tolerance inversions can leave x slightly decreasing; clamp them
    fixed = [pts[0]]
    for x, mu in pts[1:]:
        fixed.append((max(x, fixed[-1][0]), mu))
    pts = _drop_collinear(_merge_coincident(fixed))
    return PiecewiseLinearFuzzySet(tuple(pts), label)


def cuts_of(fset: PiecewiseLinearFuzzySet, levels: Iterable[float]) -> list[AlphaCut]:
    return [alpha_cut(fset, lv) for lv in levels]


def monotone_projection(cuts: Sequence[AlphaCut]) -> list[AlphaCut]:
    """Smallest outward correction that makes a cut sequence nested.

    The top cut is made a proper interval, then each lower cut is widened to
    contain the one above it.
    """
    cuts = sorted(cuts, key=lambda c: c.level)
    out = [None] * len(cuts)
    top = cuts[-1]
    lo, hi = min(top.lower, top.upper), max(top.lower, top.upper)
    if top.lower > top.upper:
        lo = hi = top.centre
    out[-1] = AlphaCut(top.level, lo, hi)
    for i in range(len(cuts) - 2, -1, -1):
        c = cuts[i]
        lo = min(c.lower, out[i + 1].lower)
        hi = max(c.upper, out[i + 1].upper)
        out[i] = AlphaCut(c.level, lo, hi)
    return out
