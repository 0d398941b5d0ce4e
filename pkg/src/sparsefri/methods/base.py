"""Configuration, rule views, flanking-rule selection and conclusion assembly."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DegenerateRuleError, DomainError, NotSurroundedError, UndefinedRatioError
from ..fuzzy import (
    DEFAULT_NUM_POINTS,
    TOL,
    AlphaCut,
    AlphaLevelScheme,
    PiecewiseLinearFuzzySet,
    ReferencePointKind,
    alpha_cut,
    breakpoint_levels,
    cog_defuzzify,
    cuts_of,
    generate_levels,
    minkowski_distance,
    monotone_projection,
    representative_value,
    set_from_alpha_cuts,
)

ZERO = 1e-12
"""Distances and denominators at or below this are treated as exact zeros."""

Observation = Sequence[PiecewiseLinearFuzzySet]


class Method(enum.Enum):
    KH = "KH"
    KHSTAB = "KHstab"
    VKK = "VKK"
    MACI = "MACI"
    CRF = "CRF"
    IMUL = "IMUL"
    GM = "GM"
    SCALEMOVE = "ScaleMove"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key == "khstabilized":
            key = "khstab"
        for member in cls:
            if member.value.lower() == key:
                return member
        names = ", ".join(m.value for m in cls)
        raise DomainError(f"unknown interpolation method {value!r} (expected one of {names})")

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class InterpolationConfig:
    """Method selector plus the tunable parameters shared by all methods.

    ``refine_tol`` only affects KH, KHstab and VKK under the breakpoint level
    scheme: their cut endpoints are rational in the level, so extra levels are
    bisected in between breakpoint levels until the piecewise-linear
    conclusion is within ``refine_tol`` (membership units) of the exact one.
    ``None`` disables refinement.
    """

    method: Method = Method.KH
    alpha_levels: AlphaLevelScheme = field(default_factory=AlphaLevelScheme.breakpoints)
    num_points: int = DEFAULT_NUM_POINTS
    rp_type: ReferencePointKind = ReferencePointKind.CORE_CENTRE
    minkowski_w: float = 2.0
    refine_tol: float | None = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "method", Method.parse(self.method))
        object.__setattr__(self, "alpha_levels", AlphaLevelScheme.parse(self.alpha_levels))
        object.__setattr__(self, "rp_type", ReferencePointKind.parse(self.rp_type))
        if int(self.num_points) != self.num_points or self.num_points < 2:
            raise DomainError("num_points must be an integer >= 2")
        if not self.minkowski_w >= 1:
            raise DomainError("the Minkowski exponent w must be >= 1")
        if self.refine_tol is not None and not self.refine_tol > 0:
            raise DomainError("refine_tol must be positive or None")

    @property
    def reference_kind(self) -> ReferencePointKind:
        # ScaleMove positions sets by the mean of their characteristic points
        if self.method is Method.SCALEMOVE:
            return ReferencePointKind.CENTROID
        return self.rp_type


@dataclass(frozen=True)
class RuleView:
    """A rule with its fuzzy sets resolved: one antecedent per input, one consequent per output."""

    antecedents: tuple[PiecewiseLinearFuzzySet, ...]
    consequents: tuple[PiecewiseLinearFuzzySet, ...]
    weight: float = 1.0
    index: int = 0

    @property
    def consequent(self) -> PiecewiseLinearFuzzySet:
        return self.consequents[0]


@dataclass(frozen=True)
class FlankingPair:
    lower: RuleView
    upper: RuleView
    lambdas: tuple[float, ...]


@dataclass(frozen=True)
class Conclusion:
    """Result of one interpolation: a fuzzy conclusion and crisp value per output.

    ``cuts`` holds the raw alpha-cuts the conclusion was assembled from. When
    ``abnormal[k]`` is set, ``fuzzy[k]`` is the unrepaired polygon and
    ``crisp[k]`` was computed from its monotone projection, available through
    :meth:`defuzzified_set`.
    """

    fuzzy: tuple[PiecewiseLinearFuzzySet, ...]
    crisp: tuple[float, ...]
    abnormal: tuple[bool, ...]
    method: Method
    cuts: tuple[tuple[AlphaCut, ...], ...]
    diagnostics: tuple[str, ...] = ()
    details: dict = field(default_factory=dict, compare=False)

    def defuzzified_set(self, k: int = 0) -> PiecewiseLinearFuzzySet:
        if not self.abnormal[k]:
            return self.fuzzy[k]
        return set_from_alpha_cuts(monotone_projection(self.cuts[k]), self.fuzzy[k].label)

    def with_diagnostics(self, extra):
        return Conclusion(
            self.fuzzy, self.crisp, self.abnormal, self.method, self.cuts, self.diagnostics + tuple(extra), self.details
        )


def reference_points(sets, kind) -> np.ndarray:
    return np.array([representative_value(s, kind) for s in sets])


def select_flanking_pair(rules: Sequence[RuleView], obs: Observation, cfg: InterpolationConfig) -> FlankingPair:
    """Pick the nearest rule below and the nearest rule above the observation.

    A rule is below (above) when its antecedent reference points are <= (>=)
    the observation's in every dimension; nearness is the Minkowski distance
    between reference-point vectors, ties going to the lower rule index.
    """
    if len(rules) < 2:
        raise NotSurroundedError("interpolation needs at least 2 rules")
    kind = cfg.reference_kind
    target = reference_points(obs, kind)
    rps = [reference_points(r.antecedents, kind) for r in rules]
    below = [i for i, rp in enumerate(rps) if np.all(rp <= target + TOL)]
    above = [i for i, rp in enumerate(rps) if np.all(rp >= target - TOL)]

    def nearest(candidates, exclude=None):
        pool = [i for i in candidates if i != exclude]
        if not pool:
            return None
        return min(pool, key=lambda i: (minkowski_distance(rps[i], target, cfg.minkowski_w), i))

    lo = nearest(below)
    hi = nearest(above, exclude=lo)
    if lo is None or hi is None:
        hi = nearest(above)
        lo = nearest(below, exclude=hi)
    if lo is None or hi is None:
        raise NotSurroundedError(
            f"observation at {np.round(target, 6).tolist()} is not surrounded by the rule antecedents"
        )
    span = rps[hi] - rps[lo]
    lambdas = tuple(
        0.0 if abs(s) <= ZERO else float((t - a) / s) for t, a, s in zip(target, rps[lo], span)
    )
    return FlankingPair(rules[lo], rules[hi], lambdas)


def inverse_distance_weights(distances) -> np.ndarray:
    """Normalised ``1/d`` weights; a zero distance takes all the weight (the analytic limit)."""
    d = np.asarray(distances, dtype=float)
    hit = d <= ZERO
    if hit.any():
        return hit / hit.sum()
    w = 1.0 / d
    return w / w.sum()


def safe_ratio(num, den, what):
    if abs(den) <= ZERO:
        if abs(num) <= ZERO:
            return 1.0
        raise UndefinedRatioError(f"{what} ratio undefined: {num:g}/0")
    return num / den


def power_mean(values, w):
    """Minkowski-style aggregate of per-dimension ratios; the identity in one dimension."""
    v = np.abs(np.asarray(values, dtype=float))
    if v.size == 1:
        return float(v[0])
    return float(np.mean(v**w) ** (1.0 / w))


def lambda_core(pair: FlankingPair, obs: Observation, cfg: InterpolationConfig) -> float:
    """Relative position of the observation between the flanking antecedents."""
    kind = cfg.reference_kind
    target = reference_points(obs, kind)
    rp1 = reference_points(pair.lower.antecedents, kind)
    rp2 = reference_points(pair.upper.antecedents, kind)
    den = minkowski_distance(rp2, rp1, cfg.minkowski_w)
    if den <= ZERO:
        raise DegenerateRuleError(
            f"rules {pair.lower.index} and {pair.upper.index} share the same reference point"
        )
    return minkowski_distance(target, rp1, cfg.minkowski_w) / den


def involved_sets(obs, rules):
    sets = list(obs)
    for r in rules:
        sets.extend(r.antecedents)
        sets.extend(r.consequents)
    return sets


def levels_for(cfg: InterpolationConfig, obs, rules) -> list[float]:
    return generate_levels(cfg.alpha_levels, involved_sets(obs, rules))


def blend_cut(c1: AlphaCut, c2: AlphaCut, lam: float) -> AlphaCut:
    return AlphaCut(c1.level, (1 - lam) * c1.lower + lam * c2.lower, (1 - lam) * c1.upper + lam * c2.upper)


def blend_cuts(s1, s2, lam, levels):
    return [blend_cut(alpha_cut(s1, lv), alpha_cut(s2, lv), lam) for lv in levels]


def _chord_error(a0, x0, a1, x1, am, xm):
    if abs(x1 - x0) <= ZERO:
        return 0.0 if abs(xm - x0) <= 1e-12 else 0.5 * (a1 - a0)
    t = min(1.0, max(0.0, (xm - x0) / (x1 - x0)))
    return abs(a0 + t * (a1 - a0) - am)


def sample_cuts(
    cut_fn: Callable[[float], list[AlphaCut]],
    levels: Sequence[float],
    refine_tol: float | None,
    max_depth: int = 10,
) -> list[list[AlphaCut]]:
    """Evaluate ``cut_fn`` (one cut per output) at ``levels``, bisecting where needed.

    With ``refine_tol`` set, each gap between consecutive levels is split
    while the midpoint cut deviates from the straight chord by more than
    ``refine_tol`` in membership. Returns one ascending cut list per output.
    """
    table = {lv: cut_fn(lv) for lv in levels}

    def error(c0, c1, cm):
        worst = 0.0
        for k0, k1, km in zip(c0, c1, cm):
            worst = max(
                worst,
                _chord_error(k0.level, k0.lower, k1.level, k1.lower, km.level, km.lower),
                _chord_error(k0.level, k0.upper, k1.level, k1.upper, km.level, km.upper),
            )
        return worst

    def visit(a0, a1, depth):
        if depth >= max_depth:
            return
        am = 0.5 * (a0 + a1)
        cm = cut_fn(am)
        if error(table[a0], table[a1], cm) > refine_tol:
            table[am] = cm
            visit(a0, am, depth + 1)
            visit(am, a1, depth + 1)

    if refine_tol is not None:
        for a0, a1 in zip(levels, levels[1:]):
            visit(a0, a1, 0)
    ordered = [table[lv] for lv in sorted(table)]
    return [[row[k] for row in ordered] for k in range(len(ordered[0]))]


def conclude(method, cuts_per_output, cfg, diagnostics=(), details=None, project=False):
    """Assemble per-output cut lists into a :class:`Conclusion`.

    ``project`` applies the monotone projection before assembly (methods that
    eliminate abnormality by construction); otherwise non-nested cuts yield a
    flagged abnormal set.
    """
    fuzzy, crisp, abnormal, cuts_out = [], [], [], []
    diagnostics = list(diagnostics)
    for k, cuts in enumerate(cuts_per_output):
        cuts = sorted(cuts, key=lambda c: c.level)
        label = "B*" if len(cuts_per_output) == 1 else f"B*_{k + 1}"
        if project:
            fixed = monotone_projection(cuts)
            if any(abs(a.lower - b.lower) > TOL or abs(a.upper - b.upper) > TOL for a, b in zip(cuts, fixed)):
                diagnostics.append(f"output {k + 1}: abnormal cuts removed by monotone projection")
            cuts = fixed
        fset = set_from_alpha_cuts(cuts, label)
        if fset.abnormal:
            diagnostics.append(f"output {k + 1}: abnormal conclusion (alpha-cuts not nested)")
            value = cog_defuzzify(set_from_alpha_cuts(monotone_projection(cuts), label), cfg.num_points)
        else:
            value = cog_defuzzify(fset, cfg.num_points)
        fuzzy.append(fset)
        crisp.append(value)
        abnormal.append(fset.abnormal)
        cuts_out.append(tuple(cuts))
    return Conclusion(
        tuple(fuzzy), tuple(crisp), tuple(abnormal), method, tuple(cuts_out), tuple(diagnostics), details or {}
    )


def conclude_sets(method, sets, cfg, diagnostics=(), details=None):
    """Wrap directly constructed conclusion sets (no alpha-cut stage)."""
    cuts = [cuts_of(s, breakpoint_levels([s])) for s in sets]
    return conclude(method, cuts, cfg, diagnostics, details)
