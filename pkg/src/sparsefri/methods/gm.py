"""General method (GM): interpolate a new rule at the observation, then fire it.

The new rule's antecedent is the per-dimension blend of the flanking
antecedents placed at the observation's reference point; its consequent is
the blend of the flanking consequents at the core ratio. The mismatch
between observation and interpolated antecedent is then transferred to the
conclusion level by level (a fixed point law on the core centre): each
left/right spread of the interpolated consequent is scaled by the ratio of
the observation's spread to the interpolated antecedent's spread.
"""

from __future__ import annotations

from ..errors import DegenerateRuleError, MethodError
from ..fuzzy import (
    AlphaCut,
    ReferencePointKind,
    alpha_cut,
    characteristic_points,
    monotone_projection,
    representative_value,
    set_from_alpha_cuts,
)
from .base import (
    ZERO,
    FlankingPair,
    InterpolationConfig,
    Method,
    blend_cuts,
    conclude,
    involved_sets,
    lambda_core,
    levels_for,
    power_mean,
    safe_ratio,
)


def reference_distance(a1, a2, kind=ReferencePointKind.CORE_CENTRE) -> float:
    """Distance of two sets measured between their reference points."""
    return abs(representative_value(a2, kind) - representative_value(a1, kind))


def _dimension_lambda(target, a1, a2, kind, d):
    den = reference_distance(a1, a2, kind)
    num = abs(representative_value(target, kind) - representative_value(a1, kind))
    if den <= ZERO:
        if num <= ZERO:
            return 0.0
        raise DegenerateRuleError(f"input {d + 1}: flanking antecedents share a reference point")
    return num / den


def gm_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    rules = [pair.lower, pair.upper]
    for s in involved_sets(obs, rules):
        if len(characteristic_points(s)) > 4:
            raise MethodError(f"GM supports singleton, triangular and trapezoidal sets only ({s.label!r} is a polygon)")
    w = cfg.minkowski_w
    kind = cfg.reference_kind
    levels = levels_for(cfg, obs, rules)
    lambdas = [
        _dimension_lambda(o, a1, a2, kind, d)
        for d, (o, a1, a2) in enumerate(zip(obs, pair.lower.antecedents, pair.upper.antecedents))
    ]
    lam_out = lambda_core(pair, obs, cfg)

    ant_cuts = [
        monotone_projection(blend_cuts(a1, a2, lam, levels))
        for lam, a1, a2 in zip(lambdas, pair.lower.antecedents, pair.upper.antecedents)
    ]
    cons_cuts = [
        monotone_projection(blend_cuts(b1, b2, lam_out, levels))
        for b1, b2 in zip(pair.lower.consequents, pair.upper.consequents)
    ]

    left_ratio, right_ratio = [], []
    for i, lv in enumerate(levels):
        lefts, rights = [], []
        for d, o in enumerate(obs):
            oc, top = alpha_cut(o, lv), alpha_cut(o, 1.0)
            ac, atop = ant_cuts[d][i], ant_cuts[d][-1]
            lefts.append(safe_ratio(top.centre - oc.lower, atop.centre - ac.lower, f"input {d + 1} left spread"))
            rights.append(safe_ratio(oc.upper - top.centre, ac.upper - atop.centre, f"input {d + 1} right spread"))
        left_ratio.append(power_mean(lefts, w))
        right_ratio.append(power_mean(rights, w))

    cuts_per_output = []
    for cuts in cons_cuts:
        pivot = cuts[-1].centre
        cuts_per_output.append(
            [
                AlphaCut(c.level, pivot - (pivot - c.lower) * lr, pivot + (c.upper - pivot) * rr)
                for c, lr, rr in zip(cuts, left_ratio, right_ratio)
            ]
        )
    details = {
        "lambdas": tuple(lambdas),
        "lambda_consequent": lam_out,
        "interpolated_antecedents": tuple(set_from_alpha_cuts(c, f"A_i{d + 1}") for d, c in enumerate(ant_cuts)),
        "interpolated_consequents": tuple(set_from_alpha_cuts(c, "B_i") for c in cons_cuts),
    }
    return conclude(Method.GM, cuts_per_output, cfg, details=details, project=True)
