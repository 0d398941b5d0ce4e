"""Scale and move transformation based interpolation (ScaleMove).

Sets are handled through their characteristic points: 3 for triangles,
4 for trapezoids (a triangle is lifted to a trapezoid with a one-point core
when it meets trapezoids; a singleton repeats its point). The
representative value ``Rep`` of a set is the mean of those points.

Step 1 builds a central rule ``A0 -> B0`` whose points are the blend of the
flanking rules at ``lambda_rep``, the observation's relative Rep position.
Step 2 finds the scale rate(s) and move rate that turn ``A0`` into the
observation, and applies the same rates to ``B0``. Both transformations keep
Rep fixed, so ``Rep(B*) == Rep(B0)``.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateRuleError, MethodError, NotSurroundedError
from ..fuzzy import TOL, PiecewiseLinearFuzzySet, alpha_cut, characteristic_points
from .base import ZERO, FlankingPair, InterpolationConfig, Method, conclude_sets, involved_sets, safe_ratio


def _shape_of(fset):
    pts = characteristic_points(fset)
    if len(pts) == 1:
        return "singleton"
    if len(pts) > 4 or any(TOL < mu < 1 - TOL for _, mu in pts):
        raise MethodError(f"ScaleMove supports triangular and trapezoidal sets only ({fset.label!r})")
    core = alpha_cut(fset, 1.0)
    return "triangle" if core.width <= TOL else "trapezoid"


def _vector(fset, k):
    support, core = alpha_cut(fset, 0.0), alpha_cut(fset, 1.0)
    if k == 1:
        return np.array([core.centre])
    if k == 3:
        return np.array([support.lower, core.centre, support.upper])
    return np.array([support.lower, core.lower, core.upper, support.upper])


def _to_set(vec, label):
    if len(vec) == 1:
        return PiecewiseLinearFuzzySet.singleton(vec[0], label)
    if len(vec) == 3:
        return PiecewiseLinearFuzzySet.from_breakpoints(vec, [0.0, 1.0, 0.0], label)
    return PiecewiseLinearFuzzySet.from_breakpoints(vec, [0.0, 1.0, 1.0, 0.0], label)


def lambda_rep(target, a1, a2) -> float:
    """Relative position of ``Rep(target)`` between ``Rep(a1)`` and ``Rep(a2)``."""
    r0, r1, r2 = (float(np.mean(v)) for v in (a1, a2, target))
    den = abs(r1 - r0)
    num = abs(r2 - r0)
    if den <= ZERO:
        if num <= ZERO:
            return 0.0
        raise DegenerateRuleError("flanking antecedents share a representative value")
    return num / den


def _triangle_rates(a0, target):
    rep = a0.mean()
    scale = safe_ratio(target[2] - target[0], a0[2] - a0[0], "support scale")
    scaled = rep + scale * (a0 - rep)
    shift = target[0] - scaled[0]
    if shift >= 0:
        room = scaled[1] - scaled[0]
    else:
        room = scaled[2] - scaled[1]
    move = 0.0 if abs(shift) <= ZERO else 3.0 * shift / room if room > ZERO else 0.0
    return (scale,), move


def _apply_triangle(b0, scales, move):
    rep = b0.mean()
    scaled = rep + scales[0] * (b0 - rep)
    room = scaled[1] - scaled[0] if move >= 0 else scaled[2] - scaled[1]
    shift = move * room / 3.0
    return scaled + shift * np.array([1.0, -2.0, 1.0])


def _trap_params(v):
    rep = v.mean()
    bottom, top = v[3] - v[0], v[2] - v[1]
    skew = 0.5 * (v[1] + v[2]) - 0.5 * (v[0] + v[3])
    slack = 0.5 * (bottom - top)
    return rep, bottom, top, (skew / slack if slack > ZERO else 0.0)


def _trap_from_params(rep, bottom, top, rel_skew):
    skew = rel_skew * 0.5 * (bottom - top)
    bc, tc = rep - 0.5 * skew, rep + 0.5 * skew
    return np.array([bc - 0.5 * bottom, tc - 0.5 * top, tc + 0.5 * top, bc + 0.5 * bottom])


def _trapezoid_rates(a0, target):
    _, b0, t0, k0 = _trap_params(a0)
    _, b1, t1, k1 = _trap_params(target)
    scale_bottom = safe_ratio(b1, b0, "support scale")
    scale_top = safe_ratio(t1, t0, "core scale")
    delta = k1 - k0
    room = 1.0 - k0 if delta > 0 else 1.0 + k0
    move = delta / room if abs(delta) > ZERO and room > ZERO else 0.0
    return (scale_bottom, scale_top), move


def _apply_trapezoid(b0, scales, move, notes):
    rep, bottom, top, rel = _trap_params(b0)
    bottom, top = bottom * scales[0], top * scales[1]
    if top > bottom:
        notes.append("ScaleMove: conclusion core wider than its support, core clipped to support")
        top = bottom
    rel = rel + move * (1.0 - rel) if move >= 0 else rel + move * (1.0 + rel)
    return _trap_from_params(rep, bottom, top, rel)


def scalemove_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    rules = [pair.lower, pair.upper]
    shapes = {_shape_of(s) for s in involved_sets(obs, rules)}
    k = 4 if "trapezoid" in shapes else 3 if "triangle" in shapes else 1
    notes: list[str] = []

    lambdas, scale_rows, moves = [], [], []
    for o, a1, a2 in zip(obs, pair.lower.antecedents, pair.upper.antecedents):
        v1, v2, vt = _vector(a1, k), _vector(a2, k), _vector(o, k)
        lam = lambda_rep(vt, v1, v2)
        if lam > 1 + TOL:
            raise NotSurroundedError(f"lambda_rep = {lam:g} lies outside [0, 1]")
        a0 = (1 - lam) * v1 + lam * v2
        if k == 3:
            scales, move = _triangle_rates(a0, vt)
        elif k == 4:
            scales, move = _trapezoid_rates(a0, vt)
        else:
            scales, move = (), 0.0
        lambdas.append(lam)
        scale_rows.append(scales)
        moves.append(move)

    lam_out = float(np.mean(lambdas))
    scales = tuple(np.mean(scale_rows, axis=0)) if k > 1 else ()
    move = float(np.mean(moves))
    conclusions = []
    for b1, b2 in zip(pair.lower.consequents, pair.upper.consequents):
        b0 = (1 - lam_out) * _vector(b1, k) + lam_out * _vector(b2, k)
        if k == 3:
            vec = _apply_triangle(b0, scales, move)
        elif k == 4:
            vec = _apply_trapezoid(b0, scales, move, notes)
        else:
            vec = b0
        label = "B*" if len(pair.lower.consequents) == 1 else f"B*_{len(conclusions) + 1}"
        conclusions.append(_to_set(vec, label))
    details = {
        "lambda_rep": lam_out,
        "lambdas": tuple(lambdas),
        "scale": scales,
        "move": move,
        "points": k,
    }
    return conclude_sets(Method.SCALEMOVE, conclusions, cfg, notes, details)
