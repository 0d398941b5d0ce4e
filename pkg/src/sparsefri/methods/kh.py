"""Alpha-cut endpoint interpolation: KH, stabilised KH and VKK."""

from __future__ import annotations

import numpy as np

from ..errors import MethodError
from ..fuzzy import AlphaCut, alpha_cut, minkowski_distance
from .base import (
    FlankingPair,
    InterpolationConfig,
    Method,
    conclude,
    inverse_distance_weights,
    levels_for,
    power_mean,
    safe_ratio,
    sample_cuts,
)


def _refine_tol(cfg):
    return cfg.refine_tol if cfg.alpha_levels.kind == "breakpoints" else None


def _endpoint_cut_fn(rules, obs, cfg, power):
    n_out = len(rules[0].consequents)

    def cut_at(level):
        obs_cuts = [alpha_cut(o, level) for o in obs]
        obs_lo = [c.lower for c in obs_cuts]
        obs_hi = [c.upper for c in obs_cuts]
        d_lo, d_hi = [], []
        for r in rules:
            ants = [alpha_cut(a, level) for a in r.antecedents]
            d_lo.append(minkowski_distance(obs_lo, [c.lower for c in ants], cfg.minkowski_w) ** power)
            d_hi.append(minkowski_distance(obs_hi, [c.upper for c in ants], cfg.minkowski_w) ** power)
        w_lo, w_hi = inverse_distance_weights(d_lo), inverse_distance_weights(d_hi)
        out = []
        for k in range(n_out):
            cons = [alpha_cut(r.consequents[k], level) for r in rules]
            out.append(
                AlphaCut(
                    level,
                    float(np.dot(w_lo, [c.lower for c in cons])),
                    float(np.dot(w_hi, [c.upper for c in cons])),
                )
            )
        return out

    return cut_at


def kh_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    """Interpolate each cut endpoint of the conclusion from the two flanking rules.

    Every endpoint is the inverse-distance weighted mean of the consequent
    endpoints, the distance being that of the matching antecedent endpoint
    to the observation (combined over inputs in the Minkowski sense).
    """
    rules = [pair.lower, pair.upper]
    cut_fn = _endpoint_cut_fn(rules, obs, cfg, power=1)
    cuts = sample_cuts(cut_fn, levels_for(cfg, obs, rules), _refine_tol(cfg))
    return conclude(Method.KH, cuts, cfg, details={"rules": (pair.lower.index, pair.upper.index)})


def khstab_interpolate(rules, obs, cfg: InterpolationConfig):
    """Stabilised KH: weighted mean over all rules with weights ``1/d**N``, N the input count."""
    rules = list(rules)
    if len(rules) < 2:
        raise MethodError("KHstab requires >= 2 rules")
    power = len(obs)
    cut_fn = _endpoint_cut_fn(rules, obs, cfg, power=power)
    cuts = sample_cuts(cut_fn, levels_for(cfg, obs, rules), _refine_tol(cfg))
    return conclude(Method.KHSTAB, cuts, cfg, details={"rules": tuple(r.index for r in rules)})


def vkk_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    """Interpolate cut centres and widths instead of endpoints.

    Centres follow the KH weighting on centre distances. The conclusion width
    is the interpolated consequent width scaled by observation width over
    interpolated antecedent width.
    """
    rules = [pair.lower, pair.upper]
    n_out = len(rules[0].consequents)

    def cut_at(level):
        obs_cuts = [alpha_cut(o, level) for o in obs]
        ant_cuts = [[alpha_cut(a, level) for a in r.antecedents] for r in rules]
        dists = [
            minkowski_distance([c.centre for c in obs_cuts], [c.centre for c in ants], cfg.minkowski_w)
            for ants in ant_cuts
        ]
        weights = inverse_distance_weights(dists)
        ratios = []
        for d, oc in enumerate(obs_cuts):
            ant_width = float(np.dot(weights, [ants[d].width for ants in ant_cuts]))
            ratios.append(safe_ratio(oc.width, ant_width, f"input {d + 1} width"))
        ratio = power_mean(ratios, cfg.minkowski_w)
        out = []
        for k in range(n_out):
            cons = [alpha_cut(r.consequents[k], level) for r in rules]
            centre = float(np.dot(weights, [c.centre for c in cons]))
            width = float(np.dot(weights, [c.width for c in cons])) * ratio
            out.append(AlphaCut(level, centre - 0.5 * width, centre + 0.5 * width))
        return out

    cuts = sample_cuts(cut_at, levels_for(cfg, obs, rules), _refine_tol(cfg))
    return conclude(Method.VKK, cuts, cfg, details={"rules": (pair.lower.index, pair.upper.index)})
