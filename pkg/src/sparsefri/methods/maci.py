"""Vector-description methods: MACI and IMUL."""

from __future__ import annotations

import numpy as np

from ..fuzzy import AlphaCut, alpha_cut, minkowski_distance
from .base import (
    ZERO,
    FlankingPair,
    InterpolationConfig,
    Method,
    blend_cut,
    blend_cuts,
    conclude,
    lambda_core,
    levels_for,
    power_mean,
)


def maci_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    """Blend the two consequents coordinate-wise with the core ratio.

    Left-flank and right-flank coordinates at every level are mixed as
    ``(1 - lam) * B1 + lam * B2``; any non-monotone coordinate sequence is
    removed by the monotone projection, so the result is always a valid set.
    """
    rules = [pair.lower, pair.upper]
    lam = lambda_core(pair, obs, cfg)
    levels = levels_for(cfg, obs, rules)
    cuts = [
        blend_cuts(b1, b2, lam, levels) for b1, b2 in zip(pair.lower.consequents, pair.upper.consequents)
    ]
    return conclude(Method.MACI, cuts, cfg, details={"lambda_core": lam}, project=True)


def _signed_lambda(target, p1, p2, w, fallback):
    den = minkowski_distance(p2, p1, w)
    if den <= ZERO:
        return fallback
    lam = minkowski_distance(target, p1, w) / den
    if np.dot(np.subtract(target, p1), np.subtract(p2, p1)) < 0:
        lam = -lam
    return min(1.0, max(0.0, lam))


def _relative_fuzziness(flank, support):
    if support <= ZERO:
        return 0.0
    return flank / support


def imul_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    """Core endpoints from per-side ratios, flanks from the blended consequent flanks.

    Each core end of the conclusion sits at the relative position of the
    matching observation core end between the antecedent core ends. Flank
    lengths are the core-ratio blend of the consequent flanks, widened by
    ``1 + |S'/U' - S/U|`` where ``S'/U'`` is the observation's flank length
    over its support width and ``S/U`` the same quantity for the blended
    antecedent.
    """
    rules = [pair.lower, pair.upper]
    w = cfg.minkowski_w
    lam = lambda_core(pair, obs, cfg)
    levels = levels_for(cfg, obs, rules)

    obs_core = [alpha_cut(o, 1.0) for o in obs]
    a1_core = [alpha_cut(a, 1.0) for a in pair.lower.antecedents]
    a2_core = [alpha_cut(a, 1.0) for a in pair.upper.antecedents]
    lam_left = _signed_lambda(
        [c.lower for c in obs_core], [c.lower for c in a1_core], [c.lower for c in a2_core], w, lam
    )
    lam_right = _signed_lambda(
        [c.upper for c in obs_core], [c.upper for c in a1_core], [c.upper for c in a2_core], w, lam
    )

    left_terms, right_terms = [], []
    for o, a1, a2 in zip(obs, pair.lower.antecedents, pair.upper.antecedents):
        o0, o1 = alpha_cut(o, 0.0), alpha_cut(o, 1.0)
        t0 = blend_cut(alpha_cut(a1, 0.0), alpha_cut(a2, 0.0), lam)
        t1 = blend_cut(alpha_cut(a1, 1.0), alpha_cut(a2, 1.0), lam)
        left_terms.append(
            _relative_fuzziness(o1.lower - o0.lower, o0.width) - _relative_fuzziness(t1.lower - t0.lower, t0.width)
        )
        right_terms.append(
            _relative_fuzziness(o0.upper - o1.upper, o0.width) - _relative_fuzziness(t0.upper - t1.upper, t0.width)
        )
    widen_left = 1.0 + power_mean(left_terms, w)
    widen_right = 1.0 + power_mean(right_terms, w)

    cuts_per_output = []
    for b1, b2 in zip(pair.lower.consequents, pair.upper.consequents):
        c1, c2 = alpha_cut(b1, 1.0), alpha_cut(b2, 1.0)
        lc = (1 - lam_left) * c1.lower + lam_left * c2.lower
        rc = (1 - lam_right) * c1.upper + lam_right * c2.upper
        if lc > rc:
            lc = rc = 0.5 * (lc + rc)
        cuts = []
        for lv in levels:
            k1, k2 = alpha_cut(b1, lv), alpha_cut(b2, lv)
            left = (1 - lam) * (c1.lower - k1.lower) + lam * (c2.lower - k2.lower)
            right = (1 - lam) * (k1.upper - c1.upper) + lam * (k2.upper - c2.upper)
            cuts.append(AlphaCut(lv, lc - left * widen_left, rc + right * widen_right))
        cuts_per_output.append(cuts)
    details = {"lambda_core": lam, "lambda_left": lam_left, "lambda_right": lam_right}
    return conclude(Method.IMUL, cuts_per_output, cfg, details=details, project=True)
