"""Conservation of relative fuzziness (CRF)."""

from __future__ import annotations

from ..fuzzy import AlphaCut, alpha_cut
from .base import (
    FlankingPair,
    InterpolationConfig,
    Method,
    blend_cut,
    conclude,
    lambda_core,
    levels_for,
    power_mean,
    safe_ratio,
)


def _flanks(cut, core):
    return core.lower - cut.lower, cut.upper - core.upper


def crf_interpolate(pair: FlankingPair, obs, cfg: InterpolationConfig):
    """Place the conclusion core by the core ratio and conserve relative fuzziness.

    The core centre is interpolated between the consequent core centres with
    the same ratio that places the observation between the antecedents; the
    core length and each flank are the interpolated consequent quantities
    scaled by observation over interpolated antecedent, so that the
    observation's fuzziness relative to the rule antecedents is carried over
    to the conclusion.
    """
    rules = [pair.lower, pair.upper]
    w = cfg.minkowski_w
    lam = lambda_core(pair, obs, cfg)
    levels = levels_for(cfg, obs, rules)
    dims = list(zip(obs, pair.lower.antecedents, pair.upper.antecedents))

    obs_cores = [alpha_cut(o, 1.0) for o, _, _ in dims]
    ant_cores = [blend_cut(alpha_cut(a1, 1.0), alpha_cut(a2, 1.0), lam) for _, a1, a2 in dims]
    core_ratio = power_mean(
        [safe_ratio(oc.width, ac.width, f"input {d + 1} core length") for d, (oc, ac) in enumerate(zip(obs_cores, ant_cores))],
        w,
    )

    left_ratio, right_ratio = {}, {}
    for lv in levels:
        lefts, rights = [], []
        for d, (o, a1, a2) in enumerate(dims):
            ol, orr = _flanks(alpha_cut(o, lv), obs_cores[d])
            ac = blend_cut(alpha_cut(a1, lv), alpha_cut(a2, lv), lam)
            al, ar = _flanks(ac, ant_cores[d])
            lefts.append(safe_ratio(ol, al, f"input {d + 1} left fuzziness"))
            rights.append(safe_ratio(orr, ar, f"input {d + 1} right fuzziness"))
        left_ratio[lv] = power_mean(lefts, w)
        right_ratio[lv] = power_mean(rights, w)

    cuts_per_output = []
    for b1, b2 in zip(pair.lower.consequents, pair.upper.consequents):
        core = blend_cut(alpha_cut(b1, 1.0), alpha_cut(b2, 1.0), lam)
        half = 0.5 * core.width * core_ratio
        lc, rc = core.centre - half, core.centre + half
        cuts = []
        for lv in levels:
            bl, br = _flanks(blend_cut(alpha_cut(b1, lv), alpha_cut(b2, lv), lam), core)
            cuts.append(AlphaCut(lv, lc - bl * left_ratio[lv], rc + br * right_ratio[lv]))
        cuts_per_output.append(cuts)
    return conclude(Method.CRF, cuts_per_output, cfg, details={"lambda_core": lam})
