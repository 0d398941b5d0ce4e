"""Top-level evaluation of a rule base against one or many observations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import DimensionMismatchError, FriError, MethodError
from ..fisformat import FisDocument, ObsDocument, parse_obs, to_fuzzy_set
from ..fuzzy import TOL, PiecewiseLinearFuzzySet
from .base import Conclusion, InterpolationConfig, Method, RuleView, select_flanking_pair
from .crf import crf_interpolate
from .gm import gm_interpolate
from .kh import kh_interpolate, khstab_interpolate, vkk_interpolate
from .maci import imul_interpolate, maci_interpolate
from .scalemove import scalemove_interpolate

PAIR_METHODS = {
    Method.KH: kh_interpolate,
    Method.VKK: vkk_interpolate,
    Method.MACI: maci_interpolate,
    Method.CRF: crf_interpolate,
    Method.IMUL: imul_interpolate,
    Method.GM: gm_interpolate,
    Method.SCALEMOVE: scalemove_interpolate,
}


def rule_views(fis: FisDocument) -> list[RuleView]:
    """Resolve every rule's MF indices into fuzzy sets.

    Raises :class:`MethodError` for a rule that leaves an input unreferenced
    (index 0), since every interpolation method needs full antecedents.
    """
    views = []
    for n, rule in enumerate(fis.rules, start=1):
        if 0 in rule.antecedent_indices or 0 in rule.consequent_indices:
            raise MethodError(f"rule {n} leaves a variable unreferenced (index 0); interpolation needs full rules")
        ants = tuple(to_fuzzy_set(fis.inputs[d].mfs[i - 1]) for d, i in enumerate(rule.antecedent_indices))
        cons = tuple(to_fuzzy_set(fis.outputs[d].mfs[i - 1]) for d, i in enumerate(rule.consequent_indices))
        views.append(RuleView(ants, cons, rule.weight, n))
    return views


def observation_sets(obs) -> tuple[PiecewiseLinearFuzzySet, ...]:
    if isinstance(obs, ObsDocument):
        return tuple(to_fuzzy_set(d) for d in obs.observations)
    return tuple(obs)


def interpolate(rules: Sequence[RuleView], observation, cfg: InterpolationConfig | None = None) -> Conclusion:
    """Run the configured method on resolved rules and one observation (a set per input)."""
    cfg = cfg or InterpolationConfig()
    observation = tuple(observation)
    for r in rules:
        if len(r.antecedents) != len(observation):
            raise DimensionMismatchError(
                f"dimension mismatch: observation has {len(observation)} inputs, rule {r.index} has {len(r.antecedents)}"
            )
    try:
        if cfg.method is Method.KHSTAB:
            return khstab_interpolate(rules, observation, cfg)
        pair = select_flanking_pair(rules, observation, cfg)
        return PAIR_METHODS[cfg.method](pair, observation, cfg)
    except MethodError as exc:
        raise type(exc)(f"{cfg.method}: {exc}") from exc


def evaluate(fis: FisDocument, obs, cfg: InterpolationConfig | None = None) -> Conclusion:
    """Interpolate the conclusion of ``fis`` for one observation.

    ``obs`` is an :class:`ObsDocument` or a sequence of fuzzy sets, one per
    input. KHstab uses every rule; all other methods first select the two
    rules flanking the observation.
    """
    cfg = cfg or InterpolationConfig()
    observation = observation_sets(obs)
    if len(observation) != fis.num_inputs:
        raise DimensionMismatchError(
            f"dimension mismatch: observation has {len(observation)} inputs, rule base expects {fis.num_inputs}"
        )
    rules = rule_views(fis)
    notes = [f"rule {r.index} has weight {r.weight:g}; only weight 1 is supported" for r in rules if r.weight != 1.0]
    result = interpolate(rules, observation, cfg)
    for k, (value, var) in enumerate(zip(result.crisp, fis.outputs)):
        lo, hi = var.range
        if not lo - TOL <= value <= hi + TOL:
            notes.append(f"output {k + 1}: crisp value {value:g} outside range [{lo:g} {hi:g}]")
    return result.with_diagnostics(notes) if notes else result


@dataclass(frozen=True)
class RowError:
    """Stands in for the conclusion of a batch row that failed."""

    index: int
    error: Exception

    @property
    def message(self) -> str:
        return str(self.error)


def evaluate_batch(
    fis: FisDocument, observations: Sequence, cfg: InterpolationConfig | None = None
) -> list[Conclusion | RowError]:
    """Evaluate each row independently; failures become :class:`RowError` entries.

    A row may be an :class:`ObsDocument`, OBS text, or a sequence of fuzzy sets.
    """
    results: list[Conclusion | RowError] = []
    for i, row in enumerate(observations):
        try:
            if isinstance(row, str):
                row = parse_obs(row)
            results.append(evaluate(fis, row, cfg))
        except (FriError, ValueError) as exc:
            results.append(RowError(i, exc))
    return results
