"""Random two-rule systems for the method property tests."""

import numpy as np

from sparsefri import PiecewiseLinearFuzzySet, RuleView

MUS = {1: (1.0,), 3: (0.0, 1.0, 0.0), 4: (0.0, 1.0, 1.0, 0.0)}


def make_set(points, label=""):
    return PiecewiseLinearFuzzySet.from_breakpoints(points, MUS[len(points)], label)


def shape(rng, k, start=None, scale=10.0):
    """Sorted characteristic points with strictly positive gaps."""
    start = rng.uniform(-50, 50) if start is None else start
    gaps = rng.uniform(0.1, 1.0, size=k - 1) * scale
    return np.concatenate([[start], start + np.cumsum(gaps)])


def above(rng, p, spread=10.0):
    """Sorted points q with q_i >= p_i for every i."""
    return np.sort(p + rng.uniform(0.5, 1.0) * spread * 3 + rng.uniform(0, spread, size=len(p)))


def between(rng, p, q):
    """Sorted points v with p_i <= v_i <= q_i (sorting keeps the bounds)."""
    return np.sort(p + rng.uniform(0, 1, size=len(p)) * (q - p))


def random_system(rng, n_inputs=1, k=3, consequents="monotone"):
    """Two rules plus a surrounded observation.

    ``consequents`` is ``"identity"`` (B_i = A_i, single input), ``"monotone"``
    (B2 lies to the right of B1 point by point) or ``"free"`` (independent).
    Returns ``(rules, observation)``.
    """
    a1, a2, obs = [], [], []
    for _ in range(n_inputs):
        p = shape(rng, k)
        q = above(rng, p)
        a1.append(p)
        a2.append(q)
        obs.append(between(rng, p, q))
    if consequents == "identity":
        b1, b2 = a1[0], a2[0]
    elif consequents == "monotone":
        b1 = shape(rng, k)
        b2 = above(rng, b1)
    else:
        b1 = shape(rng, k, scale=rng.uniform(0.2, 20))
        b2 = shape(rng, k, start=b1[0] + rng.uniform(-5, 40), scale=rng.uniform(0.2, 20))
    rules = [
        RuleView(tuple(make_set(p, f"A1_{d + 1}") for d, p in enumerate(a1)), (make_set(b1, "B1"),), 1.0, 1),
        RuleView(tuple(make_set(q, f"A2_{d + 1}") for d, q in enumerate(a2)), (make_set(b2, "B2"),), 1.0, 2),
    ]
    return rules, tuple(make_set(v, f"A*_{d + 1}") for d, v in enumerate(obs))
