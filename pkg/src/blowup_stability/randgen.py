"""Seeded random instances for tests and the acceptance corpus.

The seed defaults to the BLOWUP_STABILITY_SEED environment variable (0 when
unset) so that every harness run sees the same corpus.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Sequence

from .epspoly import EpsPoly
from .instance import Ambient, GradedComponent, Instance, Quiver, validate_instance
from .slopes import closed_subsets

SEED_ENV = "BLOWUP_STABILITY_SEED"


def harness_seed(default: int = 0) -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else default


def _random_quiver(rng: random.Random, ell: int) -> tuple[tuple[int, int], ...]:
    edges = set()
    for k in range(2, ell + 1):
        edges.add((rng.randint(1, k - 1), k))
    for i in range(1, ell + 1):
        for j in range(i + 1, ell + 1):
            if (i, j) not in edges and rng.random() < 0.25:
                edges.add((i, j))
    return tuple(sorted(edges))


def _force_tie(
    rng: random.Random,
    coeff_rows: list[list[Fraction]],
    ranks: Sequence[int],
    edges: Sequence[tuple[int, int]],
) -> None:
    """Rewrite one component so a random candidate ties the total slope exactly."""
    ell = len(ranks)
    candidates = closed_subsets(ell, edges)
    if not candidates:
        return
    subset = rng.choice(candidates)
    target = rng.choice(subset)
    rank_sub = sum(ranks[i - 1] for i in subset)
    rank_all = sum(ranks)
    degree = len(coeff_rows[0]) - 1
    for k in range(1, degree + 1):
        inside = sum(coeff_rows[i - 1][k] for i in subset if i != target)
        everyone = sum(coeff_rows[i - 1][k] for i in range(1, ell + 1) if i != target)
        coeff_rows[target - 1][k] = (rank_sub * everyone - rank_all * inside) / (
            rank_all - rank_sub
        )


def random_instance(
    rng: random.Random,
    *,
    max_components: int = 6,
    max_dim: int = 5,
    unit_ranks: bool = False,
    tie_probability: float = 0.35,
    with_restrictions: bool = False,
) -> Instance:
    """One validated random instance with equal base slopes.

    With probability tie_probability a candidate subset is forced to tie the
    total slope at every order, so boundary cases appear in the corpus.
    """
    n = rng.randint(2, max_dim)
    m = rng.randint(0, n - 2)
    ell = rng.choice([1] + [v for v in range(2, max_components + 1) for _ in range(3)])
    ranks = [1 if unit_ranks else rng.randint(1, 3) for _ in range(ell)]
    edges = _random_quiver(rng, ell) if ell > 1 else ()

    base_slope = Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3]))
    rows = [
        [base_slope * ranks[i]]
        + [
            Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3, 4]))
            for _ in range(n - 1)
        ]
        for i in range(ell)
    ]
    if ell > 1 and rng.random() < tie_probability:
        _force_tie(rng, rows, ranks, edges)

    components = []
    for i in range(ell):
        restriction = None
        if with_restrictions and m >= 1:
            from math import comb

            restriction = -rows[i][n - m] / comb(n - 1, m - 1)
        components.append(
            GradedComponent(
                name=f"G{i + 1}",
                rank=ranks[i],
                deg_coeffs=EpsPoly(rows[i], max_degree=n - 1),
                restriction_degree=restriction,
            )
        )
    inst = Instance(Ambient(n, m), tuple(components), Quiver(edges))
    return validate_instance(inst)


def corpus(count: int, seed: int | None = None, **kwargs) -> list[Instance]:
    rng = random.Random(harness_seed() if seed is None else seed)
    return [random_instance(rng, **kwargs) for _ in range(count)]
