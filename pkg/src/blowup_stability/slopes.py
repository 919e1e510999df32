"""Slope comparisons over the destabilizing candidates of an instance.

The candidates are the predecessor-closed subsets of the extension graph:
exactly the index sets whose direct sum of graded pieces is preserved by the
extension classes, hence a holomorphic subbundle of equal base slope.  The
verdict is the strict / tied / violated trichotomy of the small-parameter
slope inequality over all of them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .epspoly import (
    EpsPoly,
    Interval,
    Sign,
    lex_sign,
    positive_root_bound,
)
from .instance import Instance

SubsheafIndex = tuple[int, ...]


class VerdictKind(enum.Enum):
    STABLE = "Stable"
    SEMISTABLE = "Semistable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class Verdict:
    """Trichotomy outcome with witness and validity range.

    witness: a destabilizing subset for UNSTABLE, an equal-slope subset for
    SEMISTABLE, None for STABLE.  epsilon_threshold brackets the smallest
    parameter value at which some slope difference changes sign; the verdict
    holds on (0, epsilon_threshold.lo).  None means no sign change on (0, 1].
    """

    kind: VerdictKind
    witness: SubsheafIndex | None = None
    epsilon_threshold: Interval | None = None


@dataclass(frozen=True)
class Inconclusive:
    """The two-term sufficient test failed; nothing is decided.

    blocking is the first candidate (lexicographically) whose restriction
    slope is not strictly larger than that of the whole bundle.
    """

    blocking: SubsheafIndex


def is_predecessor_closed(members: Iterable[int], edges: Sequence[tuple[int, int]]) -> bool:
    s = set(members)
    return all(i in s for i, j in edges if j in s)


def closed_subsets(ell: int, edges: Sequence[tuple[int, int]]) -> list[SubsheafIndex]:
    """All nonempty proper predecessor-closed subsets of {1..ell}, sorted."""
    out: list[SubsheafIndex] = []
    verts = range(1, ell + 1)
    for size in range(1, ell):
        for members in combinations(verts, size):
            if is_predecessor_closed(members, edges):
                out.append(members)
    return out


def enumerate_subsheaves(inst: Instance) -> list[SubsheafIndex]:
    """Index sets of the destabilizing candidate subbundles, in sorted order."""
    return closed_subsets(inst.ell, inst.quiver.edges)


def degree_poly(inst: Instance, members: SubsheafIndex | None = None) -> EpsPoly:
    indices = members if members is not None else tuple(range(1, inst.ell + 1))
    acc = inst.component(indices[0]).deg_coeffs
    for i in indices[1:]:
        acc = acc + inst.component(i).deg_coeffs
    return acc


def slope_poly(inst: Instance, members: SubsheafIndex | None = None) -> EpsPoly:
    """Slope expansion (degree over rank) of a candidate, or of the whole bundle."""
    indices = members if members is not None else tuple(range(1, inst.ell + 1))
    rank = sum(inst.component(i).rank for i in indices)
    return degree_poly(inst, indices) / rank


def _threshold(differences: Iterable[EpsPoly]) -> Interval | None:
    """Bracket of the smallest positive sign change among the differences."""
    best: Interval | None = None
    for diff in differences:
        if diff.is_zero:
            continue
        bound = positive_root_bound(diff)
        if bound is not None and (best is None or bound.lo < best.lo):
            best = bound
    return best


def decide_stability(
    inst: Instance, *, candidates: Sequence[SubsheafIndex] | None = None
) -> Verdict:
    """Trichotomy over all candidates (or a supplied subset of them).

    STABLE when every slope difference is positive for small parameters,
    SEMISTABLE when none is negative and at least one vanishes identically,
    UNSTABLE otherwise.  Witnesses break ties by lexicographically smallest
    index tuple.
    """
    if candidates is None:
        candidates = enumerate_subsheaves(inst)
    if not candidates:
        return Verdict(VerdictKind.STABLE, None, None)
    total = slope_poly(inst)
    diffs = [(members, total - slope_poly(inst, members)) for members in candidates]
    negatives = sorted(m for m, d in diffs if lex_sign(d) == Sign.NEGATIVE)
    zeros = sorted(m for m, d in diffs if lex_sign(d) == Sign.ZERO)
    threshold = _threshold(d for _, d in diffs)
    if negatives:
        return Verdict(VerdictKind.UNSTABLE, negatives[0], threshold)
    if zeros:
        return Verdict(VerdictKind.SEMISTABLE, zeros[0], threshold)
    return Verdict(VerdictKind.STABLE, None, threshold)


def representative_epsilon(
    verdict: Verdict, cap: Fraction = Fraction(1, 2)
) -> Fraction:
    """A parameter value strictly below every sign change of the verdict."""
    lo = verdict.epsilon_threshold.lo if verdict.epsilon_threshold else Fraction(1)
    return min(lo, cap) / 2


def two_term_decide(inst: Instance) -> Verdict | Inconclusive:
    """Sufficient test from restriction slopes alone.

    STABLE when the restriction slope of the whole bundle is strictly below
    that of every candidate (exact rationals); otherwise Inconclusive, since
    ties or violations at this order can be overturned at higher order.
    """
    from .instance import MissingRestrictionData, PointCenter

    if inst.ambient.m == 0:
        raise PointCenter("the two-term test needs a positive-dimensional center")
    for c in inst.components:
        if c.restriction_degree is None:
            raise MissingRestrictionData(
                f"component {c.name!r} carries no restriction degree"
            )

    def restriction_slope(indices: Sequence[int]) -> Fraction:
        deg = sum(
            (inst.component(i).restriction_degree for i in indices), Fraction(0)
        )
        rank = sum(inst.component(i).rank for i in indices)
        return deg / rank

    total = restriction_slope(tuple(range(1, inst.ell + 1)))
    failing = sorted(
        members
        for members in enumerate_subsheaves(inst)
        if not total < restriction_slope(members)
    )
    if failing:
        return Inconclusive(failing[0])
    return Verdict(VerdictKind.STABLE, None, None)


def seesaw_check(inst: Instance, members: SubsheafIndex) -> bool:
    """Rank-weighted slope additivity between a candidate and its quotient.

    Verifies that sub and quotient slopes average (rank-weighted) to the total
    slope as an exact polynomial identity, and that the total-minus-sub and
    quotient-minus-total differences carry the same small-parameter sign.
    """
    complement = tuple(i for i in range(1, inst.ell + 1) if i not in members)
    if not complement:
        raise ValueError("candidate must be a proper subset")
    rank_sub = sum(inst.component(i).rank for i in members)
    rank_quot = sum(inst.component(i).rank for i in complement)
    mu_sub = slope_poly(inst, members)
    mu_quot = slope_poly(inst, complement)
    mu_total = slope_poly(inst)
    additivity = (
        mu_sub * rank_sub + mu_quot * rank_quot == mu_total * (rank_sub + rank_quot)
    )
    same_sign = lex_sign(mu_total - mu_sub) == lex_sign(mu_quot - mu_total)
    return additivity and same_sign
