"""Weight cone of the extension graph and its dual, over exact rationals.

Each edge (i, j) of the extension graph contributes the weight vector
e_i - e_j.  The cone spanned by these weights lives in the dual of the
rank-weighted trace-free subalgebra; membership of the negated moment weight
in that cone (interior / boundary / outside) reproduces the slope trichotomy.
Extreme rays of the dual cone are computed exactly and are always two-valued:
negative on one block, positive on a predecessor-closed complement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .epspoly import EpsPoly, Sign, lex_sign
from .instance import Instance, ValidationError, _connected
from .slopes import SubsheafIndex, is_predecessor_closed, slope_poly

WeightVector = tuple[int, ...]


class DegenerateCone(ValidationError):
    pass


@dataclass(frozen=True)
class DualGenerator:
    """Extreme ray of the dual cone, normalized to its two-block values.

    coords is negative on negative_part and positive on positive_part, with
    the positive value equal to 1 over the total rank of positive_part (so
    the negative value is -1 over the total rank of negative_part).
    """

    coords: tuple[Fraction, ...]
    negative_part: tuple[int, ...]
    positive_part: tuple[int, ...]

    @property
    def value_positive(self) -> Fraction:
        return self.coords[self.positive_part[0] - 1]

    @property
    def value_negative(self) -> Fraction:
        return self.coords[self.negative_part[0] - 1]


class ConePlacement(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class ConePosition:
    placement: ConePlacement
    certificate: DualGenerator | None


def edge_weight(edge: tuple[int, int], ell: int) -> WeightVector:
    i, j = edge
    v = [0] * ell
    v[i - 1] = 1
    v[j - 1] = -1
    return tuple(v)


def weight_vectors(inst: Instance) -> list[WeightVector]:
    """One weight vector per edge, in edge-sorted order."""
    return [edge_weight(e, inst.ell) for e in inst.quiver.edges]


def _two_block_components(
    ell: int, tight: Sequence[tuple[int, int]]
) -> tuple[frozenset[int], frozenset[int]] | None:
    """The two connected components of the tight-edge graph, if exactly two."""
    parent = list(range(ell + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in tight:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, set[int]] = {}
    for v in range(1, ell + 1):
        groups.setdefault(find(v), set()).add(v)
    if len(groups) != 2:
        return None
    a, b = groups.values()
    return frozenset(a), frozenset(b)


def dual_generators_core(
    ranks: Sequence[int], edges: Sequence[tuple[int, int]]
) -> list[DualGenerator]:
    """Extreme rays of the dual cone for a connected edge set.

    Every extreme ray is tight on a spanning two-component forest of edges, so
    enumerating (ell - 2)-subsets of edges, solving the tight system together
    with rank-weighted trace zero, and keeping the solutions that satisfy the
    remaining inequalities is exhaustive.  Duplicate rays from different
    forests collapse on their positive block.
    """
    ell = len(ranks)
    if ell == 1:
        return []
    if not _connected(ell, edges):
        raise DegenerateCone(
            "dual cone undefined: the extension graph is disconnected"
        )
    found: dict[tuple[int, ...], DualGenerator] = {}
    for tight in combinations(edges, ell - 2):
        blocks = _two_block_components(ell, tight)
        if blocks is None:
            continue
        block_a, block_b = blocks
        rank_a = sum(ranks[i - 1] for i in block_a)
        rank_b = sum(ranks[i - 1] for i in block_b)
        for val_a, val_b in (
            (Fraction(rank_b), Fraction(-rank_a)),
            (Fraction(-rank_b), Fraction(rank_a)),
        ):
            coords = tuple(
                val_a if v in block_a else val_b for v in range(1, ell + 1)
            )
            if all(coords[i - 1] - coords[j - 1] >= 0 for i, j in edges):
                pos_block = block_a if val_a > 0 else block_b
                neg_block = block_b if val_a > 0 else block_a
                pos = tuple(sorted(pos_block))
                neg = tuple(sorted(neg_block))
                if pos in found:
                    break
                rank_pos = sum(ranks[i - 1] for i in pos)
                rank_neg = sum(ranks[i - 1] for i in neg)
                norm = tuple(
                    Fraction(1, rank_pos) if v in pos_block else Fraction(-1, rank_neg)
                    for v in range(1, ell + 1)
                )
                found[pos] = DualGenerator(norm, neg, pos)
                break
    return [found[key] for key in sorted(found)]


def dual_cone_generators(inst: Instance) -> list[DualGenerator]:
    """Complete duplicate-free set of extreme rays of the dual cone."""
    gens = dual_generators_core(inst.ranks, inst.quiver.edges)
    for g in gens:
        assert is_predecessor_closed(g.positive_part, inst.quiver.edges)
    return gens


def moment_weight(inst: Instance) -> list[EpsPoly]:
    """Trace-free weight vector: rank times slope defect per component."""
    total = slope_poly(inst)
    return [
        (slope_poly(inst, (i,)) - total) * inst.component(i).rank
        for i in range(1, inst.ell + 1)
    ]


def pairing(weight: Sequence[EpsPoly], generator: DualGenerator) -> EpsPoly:
    acc = weight[0] * generator.coords[0]
    for w, a in zip(weight[1:], generator.coords[1:]):
        acc = acc + w * a
    return acc


def cone_position(inst: Instance) -> ConePosition:
    """Classify the negated moment weight against the weight cone.

    INTERIOR iff every generator pairs negative for small parameters;
    BOUNDARY when no pairing is positive but some vanishes identically;
    OUTSIDE otherwise.  The certificate is the first generator (sorted by
    positive block) achieving the violating, respectively tight, sign.
    """
    gens = dual_cone_generators(inst)
    weight = moment_weight(inst)
    tight: DualGenerator | None = None
    for g in gens:
        s = lex_sign(pairing(weight, g))
        if s == Sign.POSITIVE:
            return ConePosition(ConePlacement.OUTSIDE, g)
        if s == Sign.ZERO and tight is None:
            tight = g
    if tight is not None:
        return ConePosition(ConePlacement.BOUNDARY, tight)
    return ConePosition(ConePlacement.INTERIOR, None)


def subsheaf_of_generator(inst: Instance, generator: DualGenerator) -> SubsheafIndex:
    """Candidate subbundle indexed by the positive block of a generator."""
    members = tuple(i for i in range(1, inst.ell + 1) if generator.coords[i - 1] > 0)
    assert is_predecessor_closed(members, inst.quiver.edges)
    return members


def in_dual_cone(vector: Sequence[Fraction], ranks: Sequence[int],
                 edges: Sequence[tuple[int, int]]) -> bool:
    """Membership test: rank-weighted trace zero and all edge pairings >= 0."""
    if sum(r * v for r, v in zip(ranks, vector)) != 0:
        return False
    return all(vector[i - 1] - vector[j - 1] >= 0 for i, j in edges)
