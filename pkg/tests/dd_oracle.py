"""Independent double-description oracle for dual-cone tests.

Incremental halfspace insertion with lineality handling, entirely over exact
rationals.  Deliberately a different algorithm from the facet-subset
enumeration in the package: results must agree up to positive ray scaling.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vec = tuple[Fraction, ...]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Sequence[Fraction]) -> Vec:
    """Rescale by a positive factor so the first nonzero entry has magnitude 1."""
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        return tuple(v)
    return tuple(x / abs(lead) for x in v)


def _rank(rows: list[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    mat = [list(row) for row in rows]
    rank, ncols = 0, len(mat[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        mat[rank] = [x / lead for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def double_description(constraints: list[Vec], dim: int) -> list[Vec]:
    """Extreme rays of {x : c.x >= 0 for all c}, assumed pointed at the end.

    Rays are pruned after every insertion by the intrinsic extremality test
    (tight constraints of rank dim - lineality - 1), so minimality never
    depends on adjacency bookkeeping.
    """
    lineality: list[Vec] = [
        tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))
        for i in range(dim)
    ]
    rays: list[Vec] = []
    processed: list[Vec] = []
    for a in constraints:
        hit = next((l for l in lineality if _dot(a, l) != 0), None)
        if hit is not None:
            pivot = _dot(a, hit)
            lineality = [
                tuple(x - _dot(a, l) / pivot * h for x, h in zip(l, hit))
                for l in lineality
                if l is not hit
            ]
            rays = [
                tuple(x - _dot(a, r) / pivot * h for x, h in zip(r, hit))
                for r in rays
            ]
            rays.append(hit if pivot > 0 else tuple(-x for x in hit))
        else:
            pos = [r for r in rays if _dot(a, r) > 0]
            zero = [r for r in rays if _dot(a, r) == 0]
            neg = [r for r in rays if _dot(a, r) < 0]
            combos = []
            for rp in pos:
                for rn in neg:
                    lam, mu = _dot(a, rp), -_dot(a, rn)
                    combo = tuple(mu * x + lam * y for x, y in zip(rp, rn))
                    if any(x != 0 for x in combo):
                        combos.append(combo)
            rays = pos + zero + combos
        processed.append(a)
        target = dim - len(lineality) - 1
        pruned: list[Vec] = []
        seen: set[Vec] = set()
        for r in rays:
            key = _primitive(r)
            if key in seen:
                continue
            tight = [c for c in processed if _dot(c, r) == 0]
            if _rank(tight) == target:
                seen.add(key)
                pruned.append(key)
        rays = pruned
    assert not lineality, "cone not pointed: lineality survives"
    return sorted(rays)


def dual_rays_oracle(
    ranks: Sequence[int], edges: Sequence[tuple[int, int]]
) -> list[Vec]:
    """Extreme rays, in full coordinates, of the rank-trace-free dual cone.

    Parametrizes the trace-free hyperplane by the basis u_k = e_k -
    (r_k / r_ell) e_ell and runs double description in those coordinates.
    """
    ell = len(ranks)
    if ell == 1:
        return []
    dim = ell - 1
    basis = []
    for k in range(dim):
        vec = [Fraction(0)] * ell
        vec[k] = Fraction(1)
        vec[ell - 1] = -Fraction(ranks[k], ranks[ell - 1])
        basis.append(tuple(vec))
    constraints = [
        tuple(b[i - 1] - b[j - 1] for b in basis) for i, j in edges
    ]
    coord_rays = double_description(constraints, dim)
    full = []
    for c in coord_rays:
        vec = [Fraction(0)] * ell
        for coeff, b in zip(c, basis):
            for k in range(ell):
                vec[k] += coeff * b[k]
        full.append(_primitive(vec))
    return sorted(full)


def redualize_oracle(
    generators: Sequence[Sequence[Fraction]],
    ranks: Sequence[int],
) -> list[Vec]:
    """Extreme rays of the dual of the given generator set, as functionals.

    Works in the same hyperplane coordinates: the result can be compared to
    the original edge weight vectors reduced to those coordinates.
    """
    ell = len(ranks)
    dim = ell - 1
    # with basis u_k = e_k - (r_k / r_ell) e_ell, the hyperplane coordinates
    # of a trace-free vector are simply its first ell - 1 entries
    constraints = [tuple(Fraction(x) for x in g[:dim]) for g in generators]
    return double_description(constraints, dim)


def weight_in_coords(
    weight: Sequence[Fraction], ranks: Sequence[int]
) -> Vec:
    """Reduce a functional on the ambient space to hyperplane coordinates."""
    ell = len(ranks)
    basis = []
    for k in range(ell - 1):
        vec = [Fraction(0)] * ell
        vec[k] = Fraction(1)
        vec[ell - 1] = -Fraction(ranks[k], ranks[ell - 1])
        basis.append(tuple(vec))
    return _primitive(tuple(_dot(weight, b) for b in basis))
