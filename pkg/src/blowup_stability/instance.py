"""Problem instances: center dimensions, graded components, extension graph.

An instance describes the polystable graded pieces of a semi-stable bundle
together with their degree expansions in the shrinking parameter, and the
directed graph recording which extension classes between pieces are nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .epspoly import EpsPoly, RationalLike, as_fraction


class ValidationError(ValueError):
    """A standing hypothesis fails; the subclass name identifies which one."""

    @property
    def code(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        detail = super().__str__()
        return f"{self.code}: {detail}" if detail else self.code


class BadAmbient(ValidationError):
    pass


class NoComponents(ValidationError):
    pass


class BadRank(ValidationError):
    pass


class DuplicateComponentName(ValidationError):
    pass


class BadDegreeData(ValidationError):
    pass


class InconsistentTruncation(ValidationError):
    pass


class BadEdgeOrder(ValidationError):
    pass


class EdgeOutOfRange(ValidationError):
    pass


class DisconnectedQuiver(ValidationError):
    pass


class UnequalBaseSlopes(ValidationError):
    pass


class ModeInconsistency(ValidationError):
    pass


class WrongLength(ValidationError):
    pass


class MissingRestrictionData(ValidationError):
    pass


class PointCenter(ValidationError):
    pass


@dataclass(frozen=True)
class Ambient:
    """Dimensions of the surrounding manifold (n) and of the center (m)."""

    n: int
    m: int

    @property
    def codimension(self) -> int:
        return self.n - self.m


@dataclass(frozen=True)
class GradedComponent:
    """One stable piece of the graded object.

    deg_coeffs expands the degree of its pullback in the shrinking parameter;
    restriction_degree, when present, is the degree of the restriction to the
    center and feeds the two-term sufficient test.
    """

    name: str
    rank: int
    deg_coeffs: EpsPoly
    restriction_degree: Fraction | None = None


@dataclass(frozen=True)
class Quiver:
    """Directed edges (i, j), i < j, marking nonzero extension classes."""

    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Quiver":
        canon = sorted({(int(i), int(j)) for i, j in pairs})
        return cls(tuple(canon))

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Instance:
    ambient: Ambient
    components: tuple[GradedComponent, ...]
    quiver: Quiver

    @property
    def ell(self) -> int:
        return len(self.components)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(c.rank for c in self.components)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def component(self, index: int) -> GradedComponent:
        """1-based component access, matching quiver indices."""
        return self.components[index - 1]


def _connected(ell: int, edges: Sequence[tuple[int, int]]) -> bool:
    if ell <= 1:
        return True
    adj: dict[int, set[int]] = {v: set() for v in range(1, ell + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == ell


def validate_instance(inst: Instance) -> Instance:
    """Check every standing hypothesis; return the instance unchanged.

    Raises a ValidationError subclass naming the first violated hypothesis.
    """
    n, m = inst.ambient.n, inst.ambient.m
    if n < 2:
        raise BadAmbient(f"surrounding dimension n = {n} must be at least 2")
    if m < 0 or m > n - 2:
        raise BadAmbient(f"center dimension m = {m} must satisfy 0 <= m <= n - 2")

    ell = inst.ell
    if ell < 1:
        raise NoComponents("an instance needs at least one graded component")

    names = [c.name for c in inst.components]
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        raise DuplicateComponentName(f"component name {dup!r} appears twice")

    for c in inst.components:
        if c.rank < 1:
            raise BadRank(f"component {c.name!r} has rank {c.rank}")

    degree = inst.components[0].deg_coeffs.max_degree
    if degree > n - 1:
        raise BadDegreeData(
            f"truncation degree {degree} exceeds n - 1 = {n - 1}"
        )
    for c in inst.components:
        if c.deg_coeffs.max_degree != degree:
            raise InconsistentTruncation(
                f"component {c.name!r} truncated at degree "
                f"{c.deg_coeffs.max_degree}, expected {degree}"
            )

    for i, j in inst.quiver.edges:
        if not (1 <= i <= ell and 1 <= j <= ell):
            raise EdgeOutOfRange(f"edge ({i}, {j}) outside 1..{ell}")
        if i >= j:
            raise BadEdgeOrder(f"edge ({i}, {j}) must have i < j")

    if not _connected(ell, inst.quiver.edges):
        raise DisconnectedQuiver(
            "the extension graph must connect all components"
        )

    base = inst.components[0].deg_coeffs.coeff(0) / inst.components[0].rank
    for c in inst.components[1:]:
        if c.deg_coeffs.coeff(0) / c.rank != base:
            raise UnequalBaseSlopes(
                f"component {c.name!r} has base slope "
                f"{c.deg_coeffs.coeff(0) / c.rank}, expected {base}"
            )

    if m >= 1:
        k = n - m
        for c in inst.components:
            if c.restriction_degree is not None and c.deg_coeffs.max_degree >= k:
                expected = -comb(n - 1, m - 1) * c.restriction_degree
                if c.deg_coeffs.coeff(k) != expected:
                    raise ModeInconsistency(
                        f"component {c.name!r}: degree coefficient at order {k} "
                        f"is {c.deg_coeffs.coeff(k)}, but the restriction degree "
                        f"forces {expected}"
                    )
    return inst


def degrees_from_intersections(n: int, numbers: Sequence[RationalLike]) -> EpsPoly:
    """Degree expansion from intersection numbers against the two classes.

    numbers[k] is the product of the pulled-back first Chern class with
    (n-1-k) copies of the pulled-back polarisation and k copies of the
    exceptional divisor; the binomial expansion of the shrinking polarisation
    to the (n-1)-st power turns these into coefficients.
    """
    vals = [as_fraction(x) for x in numbers]
    if len(vals) != n:
        raise WrongLength(f"expected {n} intersection numbers, got {len(vals)}")
    coeffs = [comb(n - 1, k) * (Fraction(-1) ** k) * vals[k] for k in range(n)]
    return EpsPoly(coeffs, max_degree=n - 1)


def two_term_degree(
    ambient: Ambient,
    base_degree: RationalLike,
    rank: int,
    restriction_degree: RationalLike | None,
) -> EpsPoly:
    """Two-term degree model: base degree minus the restriction correction.

    The correction enters at order codimension = n - m with coefficient
    binom(n-1, m-1) times the restriction degree; the result is truncated
    there because higher orders are not determined by this data.
    """
    n, m = ambient.n, ambient.m
    if m == 0:
        raise PointCenter(
            "pullback degrees are parameter independent for point centers; "
            "use full intersection data"
        )
    if restriction_degree is None:
        raise MissingRestrictionData("restriction degree required")
    if rank < 1:
        raise BadRank(f"rank {rank} must be positive")
    k = n - m
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[0] = as_fraction(base_degree)
    coeffs[k] = -comb(n - 1, m - 1) * as_fraction(restriction_degree)
    return EpsPoly(coeffs, max_degree=k)
