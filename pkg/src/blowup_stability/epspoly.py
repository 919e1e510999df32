"""Exact truncated polynomials in the shrinking parameter of a polarisation family.

Coefficients are arbitrary-precision rationals.  The central comparison is the
"for all sufficiently small positive values" order: the sign of a polynomial is
the sign of its first nonzero coefficient, and ``positive_root_bound`` brackets
the smallest positive root, i.e. the first place where that sign can change.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[Fraction, int, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def sign_of(x: Fraction) -> Sign:
    if x > 0:
        return Sign.POSITIVE
    if x < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


class ZeroPolynomialError(ValueError):
    """Raised when an operation requires a polynomial that is not identically zero."""


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class EpsPoly:
    """Polynomial in the shrinking parameter, truncated at a fixed degree.

    The coefficient list has fixed length ``max_degree + 1``; index k holds the
    degree-k coefficient.  Arithmetic between polynomials of different
    truncation degrees is refused so that truncation never drifts silently.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike], max_degree: int | None = None):
        cs = tuple(as_fraction(c) for c in coeffs)
        if max_degree is not None:
            if len(cs) > max_degree + 1:
                raise ValueError(
                    f"{len(cs)} coefficients exceed truncation degree {max_degree}"
                )
            cs = cs + (Fraction(0),) * (max_degree + 1 - len(cs))
        if not cs:
            raise ValueError("a polynomial needs at least one coefficient")
        self._coeffs = cs

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def max_degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self._coeffs[k]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def evaluate(self, eps: RationalLike) -> Fraction:
        """Exact value at a rational point (Horner)."""
        x = as_fraction(eps)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def _check_compatible(self, other: "EpsPoly") -> None:
        if self.max_degree != other.max_degree:
            raise ValueError(
                f"truncation mismatch: degree {self.max_degree} vs {other.max_degree}"
            )

    def __add__(self, other: "EpsPoly") -> "EpsPoly":
        self._check_compatible(other)
        return EpsPoly(a + b for a, b in zip(self._coeffs, other._coeffs))

    def __sub__(self, other: "EpsPoly") -> "EpsPoly":
        self._check_compatible(other)
        return EpsPoly(a - b for a, b in zip(self._coeffs, other._coeffs))

    def __neg__(self) -> "EpsPoly":
        return EpsPoly(-c for c in self._coeffs)

    def __mul__(self, scalar: RationalLike) -> "EpsPoly":
        s = as_fraction(scalar)
        return EpsPoly(c * s for c in self._coeffs)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RationalLike) -> "EpsPoly":
        s = as_fraction(scalar)
        if s == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return EpsPoly(c / s for c in self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EpsPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"EpsPoly([{', '.join(str(c) for c in self._coeffs)}])"


def zero_poly(max_degree: int) -> EpsPoly:
    return EpsPoly([Fraction(0)], max_degree=max_degree)


def lex_sign(p: EpsPoly) -> Sign:
    """Sign of p(eps) for all sufficiently small eps > 0.

    Equals the sign of the first nonzero coefficient; ZERO iff p vanishes
    identically.
    """
    for c in p.coeffs:
        if c != 0:
            return sign_of(c)
    return Sign.ZERO


# ---------------------------------------------------------------------------
# Positive root isolation (exact bisection seeded by Descartes sign counts).
# Coefficient lists below are ascending, plain tuples/lists of Fractions.
# ---------------------------------------------------------------------------


def _trim(cs: list[Fraction]) -> list[Fraction]:
    while len(cs) > 1 and cs[-1] == 0:
        cs = cs[:-1]
    return cs


def _eval(cs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _derivative(cs: list[Fraction]) -> list[Fraction]:
    if len(cs) == 1:
        return [Fraction(0)]
    return [k * c for k, c in enumerate(cs)][1:]


def _divmod_poly(num: list[Fraction], den: list[Fraction]):
    num = num[:]
    dden = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dden, 1)
    for k in range(len(num) - 1, dden - 1, -1):
        factor = num[k] / lead
        quot[k - dden] = factor
        for j in range(dden + 1):
            num[k - dden + j] -= factor * den[j]
    return _trim(quot), _trim(num)


def _gcd_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a[:]), _trim(b[:])
    while not (len(b) == 1 and b[0] == 0):
        _, r = _divmod_poly(a, b)
        a, b = b, r
    # monic normalisation keeps coefficient growth tame
    return [c / a[-1] for c in a]


def _squarefree(cs: list[Fraction]) -> list[Fraction]:
    if len(cs) <= 2:
        return cs
    g = _gcd_poly(cs, _derivative(cs))
    if len(g) == 1:
        return cs
    q, r = _divmod_poly(cs, g)
    assert r == [Fraction(0)], "gcd must divide exactly"
    return q


def _sign_variations(cs: list[Fraction]) -> int:
    count, prev = 0, 0
    for c in cs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _compose_affine(cs: list[Fraction], a: Fraction, s: Fraction) -> list[Fraction]:
    # coefficients of q(a + s*y), Horner over the polynomial ring
    result = [cs[-1]]
    for c in reversed(cs[:-1]):
        mul = [a * r for r in result] + [Fraction(0)]
        for k, r in enumerate(result):
            mul[k + 1] += s * r
        mul[0] += c
        result = mul
    return result


def _taylor_shift_one(cs: list[Fraction]) -> list[Fraction]:
    # coefficients of q(y + 1)
    return _compose_affine(cs, Fraction(1), Fraction(1))


def _variations_in(cs: list[Fraction], a: Fraction, b: Fraction) -> int:
    """Descartes bound on the number of roots of cs in the open interval (a, b)."""
    d = len(cs) - 1
    p1 = _compose_affine(cs, a, b - a)  # roots in (a,b) -> (0,1)
    p2 = list(reversed(p1))             # (0,1) -> (1,inf), degree stays d
    if len(p2) < d + 1:
        p2 += [Fraction(0)] * (d + 1 - len(p2))
    p3 = _taylor_shift_one(p2)          # (1,inf) -> (0,inf)
    return _sign_variations(p3)


def _leftmost_root(cs: list[Fraction], a: Fraction, b: Fraction):
    """Leftmost root of a squarefree cs in the open interval (a, b).

    Returns ("exact", r) or ("interval", lo, hi) with exactly one root in
    (lo, hi) and none in (a, lo]; None if there is no root.
    """
    v = _variations_in(cs, a, b)
    if v == 0:
        return None
    if v == 1:
        return ("interval", a, b)
    m = (a + b) / 2
    if _eval(cs, m) == 0:
        left = _leftmost_root(cs, a, m)
        return left if left is not None else ("exact", m)
    return _leftmost_root(cs, a, m) or _leftmost_root(cs, m, b)


def _refine(cs: list[Fraction], a: Fraction, b: Fraction, precision: Fraction) -> Interval:
    sa = _eval(cs, a)
    assert sa != 0
    while b - a > precision:
        m = (a + b) / 2
        vm = _eval(cs, m)
        if vm == 0:
            return Interval(m, m)
        if (vm > 0) == (sa > 0):
            a = m
        else:
            b = m
    return Interval(a, b)


def positive_root_bound(
    p: EpsPoly, precision: RationalLike = Fraction(1, 1024)
) -> Interval | None:
    """Bracket the smallest root of p in (0, 1] to the requested width.

    Returns None when p keeps a constant sign on (0, 1], so that its sign
    there is ``lex_sign(p)`` throughout.  Otherwise the returned interval has
    width <= precision, contains the smallest such root, and p carries its
    small-parameter sign on (0, interval.lo).
    """
    prec = as_fraction(precision)
    if prec <= 0:
        raise ValueError("precision must be positive")
    cs = _trim(list(p.coeffs))
    if len(cs) == 1 and cs[0] == 0:
        raise ZeroPolynomialError("the zero polynomial has no sign-change bound")
    # roots at 0 are outside (0, 1]; strip the common power of the parameter
    first = next(k for k, c in enumerate(cs) if c != 0)
    cs = cs[first:]
    if len(cs) == 1:
        return None
    cs = _squarefree(cs)
    root_at_one = _eval(cs, Fraction(1)) == 0
    if root_at_one:
        cs, _ = _divmod_poly(cs, [Fraction(-1), Fraction(1)])
    found = None
    if len(cs) > 1:
        found = _leftmost_root(cs, Fraction(0), Fraction(1))
    if found is None:
        return Interval(Fraction(1), Fraction(1)) if root_at_one else None
    if found[0] == "exact":
        return Interval(found[1], found[1])
    _, lo, hi = found
    return _refine(cs, lo, hi, prec)
