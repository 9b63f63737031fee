"""Exact arithmetic on Z-linear combinations of square roots.

Height functions of the form sqrt(integer) produce values that must be added
along paths and compared without rounding error.  A :class:`SqrtSum` stores a
canonical map ``squarefree radicand -> rational coefficient`` (radicand 1 is
the rational part).  Because square roots of distinct squarefree integers are
linearly independent over the rationals, the canonical form is zero exactly
when the value is zero, and any nonzero value can be separated from zero by
interval refinement.

Sign determination is fully exact (integer arithmetic) whenever each side of
the comparison carries at most two radicals -- which covers every convexity
("fold") check the triangulation code performs -- and falls back to rigorous
interval arithmetic otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from mpmath import iv, mp, mpf

from .errors import UndecidedSign

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "SqrtSum"]

_MAX_IV_PREC = 4096


def squarefree_decomposition(k: int) -> tuple[int, int]:
    """Return (s, m) with k = s * m**2 and s squarefree."""
    if k < 0:
        raise ValueError("radicand must be non-negative")
    s, m, d = 1, 1, 2
    while d * d <= k:
        e = 0
        while k % d == 0:
            k //= d
            e += 1
        m *= d ** (e // 2)
        if e % 2:
            s *= d
        d += 1
    return s * k, m


def _sign_rational(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _sign_q_plus_c_sqrt(q: Fraction, c: Fraction, x: Fraction) -> int:
    """Exact sign of q + c*sqrt(x) for rationals q, c and x >= 0."""
    if x == 0 or c == 0:
        return _sign_rational(q)
    if q == 0:
        return _sign_rational(c)
    if q > 0 and c > 0:
        return 1
    if q < 0 and c < 0:
        return -1
    # Opposite signs: compare q**2 against c**2 * x, the larger magnitude wins.
    lhs, rhs = q * q, c * c * x
    if lhs == rhs:
        return 0
    bigger_is_rational = lhs > rhs
    return _sign_rational(q) if bigger_is_rational else _sign_rational(c)


def _compare_two_radical_sums(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> int:
    """Exact sign of (sqrt(a) + sqrt(b)) - (sqrt(c) + sqrt(d)), radicands >= 0.

    Squares both sides twice; every step stays in rational arithmetic.
    """
    # First squaring: compare (a + b) + 2 sqrt(ab) against (c + d) + 2 sqrt(cd).
    p = (a + b) - (c + d)
    x, y = a * b, c * d
    # sign of p + 2 sqrt(x) - 2 sqrt(y)
    if y == 0:
        return _sign_q_plus_c_sqrt(p, Fraction(2), x)
    if x == 0:
        return -_sign_q_plus_c_sqrt(-p, Fraction(2), y)
    if p >= 0:
        # both p + 2 sqrt(x) and 2 sqrt(y) non-negative: square again
        r = 4 * x + p * p - 4 * y
        return _sign_q_plus_c_sqrt(r, 4 * p, x) if p else _sign_rational(r)
    # p < 0: compare 2 sqrt(x) against 2 sqrt(y) - p, both positive
    r = 4 * x - 4 * y - p * p
    return _sign_q_plus_c_sqrt(r, 4 * p, y)


class SqrtSum:
    """Immutable exact value sum(coeff * sqrt(radicand)) with rational coeffs."""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for rad, coeff in terms.items():
                coeff = Fraction(coeff)
                if not coeff or rad == 0:  # sqrt(0) contributes nothing
                    continue
                s, m = squarefree_decomposition(int(rad))
                clean[s] = clean.get(s, Fraction(0)) + coeff * m
        self._terms = {r: c for r, c in clean.items() if c}
        self._key = tuple(sorted(self._terms.items()))

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q: Rational) -> "SqrtSum":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, k: int, coeff: Rational = 1) -> "SqrtSum":
        s, m = squarefree_decomposition(int(k))
        return cls({s: Fraction(coeff) * m})

    @classmethod
    def coerce(cls, value: Scalar) -> "SqrtSum":
        if isinstance(value, SqrtSum):
            return value
        return cls.rational(value)

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return all(r == 1 for r in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Scalar) -> "SqrtSum":
        other = SqrtSum.coerce(other)
        merged = dict(self._terms)
        for r, c in other._terms.items():
            merged[r] = merged.get(r, Fraction(0)) + c
        return SqrtSum(merged)

    __radd__ = __add__

    def __neg__(self) -> "SqrtSum":
        return SqrtSum({r: -c for r, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "SqrtSum":
        return self + (-SqrtSum.coerce(other))

    def __rsub__(self, other: Scalar) -> "SqrtSum":
        return SqrtSum.coerce(other) - self

    def __mul__(self, scalar: Rational) -> "SqrtSum":
        if isinstance(scalar, SqrtSum):
            if scalar.is_rational():
                scalar = scalar.as_fraction()
            else:
                raise TypeError("only scalar multiplication is supported")
        q = Fraction(scalar)
        return SqrtSum({r: c * q for r, c in self._terms.items()})

    __rmul__ = __mul__

    # -- signs and order -------------------------------------------------------

    def sign(self) -> int:
        """Exact sign: -1, 0, or +1."""
        if not self._terms:
            return 0
        signs = {_sign_rational(c) for c in self._terms.values()}
        if signs == {1}:
            return 1
        if signs == {-1}:
            return -1
        pos = [(c, r) for r, c in self._terms.items() if c > 0]
        neg = [(-c, r) for r, c in self._terms.items() if c < 0]
        if len(pos) <= 2 and len(neg) <= 2:
            # rewrite coeff*sqrt(rad) as sqrt(coeff**2 * rad) and square twice
            rads_p = [c * c * r for c, r in pos] + [Fraction(0)] * (2 - len(pos))
            rads_n = [c * c * r for c, r in neg] + [Fraction(0)] * (2 - len(neg))
            return _compare_two_radical_sums(rads_p[0], rads_p[1], rads_n[0], rads_n[1])
        return self._interval_sign()

    def _interval_sign(self) -> int:
        prec = 64
        while prec <= _MAX_IV_PREC:
            old = iv.prec
            try:
                iv.prec = prec
                total = iv.mpf(0)
                for r, c in self._terms.items():
                    term = iv.mpf(c.numerator) / c.denominator
                    if r != 1:
                        term *= iv.sqrt(r)
                    total += term
                if total > 0:
                    return 1
                if total < 0:
                    return -1
            finally:
                iv.prec = old
            prec *= 2
        raise UndecidedSign(f"sign of {self} undecided at {_MAX_IV_PREC} bits")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SqrtSum.rational(other)
        if not isinstance(other, SqrtSum):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def _cmp(self, other: Scalar) -> int:
        return (self - SqrtSum.coerce(other)).sign()

    def __lt__(self, other: Scalar) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Scalar) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Scalar) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Scalar) -> bool:
        return self._cmp(other) >= 0

    # -- conversion ------------------------------------------------------------

    def to_mpf(self, dps: int = 50) -> mpf:
        old = mp.dps
        try:
            mp.dps = dps
            total = mp.mpf(0)
            for r, c in self._terms.items():
                term = mp.mpf(c.numerator) / c.denominator
                if r != 1:
                    term *= mp.sqrt(r)
                total += term
            return total
        finally:
            mp.dps = old

    def __float__(self) -> float:
        return float(self.to_mpf(30))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, c in sorted(self._terms.items()):
            if r == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({r})")
            else:
                parts.append(f"{c}*sqrt({r})")
        return " + ".join(parts).replace("+ -", "- ")


def value_sign(x: Scalar) -> int:
    """Sign of an exact value: Fraction/int directly, SqrtSum symbolically."""
    if isinstance(x, SqrtSum):
        return x.sign()
    return (x > 0) - (x < 0)


def value_float(x: Scalar) -> float:
    return float(x)
