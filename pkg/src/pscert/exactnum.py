"""Exact scalars and certified interval arithmetic.

Scalars: arbitrary-size integers (Python int), rationals (fractions.Fraction,
re-exported as Rational), prime-field elements, and exact roots of unity.

Intervals: RealInterval / ComplexBox wrap mpmath's interval context, which
provides outward-rounded arbitrary-precision enclosures.  Every operation
returns an enclosure of the exact image; widths shrink as the working
precision grows.  Precision starts at 64 bits and may be escalated by
callers up to a hard cap (default 16384 bits, override with the
PSCERT_MAX_PRECISION environment variable).
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from mpmath import iv, mp
from mpmath.libmp import from_int, from_rational

from .errors import AmbiguousEnclosure, DomainError, PrecisionExhausted

Rational = Fraction

DEFAULT_PREC = 64
MAX_PREC = int(os.environ.get("PSCERT_MAX_PRECISION", "16384"))

_WORKPREC: list[int] = []


@contextmanager
def workprec(bits: int):
    """Force all interval operations in the block to run at `bits` precision."""
    _WORKPREC.append(bits)
    try:
        yield
    finally:
        _WORKPREC.pop()


def _current_prec(*operands: "RealInterval") -> int:
    if _WORKPREC:
        return _WORKPREC[-1]
    if operands:
        return max(x.prec for x in operands)
    return DEFAULT_PREC


def _fraction_to_mpf_pair(q: Fraction, prec: int):
    # mpmath rounds Fraction endpoints outward when building an interval
    return q


class RealInterval:
    """Closed interval [lo, hi] with exact binary endpoints.

    Immutable; arithmetic returns new enclosures computed with outward
    rounding at the working precision.
    """

    __slots__ = ("_ivl", "prec")

    def __init__(self, lo, hi=None, prec: int | None = None):
        prec = prec if prec is not None else _current_prec()
        if hi is None:
            hi = lo
        lo_raw = _endpoint_raw(lo, upper=False, prec=prec)
        hi_raw = _endpoint_raw(hi, upper=True, prec=prec)
        with _ivprec(prec):
            self._ivl = iv.mpf([mp.make_mpf(lo_raw), mp.make_mpf(hi_raw)])
        self.prec = prec

    @classmethod
    def _wrap(cls, ivl, prec: int) -> "RealInterval":
        obj = object.__new__(cls)
        obj._ivl = ivl
        obj.prec = prec
        return obj

    # -- exact endpoint access ------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return _mpf_to_fraction(self._ivl._mpi_[0])

    @property
    def hi(self) -> Fraction:
        return _mpf_to_fraction(self._ivl._mpi_[1])

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def raw_endpoints(self):
        """Raw mpf endpoint tuples (sign, mantissa, exponent, bitcount)."""
        lo, hi = self._ivl._mpi_
        return lo, hi

    def contains(self, value) -> bool:
        q = Fraction(value)
        return self.lo <= q <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def at_prec(self, prec: int) -> "RealInterval":
        lo, hi = self._ivl._mpi_
        with _ivprec(prec):
            ivl = iv.mpf([mp.make_mpf(lo), mp.make_mpf(hi)])
        return RealInterval._wrap(ivl, prec)

    def intersect(self, other: "RealInterval") -> "RealInterval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise DomainError("intersection of disjoint intervals")
        return RealInterval(lo, hi, prec=max(self.prec, other.prec))

    def hull(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(min(self.lo, other.lo), max(self.hi, other.hi),
                            prec=max(self.prec, other.prec))

    # -- arithmetic -----------------------------------------------------------

    def _binary(self, other, fn):
        other = _coerce(other)
        prec = _current_prec(self, other)
        with _ivprec(prec):
            res = fn(self.at_prec(prec)._ivl, other.at_prec(prec)._ivl)
        return RealInterval._wrap(res, prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains_zero():
            raise DomainError("division by an interval containing zero")
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        prec = _current_prec(self)
        with _ivprec(prec):
            return RealInterval._wrap(-self.at_prec(prec)._ivl, prec)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealInterval(0, max(-self.lo, self.hi), prec=self.prec)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        prec = _current_prec(self)
        if k < 0:
            return 1 / (self ** (-k))
        with _ivprec(prec):
            res = self.at_prec(prec)._ivl ** k
        out = RealInterval._wrap(res, prec)
        if k % 2 == 0 and out.lo < 0:
            out = RealInterval(0, out.hi, prec=prec)
        return out

    def __repr__(self):
        return f"RealInterval[{float(self.lo)!r}, {float(self.hi)!r}]"


def _coerce(x) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    return RealInterval(x)


@contextmanager
def _ivprec(bits: int):
    old_iv, old_mp = iv.prec, mp.prec
    iv.prec = bits
    mp.prec = bits + 10
    try:
        yield
    finally:
        iv.prec, mp.prec = old_iv, old_mp


def _endpoint_raw(x, upper: bool, prec: int):
    """Raw mpf tuple for an endpoint, rounded outward when inexact."""
    rnd = "c" if upper else "f"
    if isinstance(x, Fraction):
        return from_rational(x.numerator, x.denominator, prec, rnd)
    if isinstance(x, int):
        return from_int(x)
    if isinstance(x, float):
        return mp.mpf(x)._mpf_
    if hasattr(x, "_mpf_"):
        return x._mpf_
    raise TypeError(f"cannot build interval endpoint from {type(x)!r}")


def _mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if man == 0:
        if exp != 0:
            raise DomainError("non-finite interval endpoint")
        return Fraction(0)
    man = int(man)
    value = Fraction(man, 1) * Fraction(2) ** exp
    return -value if sign else value


# -- elementary functions -----------------------------------------------------


def pi_interval(prec: int | None = None) -> RealInterval:
    prec = prec if prec is not None else _current_prec()
    with _ivprec(prec):
        return RealInterval._wrap(+iv.pi, prec)


def _unary(x: RealInterval, name: str, check=None) -> RealInterval:
    prec = _current_prec(x)
    if check is not None:
        check(x)
    with _ivprec(prec):
        res = getattr(iv, name)(x.at_prec(prec)._ivl)
    return RealInterval._wrap(res, prec)


def iexp(x) -> RealInterval:
    return _unary(_coerce(x), "exp")


def ilog(x) -> RealInterval:
    x = _coerce(x)
    if x.lo <= 0:
        raise DomainError("log of an interval touching (-inf, 0]")
    return _unary(x, "log")


def icos(x) -> RealInterval:
    return _unary(_coerce(x), "cos")


def isin(x) -> RealInterval:
    return _unary(_coerce(x), "sin")


def isqrt(x) -> RealInterval:
    x = _coerce(x)
    if x.lo < 0:
        raise DomainError("sqrt of an interval touching negatives")
    return _unary(x, "sqrt")


def iatan2(y: RealInterval, x: RealInterval) -> RealInterval:
    y, x = _coerce(y), _coerce(x)
    prec = _current_prec(y, x)
    with _ivprec(prec):
        res = iv.atan2(y.at_prec(prec)._ivl, x.at_prec(prec)._ivl)
    return RealInterval._wrap(res, prec)


def interval_eval(fn, inputs: Sequence, precision: int = DEFAULT_PREC,
                  target_width=None, max_precision: int | None = None) -> RealInterval:
    """Evaluate `fn` over RealInterval inputs, escalating precision on demand.

    `fn` receives one RealInterval per input and must build its result from
    interval operations only.  When `target_width` is given, the precision is
    doubled until the result is at least that narrow; PrecisionExhausted is
    raised at the cap.  Successive results are intersected, so refinement
    never widens the enclosure.
    """
    cap = max_precision if max_precision is not None else MAX_PREC
    prec = min(precision, cap)
    best = None
    while True:
        args = [_coerce(x).at_prec(prec) for x in inputs]
        with workprec(prec):
            res = fn(*args)
        res = res if best is None else res.intersect(best)
        best = res
        if target_width is None or res.width <= Fraction(target_width):
            return res
        if prec >= cap:
            raise PrecisionExhausted(
                f"width {float(res.width)} > target at {prec} bits")
        prec = min(2 * prec, cap)


def nearest_integer_distance(x: RealInterval) -> RealInterval:
    """Enclosure of min over integers m of |x - m|.

    Requires width(x) < 1/4.  If x straddles a half-integer the conservative
    envelope is returned (lower end 0 is allowed only when an integer lies
    inside x).
    """
    lo, hi = x.lo, x.hi
    if hi - lo >= Fraction(1, 4):
        raise AmbiguousEnclosure("interval too wide to locate nearest integer")

    def dist(q: Fraction) -> Fraction:
        fl = math.floor(q)
        return min(q - fl, fl + 1 - q)

    d_lo = dist(lo)
    d_hi = dist(hi)
    out_lo = min(d_lo, d_hi)
    out_hi = max(d_lo, d_hi)
    if math.floor(lo) != math.floor(hi) or lo == math.floor(lo):
        # an integer lies inside the interval
        out_lo = Fraction(0)
    if math.floor(2 * lo) != math.floor(2 * hi):
        # a half-integer (or integer) lies inside; distance peaks at 1/2
        out_hi = max(out_hi, Fraction(1, 2)) if _contains_half(lo, hi) else out_hi
    return RealInterval(out_lo, out_hi, prec=x.prec)


def _contains_half(lo: Fraction, hi: Fraction) -> bool:
    k = math.floor(2 * lo)
    for j in (k, k + 1, k + 2):
        if j % 2 != 0 and lo <= Fraction(j, 2) <= hi:
            return True
    return False


class ComplexBox:
    """Rectangular enclosure of a complex number: re x im."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = _coerce(re)
        self.im = _coerce(im)

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def __add__(self, other):
        other = _coerce_box(other)
        return ComplexBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_box(other)
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce_box(other) - self

    def __mul__(self, other):
        other = _coerce_box(other)
        return ComplexBox(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_box(other)
        den = other.re ** 2 + other.im ** 2
        if den.contains_zero():
            raise DomainError("division by a box containing zero")
        return ComplexBox((self.re * other.re + self.im * other.im) / den,
                          (self.im * other.re - self.re * other.im) / den)

    def __rtruediv__(self, other):
        return _coerce_box(other) / self

    def __neg__(self):
        return ComplexBox(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self ** (-k))
        result = ComplexBox(1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def abs(self) -> RealInterval:
        return isqrt(self.re ** 2 + self.im ** 2)

    def abs2(self) -> RealInterval:
        return self.re ** 2 + self.im ** 2

    def arg(self) -> RealInterval:
        if self.re.contains_zero() and self.im.contains_zero():
            raise DomainError("argument of a box containing zero")
        return iatan2(self.im, self.re)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def at_prec(self, prec: int) -> "ComplexBox":
        return ComplexBox(self.re.at_prec(prec), self.im.at_prec(prec))

    def __repr__(self):
        return f"ComplexBox({self.re!r}, {self.im!r})"


def _coerce_box(x) -> ComplexBox:
    if isinstance(x, ComplexBox):
        return x
    if isinstance(x, RealInterval):
        return ComplexBox(x, RealInterval(0, 0, prec=x.prec))
    return ComplexBox(RealInterval(x), RealInterval(0))


# -- prime field elements -----------------------------------------------------


class PrimeFieldElem:
    """Residue in [0, p) for a prime modulus p."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        self.p = p
        self.residue = residue % p

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mismatched prime moduli")

    def __add__(self, other):
        self._check(other)
        return PrimeFieldElem(self.residue + other.residue, self.p)

    def __sub__(self, other):
        self._check(other)
        return PrimeFieldElem(self.residue - other.residue, self.p)

    def __mul__(self, other):
        self._check(other)
        return PrimeFieldElem(self.residue * other.residue, self.p)

    def inverse(self) -> "PrimeFieldElem":
        return PrimeFieldElem(pow(self.residue, -1, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeFieldElem) and \
            (self.residue, self.p) == (other.residue, other.p)

    def __hash__(self):
        return hash((self.residue, self.p))

    def __repr__(self):
        return f"PrimeFieldElem({self.residue}, p={self.p})"


# -- exact roots of unity -----------------------------------------------------


class UnityRoot:
    """The exact root of unity e^{2*pi*i*j/k}, stored as a reduced fraction j/k."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int):
        if order <= 0:
            raise ValueError("order must be positive")
        exponent %= order
        g = math.gcd(exponent, order) if exponent else order
        self.order = order // g
        self.exponent = exponent // g

    def __mul__(self, other: "UnityRoot") -> "UnityRoot":
        k = self.order * other.order // math.gcd(self.order, other.order)
        e = self.exponent * (k // self.order) + other.exponent * (k // other.order)
        return UnityRoot(k, e)

    def __pow__(self, n: int) -> "UnityRoot":
        return UnityRoot(self.order, self.exponent * n)

    def inverse(self) -> "UnityRoot":
        return UnityRoot(self.order, -self.exponent)

    def __eq__(self, other):
        return isinstance(other, UnityRoot) and \
            (self.order, self.exponent) == (other.order, other.exponent)

    def __hash__(self):
        return hash((self.order, self.exponent))

    def is_one(self) -> bool:
        return self.exponent == 0

    def as_complex(self, prec: int = DEFAULT_PREC) -> ComplexBox:
        two_pi = 2 * pi_interval(prec)
        angle = two_pi * Fraction(self.exponent, self.order)
        with workprec(prec):
            return ComplexBox(icos(angle), isin(angle))

    def __repr__(self):
        return f"UnityRoot(order={self.order}, exponent={self.exponent})"


# Cyclotomic-quotient machinery for deciding vanishing of short sums of
# roots of unity exactly.  Polynomials here are plain integer coefficient
# lists, constant term first.


def _zpoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _zpoly_divmod(a: list[int], b: list[int]):
    # b monic
    a = a[:]
    q = [0] * max(1, len(a) - len(b) + 1)
    db = len(b) - 1
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
    while a and a[-1] == 0:
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _zpoly_divmod(poly, list(cyclotomic_coeffs(d)))
            assert not rem
    return tuple(poly)


def unity_sum_is_zero(roots: Iterable[UnityRoot]) -> bool:
    """Decide exactly whether a finite sum of roots of unity vanishes."""
    roots = list(roots)
    if not roots:
        return True
    lcm = 1
    for r in roots:
        lcm = lcm * r.order // math.gcd(lcm, r.order)
    coeffs = [0] * lcm
    for r in roots:
        coeffs[r.exponent * (lcm // r.order) % lcm] += 1
    phi = list(cyclotomic_coeffs(lcm))
    _, rem = _zpoly_divmod(coeffs, phi)
    return not rem


def unity_arith(x: UnityRoot, y, op: str):
    """Dispatch helper matching the kernel surface: mul, pow, sum-test."""
    if op == "mul":
        return x * y
    if op == "pow":
        return x ** y
    if op == "sum-test":
        terms = [x] + list(y)
        return unity_sum_is_zero(terms)
    raise ValueError(f"unknown op {op!r}")
