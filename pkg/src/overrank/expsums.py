"""Kloosterman-type exponential sums and the (k, r) exponent-shift tables.

For coprime 0 < a < c and k >= 1 the relevant grouping data is

    d = gcd(c, k),  k1 = k/d,  c1 = c/d,  ell = a*k1 mod c1,

and the position of ell/c1 inside (0, 1) selects which branch of the
rational exponent shifts delta and phase offsets m applies.  Each positive
delta contributes one growing term to the asymptotic main formula; m can be
half-integral, so it is carried as the exact integer 2m throughout.

The sums A (c | k, k even), B (c | k, k odd) and D (c not | k, k odd) are
finite sums over residues h coprime to k, twisted by ratios of eta
multipliers and trigonometric factors.  All phases are accumulated as exact
rational multiples of pi; floating point enters only in the final
evaluation at the requested precision.  For odd k the inverse h' is taken
even in (-k, k], for even k it is the standard representative in [0, k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .arith import (
    DEFAULT_PREC,
    dedekind_sum,
    exp_pi_i,
    inv_neg,
    inv_neg_even,
)
from .errors import InternalConsistencyError

_GUARD_BITS = 16


@dataclass(frozen=True)
class GroupData:
    """gcd data of the pair (c, k) plus the residue ell = a*k1 mod c1."""

    k_tilde: int
    d: int
    k1: int
    c1: int
    ell: int


def group_data(a: int, c: int, k: int) -> GroupData:
    if not 0 < a < c:
        raise ValueError(f"need 0 < a < c, got a={a}, c={c}")
    if math.gcd(a, c) != 1:
        raise ValueError(f"a={a} and c={c} are not coprime")
    if k < 1:
        raise ValueError("k must be >= 1")
    d = math.gcd(c, k)
    k1 = k // d
    c1 = c // d
    return GroupData(k_tilde=k % 2, d=d, k1=k1, c1=c1, ell=(a * k1) % c1)


def s_func(b: int, c: int) -> int:
    """Piecewise step of b/c on (0,1): 0 on (0,1/4], 1 on (1/4,3/4], 2 above."""
    if not 0 < b < c:
        raise ValueError(f"need 0 < b < c, got b={b}, c={c}")
    x = Fraction(b, c)
    if x <= Fraction(1, 4):
        return 0
    if x <= Fraction(3, 4):
        return 1
    return 2


def t_func(b: int, c: int) -> int:
    """1 on (0,1/2), 3 on (1/2,1); undefined at b/c = 1/2."""
    if not 0 < b < c:
        raise ValueError(f"need 0 < b < c, got b={b}, c={c}")
    x = Fraction(b, c)
    if x == Fraction(1, 2):
        raise ValueError("t(b, c) is undefined at b/c = 1/2")
    return 1 if x < Fraction(1, 2) else 3


@dataclass(frozen=True)
class DeltaTerm:
    """One (k, r) contribution: exact delta > 0 and the doubled offset 2m."""

    r: int
    delta: Fraction
    twice_m: int
    primed: bool = False


def _delta_m(a: int, c1: int, k1: int, ell: int, r: int, primed: bool):
    """(delta, m) for given r per the branch of ell/c1; both exact."""
    x = Fraction(ell, c1)
    A = a * k1 - ell
    low, mid = x <= Fraction(1, 4), Fraction(1, 4) < x <= Fraction(3, 4)
    if not primed:
        if low:
            delta = Fraction(1, 16) - x / 2 + x * x - r * x
            m = -Fraction(2 * A * A + c1 * A + 2 * r * c1 * A, 2 * c1 * c1)
        elif mid:
            return Fraction(0), Fraction(0)
        else:
            delta = Fraction(1, 16) - 3 * x / 2 + x * x + Fraction(1, 2) - r * (1 - x)
            m = -Fraction(2 * A * A + 3 * c1 * A - 2 * r * c1 * A - c1 * c1 * (2 * r - 1), 2 * c1 * c1)
    else:
        if low:
            delta = Fraction(1, 16) - 3 * x / 2 + x * x - r * x
            m = -Fraction(2 * A * A + 3 * c1 * A + 2 * r * c1 * A, 2 * c1 * c1)
        elif mid:
            delta = Fraction(1, 16) - 3 * x / 2 + x * x + Fraction(1, 2) - r * (1 - x)
            m = -Fraction(2 * A * A + 3 * c1 * A - 2 * r * c1 * A - c1 * c1 * (2 * r - 1), 2 * c1 * c1)
        else:
            delta = Fraction(1, 16) - 5 * x / 2 + x * x + Fraction(3, 2) - r * (1 - x)
            m = -Fraction(2 * A * A + 5 * c1 * A - 2 * r * c1 * A - c1 * c1 * (2 * r - 3), 2 * c1 * c1)
    return delta, m


def delta_terms(a: int, c: int, k: int, primed: bool = False) -> list:
    """All r >= 0 with positive delta, as exact DeltaTerm records.

    Requires c not dividing k (so c1 > 1) and k odd.  delta decreases
    linearly in r, so the list is finite; the middle branch of the unprimed
    table is identically zero and yields an empty list.
    """
    if k % 2 == 0:
        raise ValueError("delta terms are defined for odd k")
    gd = group_data(a, c, k)
    if gd.c1 == 1:
        raise ValueError(f"c={c} divides k={k}; no delta terms exist")
    out = []
    r = 0
    while True:
        delta, m = _delta_m(a, gd.c1, gd.k1, gd.ell, r, primed)
        if delta <= 0:
            break
        twice = 2 * m
        if twice.denominator != 1:
            raise InternalConsistencyError(f"2m not integral at r={r}", witness=r)
        out.append(DeltaTerm(r=r, delta=delta, twice_m=int(twice), primed=primed))
        r += 1
        if r > 4 * c:
            raise InternalConsistencyError("delta term search did not terminate", witness=r)
    return out


@dataclass(frozen=True)
class ComplexVal:
    """A complex value with the working precision it was computed at."""

    re: object
    im: object
    precision: int

    def as_mpc(self):
        return mp.mpc(self.re, self.im)

    def __abs__(self):
        return abs(self.as_mpc())


def _units(k: int) -> range | list:
    if k == 1:
        return [0]
    return [h for h in range(1, k) if math.gcd(h, k) == 1]


@lru_cache(maxsize=None)
def ratio_theta_odd(h: int, k: int) -> Fraction:
    """Exact theta with omega(h,k)^2 / omega(2h,k) = exp(pi*i*theta), k odd."""
    return 2 * dedekind_sum(h, k) - dedekind_sum((2 * h) % k, k)


@lru_cache(maxsize=None)
def ratio_theta_even(h: int, k: int) -> Fraction:
    """Exact theta with omega(h,k)^2 / omega(h,k/2) = exp(pi*i*theta), k even."""
    return 2 * dedekind_sum(h, k) - dedekind_sum(h % (k // 2), k // 2)


def _tan_pi(a: int, c: int):
    x = Fraction(a, c)
    return mp.sinpi(mp.mpf(x.numerator) / x.denominator) / mp.cospi(
        mp.mpf(x.numerator) / x.denominator
    )


def kloosterman_B(a: int, c: int, k: int, n: int, m: int, prec: int = DEFAULT_PREC) -> ComplexVal:
    """B(n, m) over residues h mod k, for c | k with k odd.

    Each term is (omega_{h,k}^2/omega_{2h,k}) / sin(pi*a*h'/c) times the
    exact phase exp(-2*pi*i*h'*a^2*k1/c) * exp(2*pi*i*(n*h + m*h')/k), the
    whole sum scaled by -tan(pi*a/c)/sqrt(2).  h' is the even inverse.
    """
    if k % 2 == 0:
        raise ValueError("B is defined for odd k")
    if k % c:
        raise ValueError(f"B requires c | k, got c={c}, k={k}")
    gd = group_data(a, c, k)
    with mp.workprec(prec + _GUARD_BITS):
        total = mp.mpc(0)
        for h in _units(k):
            hp = inv_neg_even(h, k)
            if (a * hp) % c == 0:
                raise InternalConsistencyError(f"sin pole at h={h}", witness=h)
            theta = (
                ratio_theta_odd(h, k)
                - Fraction(2 * hp * a * a * gd.k1, c)
                + Fraction(2 * (n * h + m * hp), k)
            )
            total += exp_pi_i(theta) / mp.sinpi(mp.mpf((a * hp) % (2 * c)) / c)
        total *= -_tan_pi(a, c) / mp.sqrt(2)
    with mp.workprec(prec):
        return ComplexVal(+total.real, +total.imag, prec)


def kloosterman_D(a: int, c: int, k: int, n: int, twice_m: int, prec: int = DEFAULT_PREC) -> ComplexVal:
    """D(n, m) over residues h mod k, for c not dividing k, k odd.

    The sign is +1 when ell/c1 lies in (0, 1/4] and -1 when it lies in
    (3/4, 1); the sum is undefined on the middle range, where no positive
    delta exists.  m enters only through exp(2*pi*i*m*h'/k) and is passed
    doubled so half-integral offsets stay exact.
    """
    if k % 2 == 0:
        raise ValueError("D is defined for odd k")
    gd = group_data(a, c, k)
    if gd.c1 == 1:
        raise ValueError(f"D requires c not dividing k, got c={c}, k={k}")
    x = Fraction(gd.ell, gd.c1)
    if x <= Fraction(1, 4):
        sign = 1
    elif x > Fraction(3, 4):
        sign = -1
    else:
        raise ValueError(f"D undefined for ell/c1 = {x} in (1/4, 3/4]")
    with mp.workprec(prec + _GUARD_BITS):
        total = mp.mpc(0)
        for h in _units(k):
            hp = inv_neg_even(h, k)
            theta = ratio_theta_odd(h, k) + Fraction(2 * n * h, k) + Fraction(twice_m * hp, k)
            total += exp_pi_i(theta)
        total *= sign * _tan_pi(a, c) / mp.sqrt(2)
    with mp.workprec(prec):
        return ComplexVal(+total.real, +total.imag, prec)


def kloosterman_A(a: int, c: int, k: int, n: int, m: int, prec: int = DEFAULT_PREC) -> ComplexVal:
    """A(n, m) over residues h mod k, for c | k with k even.

    Uses the multiplier ratio omega_{h,k}^2/omega_{h,k/2}, a cot(pi*a*h'/c)
    factor, and the standard inverse representative h' in [0, k).  A cot
    pole (a*h' divisible by c) cannot occur for coprime a, c >= 2 and is a
    hard internal error.
    """
    if k % 2:
        raise ValueError("A is defined for even k")
    if k % c:
        raise ValueError(f"A requires c | k, got c={c}, k={k}")
    gd = group_data(a, c, k)
    with mp.workprec(prec + _GUARD_BITS):
        total = mp.mpc(0)
        for h in _units(k):
            hp = inv_neg(h, k)
            if (a * hp) % c == 0:
                raise InternalConsistencyError(f"cot pole at h={h}", witness=h)
            theta = (
                ratio_theta_even(h, k)
                - Fraction(2 * hp * a * a * gd.k1, c)
                + Fraction(2 * (n * h + m * hp), k)
            )
            ang = mp.mpf((a * hp) % (2 * c)) / c
            total += exp_pi_i(theta) * mp.cospi(ang) / mp.sinpi(ang)
        total *= (-1) ** (gd.k1 + 1) * _tan_pi(a, c)
    with mp.workprec(prec):
        return ComplexVal(+total.real, +total.imag, prec)
