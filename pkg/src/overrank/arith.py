"""Exact modular arithmetic: sawtooth, Dedekind sums, eta multipliers.

The multiplier omega(h, k) = exp(pi*i*S(h, k)) attached to the modular
transformation of the partition generating function is kept exact here:
S(h, k) is a rational number (a Dedekind sum), so products and ratios of
multipliers are tracked as rational multiples of pi and converted to
floating point only at the final numeric-evaluation step.

Two evaluators are provided for S(h, k): a fast one running the Euclidean
reciprocity recursion, and a direct O(k) summation kept as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

DEFAULT_PREC = 128

# Guard bits added on top of the requested working precision for
# intermediate arithmetic.
_GUARD_BITS = 16


def sawtooth(x) -> Fraction:
    """((x)) = x - floor(x) - 1/2 for non-integers, 0 for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def _check_hk(h: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"modulus k={k} must be >= 1")
    if not (0 <= h < k or (h, k) == (0, 1)):
        raise ValueError(f"need 0 <= h < k, got h={h}, k={k}")
    if h == 0 and k != 1:
        raise ValueError("h=0 is only allowed together with k=1")
    if math.gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} are not coprime")


@lru_cache(maxsize=None)
def dedekind_sum(h: int, k: int) -> Fraction:
    """Dedekind sum S(h, k), evaluated through the reciprocity law.

    Repeatedly applies S(h, k) = -1/4 + (h^2 + k^2 + 1)/(12hk) - S(k mod h, h),
    a Euclidean-time recursion; agrees exactly with `dedekind_sum_direct`.
    """
    _check_hk(h, k)
    s = Fraction(0)
    sign = 1
    while h:
        s += sign * (Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k))
        h, k = k % h, h
        sign = -sign
    return s


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """S(h, k) by direct summation of sawtooth products (O(k) oracle).

    For 0 < mu < k the factors are (2*mu - k)/(2k) and (2*(h*mu mod k) - k)
    /(2k) (zero when k divides h*mu), so the sum is accumulated over the
    common denominator 4k^2 in plain integers.
    """
    _check_hk(h, k)
    acc = 0
    for mu in range(1, k):
        r = (h * mu) % k
        if r:
            acc += (2 * mu - k) * (2 * r - k)
    return Fraction(acc, 4 * k * k)


@dataclass(frozen=True)
class Phase:
    """The unit complex number exp(pi*i*theta) with theta an exact rational.

    theta is stored reduced modulo 2, so multiplication is addition of
    thetas without loss.
    """

    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", Fraction(self.theta) % 2)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.theta + other.theta)

    def conjugate(self) -> "Phase":
        return Phase(-self.theta)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.theta * n)

    def value(self, prec: int = DEFAULT_PREC):
        """Numeric value as an mpmath complex number at `prec` bits."""
        with mp.workprec(prec):
            return exp_pi_i(self.theta)


def omega(h: int, k: int) -> Phase:
    """Eta multiplier omega(h, k) = exp(pi*i*S(h, k)) as an exact phase."""
    return Phase(dedekind_sum(h, k))


@lru_cache(maxsize=1 << 16)
def _cospi_sinpi(num: int, den: int, prec: int):
    with mp.workprec(prec):
        x = mp.mpf(num) / den
        return mp.cospi(x), mp.sinpi(x)


def exp_pi_i(theta: Fraction):
    """exp(pi*i*theta) at the current mpmath working precision.

    theta is reduced modulo 2 exactly before any floating-point conversion,
    so huge rational angles lose nothing to argument reduction.
    """
    theta = Fraction(theta) % 2
    c, s = _cospi_sinpi(theta.numerator, theta.denominator, mp.prec + _GUARD_BITS)
    return mp.mpc(c, s)


def exp_2pi_i(frac: Fraction):
    """exp(2*pi*i*frac) at the current working precision (frac exact)."""
    return exp_pi_i(2 * Fraction(frac))


def inv_neg_even(h: int, k: int) -> int:
    """The unique even h' in (-k, k] with h*h' = -1 (mod k), for odd k.

    This is the representative convention used when evaluating the
    Kloosterman-type sums attached to odd k; every factor involved depends
    on h' only modulo 2k, and evenness pins h' modulo 2k.  For k=1 the
    conventional value is 0.
    """
    if k % 2 == 0:
        raise ValueError(f"k={k} must be odd (even k uses inv_neg)")
    if k == 1:
        return 0
    if math.gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} are not coprime")
    hp = (-pow(h, -1, k)) % k
    if hp % 2:
        hp -= k
    return hp


def inv_neg(h: int, k: int) -> int:
    """The representative of -h^{-1} mod k in [0, k); inv_neg(0, 1) = 0."""
    if k == 1:
        return 0
    if math.gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} are not coprime")
    return (-pow(h, -1, k)) % k
