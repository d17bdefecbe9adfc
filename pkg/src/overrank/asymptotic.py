"""Circle-method asymptotics for rank coefficients and overpartition counts.

The main evaluator assembles, for coprime 0 < a < c with c > 2,

    i*sqrt(2/n) * sum_{k <= sqrt(n), c | k, k odd} B(-n, 0)/sqrt(k)
                 * sinh(pi*sqrt(n)/k)
  + 2*sqrt(2/n) * sum_{k <= sqrt(n), c not| k, k odd, c1 != 4}
                 sum_{r: delta > 0} D(-n, m)/sqrt(k)
                 * sinh(4*pi*sqrt(delta*n)/k)

keeping the full per-(k, r) term breakdown.  The truncation point is
N = floor(sqrt(n)); the remaining error is O(n^eps) with no explicit
constant, so callers compare against exact values rather than asserting
absolute error bounds.  The c1 = 4 branch is skipped by construction: its
only candidate term is impossible for odd k and coprime a, so it never
contributes a growing term.

Also here: Zuckerman's convergent series for the overpartition count
(the k-th term applies d/dn to sinh(pi*sqrt(n)/k)/sqrt(n) analytically)
and the equidistribution diagnostic for rank residue classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .arith import DEFAULT_PREC, exp_pi_i
from .expsums import (
    ComplexVal,
    delta_terms,
    group_data,
    kloosterman_B,
    kloosterman_D,
    ratio_theta_odd,
    _units,
)
from .qseries import RankTable

_GUARD_BITS = 16


@dataclass(frozen=True)
class EstimateTerm:
    kind: str  # "B" or "D"
    k: int
    r: int | None
    contribution: ComplexVal


@dataclass(frozen=True)
class Estimate:
    """Asymptotic evaluation of A(a/c; n) with its term breakdown."""

    a: int
    c: int
    n: int
    k_max: int
    value: ComplexVal
    terms: tuple


def estimate_A(a: int, c: int, n: int, prec: int = DEFAULT_PREC) -> Estimate:
    """Evaluate the truncated asymptotic series for A(a/c; n).

    Terms are accumulated in deterministic order (k ascending, then r), so
    repeated runs at the same precision agree bit for bit.
    """
    if c <= 2:
        raise ValueError("the asymptotic formula requires c > 2")
    if not 0 < a < c or math.gcd(a, c) != 1:
        raise ValueError(f"need coprime 0 < a < c, got a={a}, c={c}")
    if n < 1:
        raise ValueError("n must be >= 1")
    k_max = math.isqrt(n)
    terms = []
    work = prec + _GUARD_BITS
    with mp.workprec(work):
        pref = mp.sqrt(mp.mpf(2) / n)
        sqrt_n = mp.sqrt(mp.mpf(n))
        total = mp.mpc(0)
        for k in range(1, k_max + 1, 2):
            if k % c == 0:
                B = kloosterman_B(a, c, k, -n, 0, work)
                contrib = mp.mpc(0, 1) * pref * B.as_mpc() / mp.sqrt(k) * mp.sinh(mp.pi * sqrt_n / k)
                total += contrib
                terms.append(EstimateTerm("B", k, None, _round_cv(contrib, prec)))
            else:
                if group_data(a, c, k).c1 == 4:
                    continue
                for dt in delta_terms(a, c, k):
                    D = kloosterman_D(a, c, k, -n, dt.twice_m, work)
                    arg = 4 * mp.pi * mp.sqrt(mp.mpf(dt.delta.numerator * n) / dt.delta.denominator) / k
                    contrib = 2 * pref * D.as_mpc() / mp.sqrt(k) * mp.sinh(arg)
                    total += contrib
                    terms.append(EstimateTerm("D", k, dt.r, _round_cv(contrib, prec)))
        value = _round_cv(total, prec)
    return Estimate(a=a, c=c, n=n, k_max=k_max, value=value, terms=tuple(terms))


def _round_cv(z, prec: int) -> ComplexVal:
    with mp.workprec(prec):
        return ComplexVal(+z.real, +z.imag, prec)


def main_term(a: int, c: int, n: int, prec: int = DEFAULT_PREC):
    """The single largest-|contribution| term of estimate_A, or None if empty."""
    est = estimate_A(a, c, n, prec)
    if not est.terms:
        return None
    best = max(est.terms, key=lambda t: abs(t.contribution))
    return (best.kind, best.k, best.r, best.contribution)


def default_zuckerman_cap(n: int) -> int:
    """Empirical truncation for the convergent series: 5*ceil(sqrt(n))."""
    return 5 * math.isqrt(n - 1) + 5 if n > 1 else 5


def zuckerman_pbar(n: int, k_cap: int | None = None, prec: int = DEFAULT_PREC):
    """Convergent series value for the overpartition count of n.

    Sums over odd k <= k_cap the multiplier-twisted Kloosterman factor
    times d/dn[sinh(pi*sqrt(n)/k)/sqrt(n)], the derivative taken
    analytically:

        (pi/(2kn)) * cosh(pi*sqrt(n)/k) - (1/(2n^{3/2})) * sinh(pi*sqrt(n)/k).

    Rounds to the exact count once k_cap is modestly past sqrt(n); the
    default cap is heuristic, not paper-prescribed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if k_cap is None:
        k_cap = default_zuckerman_cap(n)
    if k_cap < 1:
        raise ValueError("k_cap must be >= 1")
    with mp.workprec(prec + _GUARD_BITS):
        sqrt_n = mp.sqrt(mp.mpf(n))
        total = mp.mpf(0)
        for k in range(1, k_cap + 1, 2):
            inner = mp.mpc(0)
            for h in _units(k):
                theta = ratio_theta_odd(h, k) - Fraction(2 * n * h, k)
                inner += exp_pi_i(theta)
            arg = mp.pi * sqrt_n / k
            deriv = (mp.pi / (2 * k * n)) * mp.cosh(arg) - mp.sinh(arg) / (2 * n * sqrt_n)
            total += mp.sqrt(k) * inner.real * deriv
        total /= 2 * mp.pi
    with mp.workprec(prec):
        return +total


def nearest_int(x) -> int:
    """Round an mpf to the nearest integer exactly (no precision loss).

    int(x) truncates the mantissa exactly; only the fractional part goes
    through floating point, so values far beyond 2^53 round correctly.
    """
    with mp.extraprec(16):
        base = int(x)
        frac = x - base
        if frac >= mp.mpf("0.5"):
            return base + 1
        if frac <= mp.mpf("-0.5"):
            return base - 1
        return base


def zuckerman_pbar_int(n: int, k_cap: int | None = None, prec: int = DEFAULT_PREC) -> int:
    """Zuckerman series value rounded to the nearest integer."""
    return nearest_int(zuckerman_pbar(n, k_cap, prec))


def equidistribution_report(c: int, n: int, t: RankTable) -> list:
    """Exact ratios c*N(a, c, n)/pbar(n) for 0 <= a < c, with float values.

    The ratios tend to 1; the report is the diagnostic behind the
    equidistribution statement for rank residue classes.
    """
    if c < 2:
        raise ValueError("modulus c must be >= 2")
    pb = t.pbar(n)
    out = []
    for a in range(c):
        ratio = Fraction(c * t.class_counts(c, n)[a], pb)
        out.append((a, ratio, float(ratio)))
    return out
