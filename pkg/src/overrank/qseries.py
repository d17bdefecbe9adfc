"""Exact overpartition counts, rank tables, and root-of-unity evaluations.

An overpartition is a partition in which the first occurrence of a part
value may be overlined; its rank is the largest part minus the number of
parts.  N(m, n) denotes the number of overpartitions of n with rank m;
everything in this module is computed with exact integer arithmetic.

The full rank table is expanded from the Lambert-series form of the
two-variable generating function

    P(q) * (1 + 2 * sum_{j>=1} (2 - u - 1/u) * (-1)^j * q^{j^2+j}
                              / ((1 - u q^j)(1 - u^{-1} q^j)))

with P(q) the overpartition generating function.  Each geometric expansion
1/(1 - u^{±1} q^j) contributes a u-symmetric block at q^{j^2+j+js}, so the
u-coefficient columns have tiny integer entries and the heavy lifting is a
single truncated convolution with P(q) per column.  That convolution is
done by Kronecker substitution: pack the column and P(q) into one big
integer each, multiply, and read the coefficients back out of the product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp

from .arith import DEFAULT_PREC
from .errors import InternalConsistencyError
from .groupring import GroupRingElt, rational_value_at_primitive_root

ENUMERATION_CAP = 30

# Hard ceiling for exact tables unless explicitly forced; memory grows like
# O(n_max^2) integers of ~pi*sqrt(n_max)/log(2) bits each.
N_MAX_CAP = 2500


@dataclass
class IntSeries:
    """Truncated power series in q with arbitrary-precision integer coefficients.

    coeffs[e] is the coefficient of q^e, valid for 0 <= e <= order.
    Arithmetic truncates to the smaller order of the operands; nothing is
    ever extrapolated past the truncation point.
    """

    coeffs: list
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("len(coeffs) must equal order + 1")

    def __getitem__(self, e: int) -> int:
        if not 0 <= e <= self.order:
            raise IndexError(f"exponent {e} outside truncation order {self.order}")
        return self.coeffs[e]

    def __add__(self, other: "IntSeries") -> "IntSeries":
        order = min(self.order, other.order)
        return IntSeries([self.coeffs[e] + other.coeffs[e] for e in range(order + 1)], order)

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        order = min(self.order, other.order)
        out = [0] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a:
                for j in range(order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return IntSeries(out, order)

    def invert_unit(self) -> "IntSeries":
        """Multiplicative inverse of a series with constant term +/-1."""
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise ValueError("constant term must be a unit (+1 or -1)")
        out = [0] * (self.order + 1)
        out[0] = a0
        for e in range(1, self.order + 1):
            acc = 0
            for j in range(1, e + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[e - j]
            out[e] = -a0 * acc
        return IntSeries(out, self.order)


def pbar_series(n_max: int) -> IntSeries:
    """Overpartition counts: product over j of (1+q^j)/(1-q^j) to order n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    coeffs = [0] * (n_max + 1)
    coeffs[0] = 1
    for j in range(1, n_max + 1):
        for t in range(n_max, j - 1, -1):  # multiply by (1 + q^j)
            coeffs[t] += coeffs[t - j]
        for t in range(j, n_max + 1):  # multiply by 1/(1 - q^j)
            coeffs[t] += coeffs[t - j]
    return IntSeries(coeffs, n_max)


@dataclass(frozen=True)
class Overpartition:
    """Non-increasing parts plus the set of part values that are overlined."""

    parts: tuple
    overlined: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "overlined", frozenset(self.overlined))
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be non-increasing")
        if not self.overlined <= set(self.parts):
            raise ValueError("every overlined value must occur among the parts")

    @property
    def n(self) -> int:
        return sum(self.parts)


def rank(op: Overpartition) -> int:
    """Largest part minus number of parts; overlines do not matter.

    The empty overpartition is assigned rank 0, which makes the rank table
    entry N(0, 0) = 1 and the constant term of every root-of-unity series
    equal to 1.
    """
    if not op.parts:
        return 0
    return op.parts[0] - len(op.parts)


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def enumerate_overpartitions(n: int, cap: int = ENUMERATION_CAP) -> list:
    """All overpartitions of n, duplicate-free (brute-force oracle).

    Refuses n above `cap` to guard the combinatorial explosion; the count
    grows like exp(pi*sqrt(n)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    out = []
    for parts in _partitions(n, n if n else 1):
        values = sorted(set(parts), reverse=True)
        for mask in range(1 << len(values)):
            overlined = frozenset(v for i, v in enumerate(values) if (mask >> i) & 1)
            out.append(Overpartition(parts, overlined))
    return out


@dataclass
class RankTable:
    """Exact triangle of rank counts N(m, n) for 0 <= n <= n_max.

    Only m >= 0 is stored (N(m, n) = N(-m, n)); rows[n][m] holds N(m, n)
    for 0 <= m < max(1, n), all other entries being zero.  Immutable after
    construction; concurrent readers are safe.
    """

    n_max: int
    rows: list
    _class_cache: dict = field(default_factory=dict, repr=False)

    def count(self, m: int, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n={n} outside table range 0..{self.n_max}")
        m = abs(m)
        row = self.rows[n]
        return row[m] if m < len(row) else 0

    def pbar(self, n: int) -> int:
        row = self.rows[n]
        return row[0] + 2 * sum(row[1:])

    def class_counts(self, c: int, n: int) -> tuple:
        """Vector of N(a, c, n) = sum over ranks congruent to a mod c."""
        if c < 1:
            raise ValueError("modulus c must be >= 1")
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n={n} outside table range 0..{self.n_max}")
        key = (c, n)
        cached = self._class_cache.get(key)
        if cached is not None:
            return cached
        out = [0] * c
        row = self.rows[n]
        out[0] += row[0]
        for m in range(1, len(row)):
            v = row[m]
            if v:
                out[m % c] += v
                out[-m % c] += v
        result = tuple(out)
        self._class_cache[key] = result
        return result


def _rank_columns(n_max: int) -> list:
    """u-coefficient columns of the Lambert-series core, m >= 0.

    cols[m][e] is the coefficient of u^m q^e in
    1 + 2*sum_j (-1)^j q^{j^2+j} (2-u-1/u) / ((1-u q^j)(1-u^{-1} q^j)),
    using the expansion over s >= 0 of the two geometric factors, which
    contributes (2-u-1/u) * (u^{-s} + u^{-s+2} + ... + u^s) at q^{j^2+j+js}.
    """
    cols = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    cols[0][0] = 1
    j = 1
    while j * j + j <= n_max:
        g = 2 if j % 2 == 0 else -2
        s = 0
        while True:
            e = j * j + j + j * s
            if e > n_max:
                break
            # (2 - u - 1/u) times the balanced block of parity s: at m >= 0
            # the coefficient is 2 on the block (m <= s, m = s mod 2) and
            # -1 for each block neighbor of m (m = s+1 mod 2).
            for m in range(s % 2, min(s, n_max) + 1, 2):
                cols[m][e] += 2 * g
            for m in range((s + 1) % 2, min(s + 1, n_max) + 1, 2):
                neighbors = (1 if abs(m - 1) <= s else 0) + (1 if m + 1 <= s else 0)
                cols[m][e] -= g * neighbors
            s += 1
        j += 1
    return cols


def _convolve_column(col: list, packed_pbar: int, width: int, n_max: int, lo: int) -> list:
    """Exact truncated convolution col (*) pbar via Kronecker substitution.

    col holds small signed integers; positive and negative parts are packed
    separately (radix 2^(8*width)) so no slot ever borrows, multiplied by
    the packed pbar integer, and slots lo..n_max of the difference are
    returned.
    """
    pos = bytearray(width * (n_max + 1))
    neg = bytearray(width * (n_max + 1))
    any_pos = any_neg = False
    for e, v in enumerate(col):
        if v > 0:
            pos[width * e : width * e + 4] = v.to_bytes(4, "little")
            any_pos = True
        elif v < 0:
            neg[width * e : width * e + 4] = (-v).to_bytes(4, "little")
            any_neg = True
    out_len = width * (2 * n_max + 2)
    ppos = (int.from_bytes(pos, "little") * packed_pbar).to_bytes(out_len, "little") if any_pos else None
    pneg = (int.from_bytes(neg, "little") * packed_pbar).to_bytes(out_len, "little") if any_neg else None
    result = []
    for t in range(lo, n_max + 1):
        v = int.from_bytes(ppos[width * t : width * (t + 1)], "little") if ppos else 0
        if pneg:
            v -= int.from_bytes(pneg[width * t : width * (t + 1)], "little")
        result.append(v)
    return result


def rank_table(n_max: int, force: bool = False) -> RankTable:
    """Exact N(m, n) for all n <= n_max, from the Lambert-series expansion.

    Runs in roughly O(n_max^2) bigint work and memory; n_max above
    N_MAX_CAP is refused unless force=True.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max > N_MAX_CAP and not force:
        raise ValueError(f"n_max={n_max} exceeds cap {N_MAX_CAP} (pass force=True to override)")
    pb = pbar_series(n_max).coeffs
    width = (pb[n_max].bit_length() + 18 + 7) // 8 + 1
    packed = bytearray(width * (n_max + 1))
    for e, v in enumerate(pb):
        packed[width * e : width * e + (v.bit_length() + 7) // 8] = v.to_bytes(
            (v.bit_length() + 7) // 8, "little"
        )
    packed_pbar = int.from_bytes(packed, "little")

    cols = _rank_columns(n_max)
    rows = [[0] * max(1, n) for n in range(n_max + 1)]
    for m in range(n_max + 1):
        lo = m if m else 0
        values = _convolve_column(cols[m], packed_pbar, width, n_max, lo)
        for t, v in zip(range(lo, n_max + 1), values):
            if v:
                if m >= max(1, t):
                    raise InternalConsistencyError(
                        f"nonzero rank count at m={m} >= n={t}", witness=t
                    )
                rows[t][m] = v
    table = RankTable(n_max, [tuple(r) for r in rows])
    for n in {0, n_max // 2, n_max}:
        if table.pbar(n) != pb[n]:
            raise InternalConsistencyError(f"row sum != pbar at n={n}", witness=n)
    return table


def rank_class(a: int, c: int, n: int, t: RankTable) -> int:
    """N(a, c, n): overpartitions of n with rank congruent to a mod c."""
    if c < 2:
        raise ValueError("modulus c must be >= 2")
    if not 0 <= a < c:
        raise ValueError(f"need 0 <= a < c, got a={a}")
    return t.class_counts(c, n)[a]


def zeta_eval(a: int, c: int, n: int, t: RankTable, prec: int = DEFAULT_PREC):
    """A(a/c; n): the rank generating function coefficient at u = zeta_c^a.

    Returns the exact group-ring element sum_j N(j, c, n) * x^(a*j) together
    with its real numeric value.  The value is real because N(m, n) is
    symmetric in m; the imaginary residual is checked against 1e-20 of the
    magnitude and a failure is an internal-consistency error.
    """
    if not 0 < a < c:
        raise ValueError(f"need 0 < a < c, got a={a}, c={c}")
    if math.gcd(a, c) != 1:
        raise ValueError(f"a={a} and c={c} are not coprime")
    cc = t.class_counts(c, n)
    coeffs = [0] * c
    for j, v in enumerate(cc):
        coeffs[(a * j) % c] += v
    elt = GroupRingElt(c, tuple(coeffs))
    # The sum cancels down from coefficients of size ~pbar(n), so evaluate
    # with enough headroom that the residual is absolute at 2^-prec scale.
    work = prec + max(v.bit_length() for v in coeffs) + 16
    val = elt.eval_numeric(work)
    if abs(val.imag) > 1e-20 * max(1.0, abs(val.real)):
        raise InternalConsistencyError(
            f"imaginary residual {val.imag} too large for A({a}/{c};{n})", witness=n
        )
    with mp.workprec(prec):
        return elt, +val.real


def orthogonality_decompose(a: int, c: int, n: int, t: RankTable) -> int:
    """Recover N(a, c, n) by orthogonality of roots of unity, exactly.

    Forms (1/c) * sum_{j=0}^{c-1} x^{-aj} * E(x^j) in the group ring, where
    E is the mod-c class-count element of row n (the j=0 term contributes
    pbar(n)).  The aggregate has coefficients constant on gcd classes, so
    its value at the primitive root is extracted exactly; a non-integer
    outcome raises InternalConsistencyError.
    """
    if c < 2:
        raise ValueError("modulus c must be >= 2")
    if not 0 <= a < c:
        raise ValueError(f"need 0 <= a < c, got a={a}")
    cc = t.class_counts(c, n)
    base = GroupRingElt(c, cc)
    total = GroupRingElt.zero(c)
    for j in range(c):
        total = total + base.map_exponents(j).shift(-a * j)
    value = rational_value_at_primitive_root(total)
    if value % c:
        raise InternalConsistencyError(
            f"orthogonality sum {value} not divisible by c={c}", witness=n
        )
    return value // c
