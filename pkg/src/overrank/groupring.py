"""Integral group ring of Z/c and exact evaluation at roots of unity.

Elements are integer coefficient vectors indexed by exponents of a formal
generator x with x^c = 1.  Two exact evaluation routes at the primitive
c-th root of unity are provided:

* `eval_cyclotomic` maps an element into Z[zeta_c] by reducing the lifted
  polynomial modulo the c-th cyclotomic polynomial (monic, so the division
  is exact over the integers).  Equality of two elements at zeta_c is
  equality of these coordinate vectors.

* `rational_value_at_primitive_root` handles the special elements whose
  coefficients are constant on each gcd class of exponents; for those the
  value at zeta_c is rational and equals F_0 + sum_g mu(c/g) * T_g by the
  Ramanujan-sum identity.  Elements produced by orthogonality averaging
  have this shape, so no cyclotomic reduction is needed on that route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp

from .arith import DEFAULT_PREC, exp_2pi_i
from .errors import InternalConsistencyError
from fractions import Fraction


@dataclass(frozen=True)
class GroupRingElt:
    """Element of Z[Z/c]: coeffs[j] is the coefficient of x^j."""

    c: int
    coeffs: tuple

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("modulus c must be >= 1")
        if len(self.coeffs) != self.c:
            raise ValueError("coefficient vector must have length c")
        object.__setattr__(self, "coeffs", tuple(int(v) for v in self.coeffs))

    @classmethod
    def zero(cls, c: int) -> "GroupRingElt":
        return cls(c, (0,) * c)

    @classmethod
    def monomial(cls, c: int, exponent: int, coefficient: int = 1) -> "GroupRingElt":
        v = [0] * c
        v[exponent % c] = coefficient
        return cls(c, tuple(v))

    def _require_same_ring(self, other: "GroupRingElt") -> None:
        if self.c != other.c:
            raise ValueError("elements live in different group rings")

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._require_same_ring(other)
        return GroupRingElt(self.c, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        self._require_same_ring(other)
        return GroupRingElt(self.c, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt(self.c, tuple(-a for a in self.coeffs))

    def scale(self, n: int) -> "GroupRingElt":
        return GroupRingElt(self.c, tuple(n * a for a in self.coeffs))

    def __mul__(self, other: "GroupRingElt") -> "GroupRingElt":
        """Cyclic convolution: indices add modulo c."""
        self._require_same_ring(other)
        out = [0] * self.c
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % self.c] += a * b
        return GroupRingElt(self.c, tuple(out))

    def shift(self, j: int) -> "GroupRingElt":
        """Multiplication by x^j."""
        j %= self.c
        return GroupRingElt(self.c, self.coeffs[-j:] + self.coeffs[:-j] if j else self.coeffs)

    def map_exponents(self, j: int) -> "GroupRingElt":
        """Ring map x -> x^j (image of the element under zeta -> zeta^j)."""
        out = [0] * self.c
        for s, a in enumerate(self.coeffs):
            if a:
                out[(j * s) % self.c] += a
        return GroupRingElt(self.c, tuple(out))

    def eval_numeric(self, prec: int = DEFAULT_PREC):
        """Value at the primitive c-th root of unity, as an mpmath complex."""
        with mp.workprec(prec):
            total = mp.mpc(0)
            for s, a in enumerate(self.coeffs):
                if a:
                    total += a * exp_2pi_i(Fraction(s, self.c))
            return total

    def eval_cyclotomic(self, power: int = 1) -> tuple:
        """Exact coordinates of the value at zeta_c^power in Z[zeta_c].

        Returns the length-phi(c) integer vector of the residue modulo the
        c-th cyclotomic polynomial, in the power basis 1, zeta, zeta^2, ...
        """
        phi = cyclotomic_poly(self.c)
        lifted = [0] * self.c
        for s, a in enumerate(self.coeffs):
            lifted[(power * s) % self.c] += a
        rem = _poly_mod_monic(lifted, phi)
        rem += [0] * (len(phi) - 1 - len(rem))
        return tuple(rem)

    def is_zero_at_primitive_root(self, power: int = 1) -> bool:
        return all(v == 0 for v in self.eval_cyclotomic(power))


@lru_cache(maxsize=None)
def cyclotomic_poly(c: int) -> tuple:
    """Coefficients (ascending) of the c-th cyclotomic polynomial."""
    if c == 1:
        return (-1, 1)
    # x^c - 1 divided by the product of Phi_d over proper divisors d of c.
    num = [-1] + [0] * (c - 1) + [1]
    for d in range(1, c):
        if c % d == 0:
            num = _poly_quotient_monic(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_quotient_monic(num: list, den: list) -> list:
    """Exact quotient of integer polynomials, denominator monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1]
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


def _poly_mod_monic(poly: list, den: tuple) -> list:
    rem = list(poly)
    dn = len(den) - 1
    for i in range(len(rem) - 1, dn - 1, -1):
        coef = rem[i]
        if coef:
            rem[i] = 0
            for j in range(dn):
                rem[i - dn + j] -= coef * den[j]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def rational_value_at_primitive_root(elt: GroupRingElt) -> int:
    """Exact integer value at zeta_c of a gcd-class-constant element.

    Requires the coefficients at all nonzero exponents s to depend only on
    gcd(s, c); such elements arise from averaging over the full group, and
    their value at the primitive root is F_0 + sum over proper divisors g
    of mu(c/g) * T_g, where T_g is the common coefficient on the class of
    gcd g.  A non-constant class means the element is not of the expected
    shape and the computation that produced it is inconsistent.
    """
    c = elt.c
    if c == 1:
        return elt.coeffs[0]
    class_value = {}
    for s in range(1, c):
        g = math.gcd(s, c)
        v = elt.coeffs[s]
        if g in class_value:
            if class_value[g] != v:
                raise InternalConsistencyError(
                    f"coefficients not constant on gcd class {g} of Z/{c}", witness=s
                )
        else:
            class_value[g] = v
    total = elt.coeffs[0]
    for g, v in class_value.items():
        total += mobius(c // g) * v
    return total
