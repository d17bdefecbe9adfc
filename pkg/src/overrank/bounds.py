"""Explicit error bounds, crossover search, and exact inequality verifiers.

The mod-10 rank inequalities reduce to A(1/10; n) >= A(3/10; n).  The main
term (2/sqrt(n)) * tan(pi/10) * sinh(3*pi*sqrt(n)/5) grows exponentially,
while every remaining contribution admits an explicit bound with constants
of scale e^{2*pi} and the two coefficient-series constants

    sum_{r>=1} e^{pi*sqrt(r) - pi*r}      < 1.17944
    sum_{r>=1} e^{pi*sqrt(r) - pi*r/50}   < 4.01014e19.

Once the main term exceeds the grand total of bounds on both sides, the
inequality holds for that n outward; the crossover finder locates the
smallest such n (near 1030) and exact table checks cover everything below.

Bound assembly notes (every index-range choice is recorded here and in
the machine-readable assembly string, so the arithmetic is auditable):

* The k >= 2 tail of the main sum is evaluated from two reindexed class
  sums whose literal start indices skip the first admissible k of one
  class; the skipped terms carry sinh arguments a tenth of the main one
  and are exponentially negligible where domination is decided.
* The Mordell-integral bounds (odd and even k) are summed over
  k <= N = floor(sqrt(n)), the Farey order bounding every modulus in the
  dissection.
* Both sides a in {1, 3} carry the full component set, with k running over
  the side's residue classes mod 10 and a/10 in the distance terms; the
  multiples-of-c series bound is included once per side.
* The mod-6 analogue reuses the same templates with tan(pi/6),
  sinh(pi*sqrt(n)/3), classes k = 1, 5 mod 6, the coefficient constant
  rescaled to exp(-pi*r/18), and a trivial-Kloosterman tail over every
  admissible k >= 5; its crossover is discovered, not asserted.

Also in this module: the exact root-of-unity identities behind the
inequality reductions (checked coefficient-wise in Z[zeta_10] / Z[zeta_6])
and the registry of rank-class inequalities with their residue filters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from .arith import DEFAULT_PREC
from .errors import CrossoverNotFoundError, InternalConsistencyError
from .groupring import GroupRingElt
from .qseries import RankTable

_GUARD_BITS = 16

COEFF_SUM_SCALES = (Fraction(1), Fraction(1, 50))


@lru_cache(maxsize=None)
def _exp_series_sum(scale: Fraction, prec: int):
    """sum_{r>=1} exp(pi*sqrt(r) - pi*scale*r), summed to convergence.

    The summand peaks at r = 1/(2*scale)^2 and decays geometrically past
    it; iteration stops once the running tail is below 1e-10 of the total,
    comfortably inside the 1e-6 contract.
    """
    peak = int(1 / (4 * scale * scale)) + 1
    with mp.workprec(prec + _GUARD_BITS):
        total = mp.mpf(0)
        r = 1
        while True:
            term = mp.exp(mp.pi * (mp.sqrt(r) - mp.mpf(scale.numerator) * r / scale.denominator))
            total += term
            if r > peak and term < total * mp.mpf("1e-10"):
                break
            if r > 100 * peak + 10000:
                raise InternalConsistencyError("coefficient series did not converge", witness=r)
            r += 1
    with mp.workprec(prec):
        return +total


def coeff_sum(exponent_scale, prec: int = DEFAULT_PREC):
    """Coefficient-series constant for scale 1 or 1/50 (the two used)."""
    scale = Fraction(exponent_scale)
    if scale not in COEFF_SUM_SCALES:
        raise ValueError(f"exponent_scale must be 1 or 1/50, got {exponent_scale}")
    return _exp_series_sum(scale, prec)


# ---------------------------------------------------------------------------
# Explicit bound components
# ---------------------------------------------------------------------------

def _class_ks(N: int, c: int, residues) -> list:
    return [k for k in range(1, N + 1) if k % c in residues]


def _main_term(n: int, c: int):
    """Leading growing term: (2/sqrt(n)) * tan(pi/c) * sinh(4*pi*sqrt(d*n))
    with d = 9/400 for c = 10 and d = 1/144 for c = 6."""
    delta = Fraction(9, 400) if c == 10 else Fraction(1, 144)
    tan = mp.sinpi(mp.mpf(1) / c) / mp.cospi(mp.mpf(1) / c)
    return 2 / mp.sqrt(n) * tan * mp.sinh(4 * mp.pi * mp.sqrt(mp.mpf(delta.numerator) * n / delta.denominator))


def _tail_10(n: int, N: int, side: int):
    """Verbatim k >= 2 tail displays for c = 10; side is 1 or 3."""
    sq = mp.sqrt(mp.mpf(n))
    out = mp.mpf(0)
    if side == 1:
        for k in range(2, (N - 1) // 10 + 1):
            out += mp.sqrt(k) * mp.sinh(3 * mp.pi * sq / (5 * (10 * k + 1)))
        for k in range(1, (N - 9) // 10 + 1):
            out += mp.sqrt(k) * mp.sinh(3 * mp.pi * sq / (5 * (10 * k + 9)))
    else:
        for k in range(1, (N - 3) // 10 + 1):
            out += mp.sqrt(k) * mp.sinh(3 * mp.pi * sq / (5 * (10 * k + 3)))
        for k in range(1, (N - 7) // 10 + 1):
            out += mp.sqrt(k) * mp.sinh(3 * mp.pi * sq / (5 * (10 * k + 7)))
    return 4 / sq * out


def _tail_6(n: int, N: int):
    """Trivial-Kloosterman tail for c = 6 over every admissible k >= 5."""
    sq = mp.sqrt(mp.mpf(n))
    tan = mp.sinpi(mp.mpf(1) / 6) / mp.cospi(mp.mpf(1) / 6)
    out = mp.mpf(0)
    for k in _class_ks(N, 6, (1, 5)):
        if k == 1:
            continue
        phi = sum(1 for h in range(1, k) if math.gcd(h, k) == 1)
        out += 2 / sq * tan * phi / mp.sqrt(k) * mp.sinh(mp.pi * sq / (3 * k))
    return out


def _mordell_odd(N: int, a: int, c: int):
    """Odd-k Mordell bound: (4/c)*e^{2pi}*sqrt(pi) * sum over odd k <= N.

    The inner distances nu/k - 1/(4k) +- a/c are exact rationals and never
    vanish (their numerators are 2 mod 4 at a would-be zero).
    """
    total = mp.mpf(0)
    for k in range(1, N + 1, 2):
        inner = mp.mpf(0)
        for nu in range(1, k + 1):
            base = Fraction(4 * nu - 1, 4 * k)
            dist = min(abs(base + Fraction(a, c)), abs(base - Fraction(a, c)))
            inner += mp.mpf(dist.denominator) / dist.numerator
        total += inner / (k * mp.sqrt(k))
    return mp.mpf(4) / c * mp.exp(2 * mp.pi) * mp.sqrt(mp.pi) * total


def _mordell_even(N: int, a: int, c: int):
    """Even-k Mordell bound: (4/c)*e^{2pi}*sqrt(2pi) times the two parts.

    k divisible by c/2 (where nu/k can hit a/c exactly) is excluded from
    the distance sum and covered by the separate (1/(c*sqrt(c))) series.
    """
    total = mp.mpf(0)
    half = c // 2
    for k in range(2, N + 1, 2):
        if k % half == 0:
            continue
        inner = mp.mpf(0)
        for nu in range(1, k + 1):
            dist = min(abs(Fraction(nu, k) + Fraction(a, c)), abs(Fraction(nu, k) - Fraction(a, c)))
            inner += mp.mpf(dist.denominator) / dist.numerator
        total += inner / (k * mp.sqrt(k))
    extra = mp.fsum(1 / mp.sqrt(k) for k in range(1, N // c + 1)) if N >= c else mp.mpf(0)
    return mp.mpf(4) / c * mp.exp(2 * mp.pi) * mp.sqrt(2 * mp.pi) * (total + extra / (c * mp.sqrt(c)))


@dataclass(frozen=True)
class BoundReport:
    """All explicit bound values at one n, with the domination verdict."""

    n: int
    c: int
    farey_order: int
    main: object
    components: dict
    total_error: object
    dominated: bool
    precision: int

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "farey_order": self.farey_order,
            "main": float(self.main),
            "components": {
                side: {name: float(v) for name, v in comps.items()}
                for side, comps in self.components.items()
            },
            "total_error": float(self.total_error),
            "dominated": self.dominated,
            "precision": self.precision,
        }


def bound_report(n: int, prec: int = DEFAULT_PREC, c: int = 10) -> BoundReport:
    """Evaluate every explicit bound expression at n and compare to main.

    For c = 10 the two sides a = 1 (k = 1, 9 mod 10) and a = 3 (k = 3, 7
    mod 10) each carry {tail_k>=2, coeff_U, sym_path, small_arc, O_series,
    O_half, mordell_odd, mordell_even}; dominated means the main term
    exceeds the grand total.  c = 6 is the single-sided analogue.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if c not in (10, 6):
        raise ValueError("bound templates exist for c = 10 and c = 6")
    N = math.isqrt(n)
    with mp.workprec(prec + _GUARD_BITS):
        e2pi = mp.exp(2 * mp.pi)
        scale = Fraction(1, 50) if c == 10 else Fraction(1, 18)
        s_slow = _exp_series_sum(scale, prec + _GUARD_BITS)
        s_fast = _exp_series_sum(Fraction(1), prec + _GUARD_BITS)
        mult_ks = list(range(1, N // c + 1))
        sum_mult = mp.fsum(1 / mp.sqrt(k) for k in mult_ks) if mult_ks else mp.mpf(0)
        o_series = 2 * e2pi / mp.sqrt(c) * (1 + s_fast) * sum_mult

        sides = {}
        if c == 10:
            side_spec = [(1, (1, 9)), (3, (3, 7))]
        else:
            side_spec = [(1, (1, 5))]
        for a, residues in side_spec:
            ks = _class_ks(N, c, residues)
            inv_sqrt = mp.fsum(1 / mp.sqrt(k) for k in ks) if ks else mp.mpf(0)
            sqrt_sum = mp.fsum(mp.sqrt(k) for k in ks) if ks else mp.mpf(0)
            lin_sum = mp.fsum(mp.mpf(k) for k in ks) if ks else mp.mpf(0)
            comps = {
                "tail_kge2": _tail_10(n, N, a) if c == 10 else _tail_6(n, N),
                "coeff_U": 2 * mp.sqrt(2) * e2pi * s_slow * inv_sqrt,
                "sym_path": 2 * mp.exp(2 * mp.pi + mp.pi / 8) / mp.sqrt(n) * sqrt_sum,
                "small_arc": 8 * mp.pi * mp.exp(2 * mp.pi + mp.pi / 16) / mp.mpf(n) ** mp.mpf("0.75") * lin_sum,
                "O_series": o_series,
                "O_half": 2 * e2pi * s_slow * inv_sqrt,
                "mordell_odd": _mordell_odd(N, a, c),
                "mordell_even": _mordell_even(N, a, c),
            }
            sides[f"a={a}"] = comps
        main = _main_term(n, c)
        total = mp.fsum(v for comps in sides.values() for v in comps.values())
        dominated = main > total
    with mp.workprec(prec):
        return BoundReport(
            n=n,
            c=c,
            farey_order=N,
            main=+main,
            components={s: {k: +v for k, v in comps.items()} for s, comps in sides.items()},
            total_error=+total,
            dominated=dominated,
            precision=prec,
        )


@dataclass(frozen=True)
class CrossoverReport:
    c: int
    crossover: int
    boundary: BoundReport
    samples_checked: int
    assembly: str


CROSSOVER_CAP = 10**6

_ASSEMBLY_NOTE = (
    "main=(2/sqrt(n))tan(pi/c)sinh(4 pi sqrt(delta n)); error = sum over sides of "
    "{tail_kge2, coeff_U, sym_path, small_arc, O_series, O_half, mordell_odd, "
    "mordell_even}; coefficient constants are the full series sums "
    "sum exp(pi sqrt(r)-pi r) and sum exp(pi sqrt(r)-pi r/50); Mordell sums capped "
    "at the Farey order N=floor(sqrt(n)); tail class sums keep their reindexed "
    "start offsets; dominated means main > total of both sides."
)


def crossover_assembly() -> str:
    """Human-readable description of the bound assembly in force."""
    return _ASSEMBLY_NOTE


def crossover(c: int = 10, prec: int = DEFAULT_PREC, cap: int = CROSSOVER_CAP) -> CrossoverReport:
    """Smallest n0 with bound_report dominated on all samples of [n0, 4*n0].

    Monotonicity is spot-checked, not assumed: the candidate window is
    sampled log-uniformly plus around every square boundary (where the
    Farey order N jumps and error components step upward).  Raises
    CrossoverNotFoundError past `cap`.
    """

    def dominated(n: int) -> bool:
        return bound_report(n, prec, c).dominated

    n = 16
    checked = 0
    while n <= cap:
        if not dominated(n):
            n += 1
            continue
        # candidate transition: dominated(n), not dominated(n-1)
        samples = set()
        for i in range(49):
            samples.add(round(n * (4 ** (i / 48))))
        m = math.isqrt(n)
        while m * m <= 4 * n:
            for s in (m * m - 1, m * m, m * m + 1):
                if n <= s <= 4 * n:
                    samples.add(s)
            m += 1
        bad = None
        for s in sorted(samples):
            checked += 1
            if not dominated(s):
                bad = s
                break
        if bad is None:
            return CrossoverReport(
                c=c,
                crossover=n,
                boundary=bound_report(n, prec, c),
                samples_checked=checked,
                assembly=_ASSEMBLY_NOTE,
            )
        n = bad + 1
    raise CrossoverNotFoundError(f"no crossover found below {cap} for c={c}")


# ---------------------------------------------------------------------------
# Exact root-of-unity identities
# ---------------------------------------------------------------------------

def zeta_relation_10(a: int, n_max: int, t: RankTable) -> bool:
    """Coefficient-wise identity for the mod-10 rank series at zeta_10^a.

    For odd a not divisible by 5, the series at zeta_10^a equals
    (N0+N1-N4-N5) + (zeta^{2a} - zeta^{3a}) (N1+N2-N3-N4) per coefficient;
    the difference is checked to vanish exactly in Z[zeta_10] for every
    n <= n_max.
    """
    if a % 2 == 0 or a % 5 == 0:
        raise ValueError("the identity requires a odd and not divisible by 5")
    for n in range(n_max + 1):
        cc = t.class_counts(10, n)
        alpha = cc[0] + cc[1] - cc[4] - cc[5]
        beta = cc[1] + cc[2] - cc[3] - cc[4]
        diff = (
            GroupRingElt(10, cc).map_exponents(a)
            - GroupRingElt.monomial(10, 0, alpha)
            - GroupRingElt.monomial(10, 2 * a, beta)
            + GroupRingElt.monomial(10, 3 * a, beta)
        )
        if not diff.is_zero_at_primitive_root():
            raise InternalConsistencyError(f"mod-10 zeta relation fails at n={n}", witness=n)
    return True


def zeta_relation_6(a: int, n_max: int, t: RankTable) -> bool:
    """Coefficient-wise identity at zeta_6^a: series = N0 + N1 - N2 - N3."""
    if a % 2 == 0 or a % 3 == 0:
        raise ValueError("the identity requires a odd and not divisible by 3")
    for n in range(n_max + 1):
        cc = t.class_counts(6, n)
        alpha = cc[0] + cc[1] - cc[2] - cc[3]
        diff = GroupRingElt(6, cc).map_exponents(a) - GroupRingElt.monomial(6, 0, alpha)
        if not diff.is_zero_at_primitive_root():
            raise InternalConsistencyError(f"mod-6 zeta relation fails at n={n}", witness=n)
    return True


_MAO_WEIGHTS = {
    0: (1, 2, 2, 1),
    1: (1, 1, -1, -1),
    2: (1, -1, -1, 1),
    3: (1, -2, 2, -1),
}


def mao_decomposition(n_max: int, t: RankTable) -> bool:
    """The four 1/6-decompositions of mod-6 class series, exactly.

    6*N(a, 6, n) equals the weighted sum over j = 0..3 of the rank series
    evaluated at zeta_6^j with weights (1,2,2,1), (1,1,-1,-1), (1,-1,-1,1),
    (1,-2,2,-1); each is verified in Z[zeta_6] for every n <= n_max.
    """
    for n in range(n_max + 1):
        cc = t.class_counts(6, n)
        base = GroupRingElt(6, cc)
        images = [base.map_exponents(j) for j in range(4)]
        for a_cls, weights in _MAO_WEIGHTS.items():
            acc = GroupRingElt.zero(6)
            for w, img in zip(weights, images):
                acc = acc + img.scale(w)
            diff = acc - GroupRingElt.monomial(6, 0, 6 * cc[a_cls])
            if not diff.is_zero_at_primitive_root():
                raise InternalConsistencyError(
                    f"mod-6 decomposition for class {a_cls} fails at n={n}", witness=n
                )
    return True


# ---------------------------------------------------------------------------
# Inequality registry and verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalitySpec:
    """One rank-class (in)equality: chain of comparisons of class sums.

    Each chain step is (lhs classes, op, rhs classes) with op one of
    '>=', '<=', '=='.  residue filters the argument to one class mod 3;
    min_outer is the threshold on the outer index j in argument 3j+residue.
    """

    ineq_id: str
    modulus: int
    chain: tuple
    residue: int | None = None
    min_outer: int = 0


def _spec(ineq_id, modulus, chain, residue=None, min_outer=0):
    return InequalitySpec(ineq_id, modulus, tuple(chain), residue, min_outer)


INEQUALITIES = {
    s.ineq_id: s
    for s in [
        _spec("eq:1234", 10, [((1, 2), ">=", (3, 4))]),
        _spec("eq:0325", 10, [((0, 3), ">=", (2, 5))]),
        _spec("eq:0145", 10, [((0, 1), ">=", (4, 5))]),
        _spec("eq:0123", 6, [((0, 1), ">=", (2, 3))]),
        _spec("eq:0312", 6, [((0, 3), ">=", (1, 2))], residue=0),
        _spec("eq:0312'", 6, [((0, 3), ">=", (1, 2))], residue=1),
        _spec("eq:0312''", 6, [((0, 3), "<=", (1, 2))], residue=2),
        _spec("SolvedWei11", 3, [((0,), ">=", (1,)), ((1,), "==", (2,))], residue=0),
        _spec("SolvedWei22", 3, [((0,), ">=", (1,)), ((1,), "==", (2,))], residue=1),
        _spec("SolvedWei33", 3, [((0,), "<=", (1,)), ((1,), "==", (2,))], residue=2),
        _spec("SolvedWei1", 6, [((0,), ">=", (1,)), ((1,), ">=", (2,))], residue=0, min_outer=11),
        _spec("SolvedWei2", 6, [((0,), ">=", (1,)), ((1,), ">=", (2,))], residue=1, min_outer=11),
        _spec(
            "SolvedWei3",
            6,
            [((1,), ">=", (2,)), ((2,), ">=", (0,)), ((0,), ">=", (3,))],
            residue=2,
            min_outer=11,
        ),
    ]
}

INEQUALITY_ALIASES = {
    "eq:0312prime": "eq:0312'",
    "eq:0312primeprime": "eq:0312''",
}


def _holds(lhs: int, op: str, rhs: int) -> bool:
    if op == ">=":
        return lhs >= rhs
    if op == "<=":
        return lhs <= rhs
    if op == "==":
        return lhs == rhs
    raise ValueError(f"unknown comparison {op!r}")


def verify_inequality(ineq_id: str, n_lo: int, n_hi: int, t: RankTable) -> dict:
    """Exact check of a registered (in)equality over [n_lo, n_hi].

    The range refers to the partition argument; residue-filtered ids only
    test arguments in their class mod 3, and Theorem-4-style ids skip
    arguments whose outer index falls below the stated threshold.  Returns
    a JSON-ready report listing every violation.
    """
    key = INEQUALITY_ALIASES.get(ineq_id, ineq_id)
    if key not in INEQUALITIES:
        raise ValueError(f"unknown inequality id {ineq_id!r}")
    spec = INEQUALITIES[key]
    if not 0 <= n_lo <= n_hi:
        raise ValueError("need 0 <= n_lo <= n_hi")
    if n_hi > t.n_max:
        raise ValueError(f"n_hi={n_hi} exceeds table n_max={t.n_max}")
    checked = 0
    violations = []
    for n in range(n_lo, n_hi + 1):
        if spec.residue is not None:
            if n % 3 != spec.residue:
                continue
            if (n - spec.residue) // 3 < spec.min_outer:
                continue
        cc = t.class_counts(spec.modulus, n)
        checked += 1
        for lhs_cls, op, rhs_cls in spec.chain:
            lhs = sum(cc[i] for i in lhs_cls)
            rhs = sum(cc[i] for i in rhs_cls)
            if not _holds(lhs, op, rhs):
                violations.append(n)
                break
    return {
        "id": spec.ineq_id,
        "modulus": spec.modulus,
        "range": [n_lo, n_hi],
        "residue_mod_3": spec.residue,
        "min_outer_index": spec.min_outer,
        "checked": checked,
        "violations": violations,
        "passed": not violations,
    }
