"""Exact and asymptotic computation of Dyson ranks of overpartitions.

The exact layer (qseries, groupring) computes overpartition counts, the
full table of rank counts N(m, n), residue-class counts N(a, c, n), and
root-of-unity evaluations A(a/c; n) with arbitrary-precision integers.
The analytic layer (arith, expsums, asymptotic) evaluates the circle-method
asymptotic series for A(a/c; n) term by term, plus the convergent series
for the counts themselves.  The bounds layer turns explicit error bounds
into a crossover point and verifies rank inequalities exactly below it.
"""

from .arith import (
    DEFAULT_PREC,
    Phase,
    dedekind_sum,
    dedekind_sum_direct,
    inv_neg,
    inv_neg_even,
    omega,
    sawtooth,
)
from .asymptotic import (
    Estimate,
    EstimateTerm,
    equidistribution_report,
    estimate_A,
    main_term,
    nearest_int,
    zuckerman_pbar,
    zuckerman_pbar_int,
)
from .bounds import (
    BoundReport,
    CrossoverReport,
    INEQUALITIES,
    bound_report,
    coeff_sum,
    crossover,
    crossover_assembly,
    mao_decomposition,
    verify_inequality,
    zeta_relation_6,
    zeta_relation_10,
)
from .cache import load_table, save_table
from .errors import CrossoverNotFoundError, InternalConsistencyError
from .expsums import (
    ComplexVal,
    DeltaTerm,
    GroupData,
    delta_terms,
    group_data,
    kloosterman_A,
    kloosterman_B,
    kloosterman_D,
    s_func,
    t_func,
)
from .groupring import GroupRingElt, cyclotomic_poly
from .qseries import (
    IntSeries,
    Overpartition,
    RankTable,
    enumerate_overpartitions,
    orthogonality_decompose,
    pbar_series,
    rank,
    rank_class,
    rank_table,
    zeta_eval,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PREC",
    "Phase",
    "dedekind_sum",
    "dedekind_sum_direct",
    "inv_neg",
    "inv_neg_even",
    "omega",
    "sawtooth",
    "Estimate",
    "EstimateTerm",
    "equidistribution_report",
    "estimate_A",
    "main_term",
    "nearest_int",
    "zuckerman_pbar",
    "zuckerman_pbar_int",
    "BoundReport",
    "CrossoverReport",
    "INEQUALITIES",
    "bound_report",
    "coeff_sum",
    "crossover",
    "crossover_assembly",
    "mao_decomposition",
    "verify_inequality",
    "zeta_relation_6",
    "zeta_relation_10",
    "load_table",
    "save_table",
    "CrossoverNotFoundError",
    "InternalConsistencyError",
    "ComplexVal",
    "DeltaTerm",
    "GroupData",
    "delta_terms",
    "group_data",
    "kloosterman_A",
    "kloosterman_B",
    "kloosterman_D",
    "s_func",
    "t_func",
    "GroupRingElt",
    "cyclotomic_poly",
    "IntSeries",
    "Overpartition",
    "RankTable",
    "enumerate_overpartitions",
    "orthogonality_decompose",
    "pbar_series",
    "rank",
    "rank_class",
    "rank_table",
    "zeta_eval",
]
