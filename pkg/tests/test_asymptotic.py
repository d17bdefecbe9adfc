import pytest
from mpmath import mp

from overrank.asymptotic import (
    default_zuckerman_cap,
    equidistribution_report,
    estimate_A,
    main_term,
    nearest_int,
    zuckerman_pbar,
    zuckerman_pbar_int,
)
from overrank.qseries import pbar_series, zeta_eval


class TestEstimate:
    def test_empty_sums(self):
        est = estimate_A(1, 3, 4)
        assert est.terms == ()
        assert est.value.re == 0 and est.value.im == 0
        assert est.k_max == 2
        assert main_term(1, 3, 4) is None

    def test_requires_c_above_two(self):
        with pytest.raises(ValueError):
            estimate_A(1, 2, 100)

    def test_leading_term_closed_form(self):
        # below k=11 the only admissible k for (1,10) is k=1, with the
        # closed form (2/sqrt(n)) tan(pi/10) sinh(3 pi sqrt(n)/5)
        est = estimate_A(1, 10, 100)
        ks = [t.k for t in est.terms]
        assert ks == [1, 9]
        with mp.workprec(160):
            lead = 2 / mp.sqrt(100) * mp.sinpi(mp.mpf(1) / 10) / mp.cospi(mp.mpf(1) / 10) * mp.sinh(
                3 * mp.pi * mp.sqrt(mp.mpf(100)) / 5
            )
        assert abs(est.terms[0].contribution.as_mpc() - lead) < mp.mpf("1e-25") * lead

    def test_main_term_examples(self):
        kind, k, r, _ = main_term(1, 10, 10000)
        assert (kind, k, r) == ("D", 1, 0)
        kind, k, r, _ = main_term(1, 3, 10000)
        assert (kind, k, r) == ("B", 3, None)

    def test_term_count_and_order(self):
        est = estimate_A(1, 3, 400)
        assert [t.k for t in est.terms] == [3, 9, 15]
        assert all(t.kind == "B" for t in est.terms)

    def test_imaginary_residual_small(self, table_mid):
        for (a, c, n) in [(1, 3, 200), (1, 6, 150), (1, 10, 220), (3, 10, 220)]:
            est = estimate_A(a, c, n)
            assert abs(est.value.im) <= mp.mpf("1e-10") * (1 + abs(est.value.re))

    def test_matches_exact_at_moderate_n(self, table_mid):
        _, exact = zeta_eval(1, 6, 220, table_mid)
        est = estimate_A(1, 6, 220)
        rel = abs(est.value.as_mpc() - exact) / abs(exact)
        assert rel < 0.05

    def test_deterministic(self):
        a = estimate_A(3, 10, 500)
        b = estimate_A(3, 10, 500)
        assert a == b


class TestZuckerman:
    def test_rounds_to_exact_small(self):
        pb = pbar_series(100)
        assert zuckerman_pbar_int(4, 15) == 14
        assert zuckerman_pbar_int(1, 15) == 2
        assert zuckerman_pbar_int(100, 35) == pb[100]

    def test_default_cap(self):
        assert default_zuckerman_cap(1) == 5
        assert default_zuckerman_cap(4) == 10
        assert default_zuckerman_cap(5) == 15
        assert default_zuckerman_cap(100) == 50

    def test_cap_plateau(self):
        pb = pbar_series(300)
        for n in (17, 83, 150, 222, 300):
            cap = default_zuckerman_cap(n)
            v1 = zuckerman_pbar(n, cap)
            v2 = zuckerman_pbar(n, 2 * cap)
            assert abs(v1 - v2) < 0.5
            assert nearest_int(v1) == nearest_int(v2) == pb[n]

    def test_input_guards(self):
        with pytest.raises(ValueError):
            zuckerman_pbar(0)
        with pytest.raises(ValueError):
            zuckerman_pbar(5, 0)


class TestNearestInt:
    def test_exact_beyond_double_precision(self):
        with mp.workprec(200):
            big = mp.mpf(10) ** 30 + mp.mpf("0.25")
            assert nearest_int(big) == 10**30
            assert nearest_int(big + 0.5) == 10**30 + 1
            assert nearest_int(-big) == -(10**30)


class TestEquidistribution:
    def test_n_zero(self, table_mid):
        report = equidistribution_report(7, 0, table_mid)
        assert [float(r[1]) for r in report] == [7.0] + [0.0] * 6

    def test_mean_ratio_is_one(self, table_mid):
        report = equidistribution_report(6, 200, table_mid)
        assert sum(r[1] for r in report) == 6

    def test_ratios_drift_toward_one(self, table_mid):
        worst_100 = max(abs(r[1] - 1) for r in equidistribution_report(3, 100, table_mid))
        worst_220 = max(abs(r[1] - 1) for r in equidistribution_report(3, 220, table_mid))
        assert worst_220 < worst_100
