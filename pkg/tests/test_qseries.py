import collections
from fractions import Fraction

import pytest
from mpmath import mp

from overrank.cache import load_table, save_table, table_to_csv
from overrank.errors import InternalConsistencyError
from overrank.qseries import (
    IntSeries,
    Overpartition,
    enumerate_overpartitions,
    orthogonality_decompose,
    pbar_series,
    rank,
    rank_class,
    rank_table,
    zeta_eval,
)


class TestPbarSeries:
    def test_first_values(self):
        assert pbar_series(4).coeffs == [1, 2, 4, 8, 14]

    def test_empty_product(self):
        assert pbar_series(0).coeffs == [1]

    def test_against_enumeration(self):
        series = pbar_series(10)
        assert series[10] == len(enumerate_overpartitions(10))


class TestIntSeries:
    def test_truncation_is_never_extended(self):
        a = IntSeries([1, 1, 1], 2)
        b = IntSeries([1, 2, 3, 4, 5], 4)
        assert (a * b).order == 2
        assert (a + b).order == 2

    def test_invert_unit_roundtrip(self):
        s = pbar_series(40)
        inv = s.invert_unit()
        prod = s * inv
        assert prod.coeffs == [1] + [0] * 40

    def test_invert_requires_unit(self):
        with pytest.raises(ValueError):
            IntSeries([2, 1], 1).invert_unit()


class TestEnumeration:
    def test_overpartitions_of_four(self):
        listed = {
            ((4,), frozenset()),
            ((4,), frozenset({4})),
            ((3, 1), frozenset()),
            ((3, 1), frozenset({3})),
            ((3, 1), frozenset({1})),
            ((3, 1), frozenset({3, 1})),
            ((2, 2), frozenset()),
            ((2, 2), frozenset({2})),
            ((2, 1, 1), frozenset()),
            ((2, 1, 1), frozenset({2})),
            ((2, 1, 1), frozenset({1})),
            ((2, 1, 1), frozenset({2, 1})),
            ((1, 1, 1, 1), frozenset()),
            ((1, 1, 1, 1), frozenset({1})),
        }
        got = {(op.parts, op.overlined) for op in enumerate_overpartitions(4)}
        assert got == listed

    def test_zero_has_one_empty(self):
        ops = enumerate_overpartitions(0)
        assert len(ops) == 1 and ops[0].parts == ()

    def test_three_has_eight(self):
        assert len(enumerate_overpartitions(3)) == 8

    def test_no_duplicates_and_cap(self):
        ops = enumerate_overpartitions(9)
        assert len(ops) == len(set(ops)) == pbar_series(9)[9]
        with pytest.raises(ValueError):
            enumerate_overpartitions(31)

    def test_invalid_overline_rejected(self):
        with pytest.raises(ValueError):
            Overpartition((3, 1), frozenset({2}))


class TestRank:
    def test_examples(self):
        assert rank(Overpartition((2, 1))) == 0
        assert rank(Overpartition((1, 1, 1))) == -2
        assert rank(Overpartition((3,), frozenset({3}))) == 2
        assert rank(Overpartition(())) == 0


class TestRankTable:
    def test_small_counts(self, table_mid):
        assert table_mid.count(0, 1) == 2
        assert table_mid.count(1, 2) == 2
        assert table_mid.count(-1, 2) == 2
        assert table_mid.pbar(2) == 4
        assert table_mid.pbar(4) == 14

    def test_matches_enumeration_histograms(self):
        t = rank_table(8)
        for n in range(9):
            hist = collections.Counter(rank(op) for op in enumerate_overpartitions(n))
            for m in range(-n - 1, n + 2):
                assert t.count(m, n) == hist.get(m, 0)

    def test_row_sums_and_support(self, table_mid):
        pb = pbar_series(60)
        for n in range(61):
            assert table_mid.pbar(n) == pb[n]
            assert all(v >= 0 for v in table_mid.rows[n])
            if n >= 1:
                assert table_mid.count(n, n) == 0
                assert table_mid.count(n + 3, n) == 0

    def test_cap_guard(self):
        with pytest.raises(ValueError):
            rank_table(2501)


class TestRankClass:
    def test_examples(self, table_mid):
        assert rank_class(0, 3, 1, table_mid) == 2
        assert rank_class(0, 5, 0, table_mid) == 1
        assert rank_class(2, 5, 0, table_mid) == 0

    def test_classes_partition_all_ranks(self, table_mid):
        assert sum(rank_class(a, 6, 50, table_mid) for a in range(6)) == table_mid.pbar(50)

    def test_rejects_bad_modulus(self, table_mid):
        with pytest.raises(ValueError):
            rank_class(0, 1, 3, table_mid)
        with pytest.raises(ValueError):
            rank_class(3, 3, 3, table_mid)


class TestZetaEval:
    def test_examples(self, table_mid):
        _, v = zeta_eval(1, 3, 1, table_mid)
        assert abs(v - 2) < mp.mpf("1e-30")
        _, v = zeta_eval(1, 3, 3, table_mid)
        assert abs(v - 2) < mp.mpf("1e-30")
        _, v = zeta_eval(2, 5, 0, table_mid)
        assert abs(v - 1) < mp.mpf("1e-30")

    def test_group_ring_element(self, table_mid):
        elt, _ = zeta_eval(1, 3, 3, table_mid)
        # row n=3: N(0)=4 at exponent 0, N(2)=N(-2)=2 at exponents 2 and 1
        assert elt.coeffs == (4, 2, 2)

    def test_matches_cosine_pairing(self, table_mid):
        for (a, c, n) in [(1, 3, 50), (1, 6, 120), (3, 10, 77), (1, 10, 200)]:
            _, v = zeta_eval(a, c, n, table_mid)
            with mp.workprec(300):
                direct = mp.mpf(0)
                for m in range(-n - 1, n + 2):
                    cnt = table_mid.count(m, n)
                    if cnt:
                        direct += cnt * mp.cospi(mp.mpf(2 * a * m) / c)
                assert abs(v - direct) <= mp.mpf("1e-20") * abs(direct)

    def test_rejects_non_coprime(self, table_mid):
        with pytest.raises(ValueError):
            zeta_eval(2, 6, 5, table_mid)
        with pytest.raises(ValueError):
            zeta_eval(0, 3, 5, table_mid)


class TestOrthogonality:
    def test_example(self, table_mid):
        assert orthogonality_decompose(0, 3, 1, table_mid) == 2

    def test_equals_rank_class_mod_6(self, table_mid):
        for n in range(201):
            assert orthogonality_decompose(1, 6, n, table_mid) == rank_class(1, 6, n, table_mid)

    def test_equals_rank_class_mod_10(self, table_mid):
        assert orthogonality_decompose(1, 10, 100, table_mid) == rank_class(1, 10, 100, table_mid)
        for n in (0, 7, 93, 200):
            for a in range(10):
                assert orthogonality_decompose(a, 10, n, table_mid) == rank_class(a, 10, n, table_mid)


class TestCache:
    def test_binary_roundtrip(self, tmp_path):
        t = rank_table(25)
        path = str(tmp_path / "t.bin")
        save_table(t, path)
        loaded = load_table(path)
        assert loaded.n_max == 25 and loaded.rows == t.rows

    def test_json_roundtrip(self, tmp_path):
        t = rank_table(12)
        path = str(tmp_path / "t.json")
        save_table(t, path)
        loaded = load_table(path)
        assert loaded.rows == t.rows

    def test_csv_roundtrip(self, tmp_path):
        t = rank_table(18)
        path = str(tmp_path / "t.csv")
        save_table(t, path)
        loaded = load_table(path)
        assert loaded.rows == t.rows
        assert table_to_csv(loaded) == table_to_csv(t)

    def test_version_check(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"format_version": 99, "n_max": 1, "rows": [[], []]}')
        with pytest.raises(ValueError):
            load_table(str(path))
