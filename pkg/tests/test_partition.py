import csv
import io
from fractions import Fraction

import pytest

from lsseq.core import counts, generate_points
from lsseq.partition import (
    Interval,
    Partition,
    alpha_refine,
    compare_sequences,
    lambda_tuple,
    ls_partition,
    ls_partition_float,
    partition_to_csv,
    rho_refine,
    template_partition,
    trivial_partition,
    verify_equivalence,
)
from lsseq.qgamma import LSParams, qg_power_gamma

GOLDEN = LSParams(1, 1)
GRID = [LSParams(L, S) for L in range(1, 5) for S in range(0, 5) if 2 <= L + S <= 5]


def depths_up_to(params, max_n, max_points):
    return [n for n in range(0, max_n + 1) if counts(n, params).t <= max_points]


class TestRhoRefine:
    def test_first_step_golden(self):
        omega = trivial_partition(GOLDEN.one)
        p1 = rho_refine(omega, template_partition(GOLDEN))
        assert p1.lefts == [0, GOLDEN.gamma]
        assert p1.lengths() == [GOLDEN.gamma, qg_power_gamma(2, GOLDEN)]

    def test_second_step_golden(self):
        rho = template_partition(GOLDEN)
        p2 = rho_refine(rho_refine(trivial_partition(GOLDEN.one), rho), rho)
        g = lambda k: qg_power_gamma(k, GOLDEN)  # noqa: E731
        assert p2.lengths() == [g(2), g(3), g(2)]
        assert p2.lefts == [0, g(2), g(1)]
        assert sum(p2.lengths(), GOLDEN.zero) == 1

    def test_all_maximal_splits_everything(self):
        thirds = Partition([Interval(Fraction(k, 3), Fraction(1, 3)) for k in range(3)])
        pi = Partition([Interval(Fraction(k, 4), Fraction(1, 4)) for k in range(4)])
        out = rho_refine(pi, thirds)
        assert out.lefts == [Fraction(k, 12) for k in range(12)]

    def test_base_b_partitions(self):
        for b in (2, 3, 5):
            eq = Partition([Interval(Fraction(k, b), Fraction(1, b)) for k in range(b)])
            pi = trivial_partition()
            for n in range(1, 4):
                pi = rho_refine(pi, eq)
                assert pi.lefts == [Fraction(i, b**n) for i in range(b**n)]

    def test_trivial_rho_rejected(self):
        with pytest.raises(ValueError):
            rho_refine(trivial_partition(), trivial_partition())

    def test_alpha_refinement(self):
        pi = alpha_refine(trivial_partition(), Fraction(1, 3))
        assert pi.lengths() == [Fraction(1, 3), Fraction(2, 3)]
        pi = alpha_refine(pi, Fraction(1, 3))
        assert pi.lengths() == [Fraction(1, 3), Fraction(2, 9), Fraction(4, 9)]

    def test_float_lengths_use_tolerance(self):
        # 0.1 + 0.2 vs 0.3 differ in the last bit; both must count as maximal
        pi = Partition([Interval(0.0, 0.30000000000000004), Interval(0.30000000000000004, 0.3), Interval(0.6, 0.2), Interval(0.8, 0.2)])
        halves = Partition([Interval(0.0, 0.5), Interval(0.5, 0.5)])
        out = rho_refine(pi, halves)
        assert len(out) == 6


class TestLSPartition:
    def test_depth_zero(self):
        p = ls_partition(0, GOLDEN)
        assert p.lefts == [0] and p.lengths() == [1]

    def test_golden_depth_two(self):
        p = ls_partition(2, GOLDEN)
        assert p.lefts == [0, qg_power_gamma(2, GOLDEN), GOLDEN.gamma]
        assert len(p) == 3

    def test_base_b(self):
        for b in (2, 3):
            p = ls_partition(2, LSParams(b, 0))
            assert p.lefts == [Fraction(i, b * b) for i in range(b * b)]

    @pytest.mark.parametrize("params", GRID, ids=str)
    def test_matches_generic_engine(self, params):
        rho = template_partition(params)
        generic = trivial_partition(params.one)
        for n in depths_up_to(params, 8, 3000):
            if n:
                generic = rho_refine(generic, rho)
            structural = ls_partition(n, params)
            assert structural.lefts == generic.lefts
            assert structural.lengths() == generic.lengths()

    @pytest.mark.parametrize("params", GRID, ids=str)
    def test_two_lengths_and_counts(self, params):
        for n in depths_up_to(params, 10, 5000):
            p = ls_partition(n, params)
            c = counts(n, params)
            long_len = qg_power_gamma(n, params)
            short_len = long_len * params.gamma
            labels = [iv.label for iv in p]
            assert labels.count("L") == c.l and labels.count("S") == c.s and len(p) == c.t
            for iv in p:
                assert iv.length == (long_len if iv.label == "L" else short_len)
            lefts = p.lefts
            assert lefts[0] == 0
            assert all(a < b for a, b in zip(lefts, lefts[1:]))
            assert sum(p.lengths(), params.zero) == 1

    @pytest.mark.parametrize("params", GRID, ids=str)
    def test_float_engine(self, params):
        n = depths_up_to(params, 8, 3000)[-1]
        lefts, labels = ls_partition_float(n, params)
        exact = ls_partition(n, params)
        assert labels == [iv.label for iv in exact]
        for a, b in zip(lefts, exact.lefts):
            assert a == pytest.approx(float(b), abs=1e-12)


class TestLambda:
    def test_golden(self):
        g = lambda k: qg_power_gamma(k, GOLDEN)  # noqa: E731
        assert lambda_tuple(1, GOLDEN) == [0, g(1)]
        assert lambda_tuple(4, GOLDEN) == [0, g(1), g(2), g(3), g(1) + g(3), g(4), g(1) + g(4), g(2) + g(4)]

    def test_binary(self):
        assert lambda_tuple(2, LSParams(2, 0)) == [0, Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)]
        assert lambda_tuple(3, LSParams(2, 0))[4:] == [Fraction(k, 8) for k in (1, 5, 3, 7)]

    @pytest.mark.parametrize("params", GRID, ids=str)
    def test_first_level_sorted(self, params):
        lam = lambda_tuple(1, params)
        assert lam == sorted(lam)
        assert lam == ls_partition(1, params).lefts

    @pytest.mark.parametrize("params", GRID, ids=str)
    def test_prefix_and_growth(self, params):
        prev = lambda_tuple(1, params)
        for n in depths_up_to(params, 10, 4000)[2:]:
            lam = lambda_tuple(n, params)
            assert lam[: len(prev)] == prev
            c = counts(n - 1, params)
            assert len(lam) - len(prev) == (params.base - 1) * c.l
            prev = lam

    @pytest.mark.parametrize("params", GRID, ids=str)
    def test_set_equals_partition_points(self, params):
        for n in depths_up_to(params, 10, 20_000)[1:]:
            lam = lambda_tuple(n, params)
            part = ls_partition(n, params)
            assert set(lam) == set(part.lefts)
            # the first l_n entries are exactly the left ends of the long intervals
            l_n = counts(n, params).l
            assert set(lam[:l_n]) == set(part.long_lefts())


class TestVerify:
    def test_golden(self):
        r = verify_equivalence(6, GOLDEN)
        assert r.equal and r.count == 21 and r.first_mismatch is None
        assert r.summary() == "t_6=21 points equal"

    def test_binary(self):
        r = verify_equivalence(4, LSParams(2, 0))
        assert r.equal and r.count == 16
        assert generate_points(16, LSParams(2, 0)) == lambda_tuple(4, LSParams(2, 0))

    def test_three_two(self):
        assert verify_equivalence(5, LSParams(3, 2)).equal

    def test_mismatch_reported(self):
        pts = generate_points(5, GOLDEN)
        bad = list(pts)
        bad[3] = bad[3] + GOLDEN.gamma
        r = compare_sequences(3, GOLDEN, pts, bad)
        assert not r.equal and r.first_mismatch == 4
        assert "index 4" in r.summary()


def test_partition_csv():
    text = partition_to_csv(ls_partition(2, GOLDEN))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["index", "left_exact", "left_float", "label", "depth"]
    assert rows[1] == ["1", "0/1+0/1*g", "0.0", "L", "2"]
    assert rows[2][1] == "1/1+-1/1*g" and rows[2][3] == "S"
    assert float(rows[3][2]) == pytest.approx(0.6180339887, abs=1e-10)
    assert "\r" not in text
