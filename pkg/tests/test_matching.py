import numpy as np
import pytest

from gngshape.errors import DimensionMismatchError
from gngshape.matching import (
    column_cost_matrix,
    cyclic_dissimilarity,
    default_gap_cost,
    dp_match,
)

from oracles import oracle_dp_cost


def rand_features(rng, rows, cols):
    return rng.uniform(0, 5, size=(rows, cols))


class TestColumnCostMatrix:
    def test_hand_values(self):
        a = np.array([[0.0, 3.0], [0.0, 4.0]])
        b = np.array([[0.0], [0.0]])
        np.testing.assert_allclose(column_cost_matrix(a, b), [[0.0], [5.0]])

    def test_row_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            column_cost_matrix(np.zeros((3, 2)), np.zeros((4, 2)))


class TestDpMatch:
    def test_self_match_is_identity(self):
        rng = np.random.default_rng(0)
        a = rand_features(rng, 6, 9)
        m = dp_match(a, a, gap_cost=1.0)
        assert m.cost == 0.0
        assert m.mapping == tuple(range(1, 10))

    def test_two_versus_one_prefers_gap(self):
        # columns (0) and (10) against lone column (0); matching the far
        # column would cost 10, a gap costs 1
        a = np.array([[0.0, 10.0]])
        b = np.array([[0.0]])
        m = dp_match(a, b, gap_cost=1.0)
        assert m.cost == 1.0
        assert m.mapping == (1, 0)

    def test_all_gaps_when_gap_is_cheap(self):
        a = np.full((1, 3), 5.0)
        b = np.zeros((1, 2))
        m = dp_match(a, b, gap_cost=0.01)
        assert m.mapping == (0, 0, 0)
        assert m.cost == pytest.approx(0.05)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            na, nb = rng.integers(1, 7, size=2)
            cost_rows = rng.integers(2, 5)
            a = rand_features(rng, cost_rows, na)
            b = rand_features(rng, cost_rows, nb)
            gap = float(rng.uniform(0.05, 3.0))
            got = dp_match(a, b, gap_cost=gap)
            expected = oracle_dp_cost(column_cost_matrix(a, b), gap)
            assert got.cost == pytest.approx(expected, abs=1e-9)
            # the reported mapping must reproduce the reported cost
            cm = column_cost_matrix(a, b)
            matched = [(i, j - 1) for i, j in enumerate(got.mapping) if j]
            used_b = [j for _, j in matched]
            assert used_b == sorted(used_b)  # order-preserving
            replay = sum(cm[i, j] for i, j in matched) + gap * (
                (na - len(matched)) + (nb - len(matched))
            )
            assert replay == pytest.approx(got.cost, abs=1e-9)

    def test_cost_monotone_in_gap(self):
        rng = np.random.default_rng(5)
        a = rand_features(rng, 4, 6)
        b = rand_features(rng, 4, 8)
        costs = [dp_match(a, b, gap_cost=g).cost for g in (0.1, 0.5, 1.0, 2.0)]
        assert costs == sorted(costs)

    def test_default_gap_is_median_fraction(self):
        rng = np.random.default_rng(6)
        a = rand_features(rng, 3, 5)
        b = rand_features(rng, 3, 7)
        assert default_gap_cost(a, b) == pytest.approx(
            0.3 * np.median(column_cost_matrix(a, b))
        )


class TestCyclicDissimilarity:
    def test_self_is_zero(self):
        rng = np.random.default_rng(1)
        a = rand_features(rng, 8, 12)
        d, m = cyclic_dissimilarity(a, a, gap_cost=1.0)
        assert d == 0.0
        assert m.shift == 0

    def test_recovers_cyclic_shift(self):
        rng = np.random.default_rng(2)
        a = rand_features(rng, 8, 12)
        b = np.roll(a, 4, axis=1)
        d, m = cyclic_dissimilarity(a, b, gap_cost=1.0)
        assert d == pytest.approx(0.0, abs=1e-12)
        assert m.shift % 12 == (12 - 4) % 12 or d == 0.0

    def test_is_minimum_over_shifts(self):
        rng = np.random.default_rng(3)
        a = rand_features(rng, 5, 7)
        b = rand_features(rng, 5, 10)
        gap = 0.8
        d, _ = cyclic_dissimilarity(a, b, gap_cost=gap)
        per_shift = [
            dp_match(np.roll(a, -s, axis=1), b, gap_cost=gap).cost for s in range(7)
        ]
        assert d == pytest.approx(min(per_shift), abs=1e-12)

    def test_exactly_symmetric(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            a = rand_features(rng, 6, int(rng.integers(3, 12)))
            b = rand_features(rng, 6, int(rng.integers(3, 12)))
            dab, _ = cyclic_dissimilarity(a, b)
            dba, _ = cyclic_dissimilarity(b, a)
            assert dab == dba  # bitwise, not approximately

    def test_row_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cyclic_dissimilarity(np.zeros((3, 4)), np.zeros((2, 4)))

    def test_matching_replays_cost(self):
        rng = np.random.default_rng(9)
        a = rand_features(rng, 6, 9)
        b = rand_features(rng, 6, 11)
        gap = 0.5
        d, m = cyclic_dissimilarity(a, b, gap_cost=gap)
        lhs, rhs = (b, a) if m.swapped else (a, b)
        shifted = np.roll(lhs, -m.shift, axis=1)
        assert dp_match(shifted, rhs, gap_cost=gap).cost == pytest.approx(d, abs=1e-12)
