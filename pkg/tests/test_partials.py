import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_correlation, residual_correlation
from gaussmax.corrmat import ar1_matrix, new_correlation_matrix
from gaussmax.errors import (
    DegenerateDifference,
    DuplicateIndex,
    IndexOutOfRange,
    UnsupportedDimension,
)
from gaussmax.partials import (
    complement_indices,
    diff_correlation,
    partial_corr_one,
    partial_corr_two,
    reduced_matrix_one,
    reduced_matrix_two,
)

seeds = st.integers(0, 2**32 - 1)


class TestDiffCorrelation:
    def test_independent_pair_of_differences(self):
        assert diff_correlation(ar1_matrix(0, 3), 1, 2, 3) == pytest.approx(0.5, abs=1e-15)

    def test_difference_with_variable(self):
        assert diff_correlation(ar1_matrix(0, 3), 1, 2, 1) == pytest.approx(math.sqrt(0.5), abs=1e-15)
        assert diff_correlation(ar1_matrix(0, 3), 1, 1, 3) == pytest.approx(math.sqrt(0.5), abs=1e-15)

    def test_all_equal(self):
        assert diff_correlation(ar1_matrix(0.3, 3), 2, 2, 2) == 1.0

    def test_symmetric_in_last_two(self, rng):
        R = random_correlation(5, rng)
        for i, j, k in permutations(range(1, 6), 3):
            assert diff_correlation(R, i, j, k) == diff_correlation(R, i, k, j)

    def test_matches_covariance_oracle(self, rng):
        from conftest import difference_cov

        R = random_correlation(4, rng)
        for i, j, k in permutations(range(1, 5), 3):
            S = difference_cov(R, i, [j, k])
            expected = S[0, 1] / math.sqrt(S[0, 0] * S[1, 1])
            assert diff_correlation(R, i, j, k) == pytest.approx(expected, abs=1e-13)

    def test_degenerate(self):
        R = new_correlation_matrix(np.ones((3, 3)))
        with pytest.raises(DegenerateDifference):
            diff_correlation(R, 1, 2, 3)

    def test_index_range(self):
        with pytest.raises(IndexOutOfRange):
            diff_correlation(ar1_matrix(0, 3), 1, 2, 4)


class TestComplement:
    def test_four(self):
        assert complement_indices(4, {1, 2}) == (3, 4)

    def test_five(self):
        assert complement_indices(5, {2, 4}) == (1, 3, 5)
        assert complement_indices(5, {1, 3, 5}) == (2, 4)

    def test_errors(self):
        with pytest.raises(DuplicateIndex):
            complement_indices(5, [1, 1])
        with pytest.raises(IndexOutOfRange):
            complement_indices(4, [0, 2])


class TestPartialOne:
    def test_identity(self):
        for ell in (4, 5, 6):
            p = partial_corr_one(ar1_matrix(0, ell), 1, 2, 3, 4)
            assert p.value == pytest.approx(1 / 3, abs=1e-15)

    def test_ar1_against_residual_oracle(self):
        R = ar1_matrix(0.5, 4)
        p = partial_corr_one(R, 1, 2, 3, 4)
        assert abs(p.value) <= 1
        assert p.value == pytest.approx(residual_correlation(R, 1, (3, 4), (2,)), abs=1e-6)
        assert p.pivot == 1 and p.pair == (3, 4) and p.conditioning == (2,)

    def test_pair_swap(self):
        R = ar1_matrix(0.5, 4)
        assert partial_corr_one(R, 1, 2, 3, 4).value == partial_corr_one(R, 1, 2, 4, 3).value

    def test_pivot_exchange(self):
        """r_{1,34.2} equals r_{2,34.1}.

        X_1 - X_m and X_2 - X_m differ by X_1 - X_2, the conditioning
        variable, so their residuals coincide.
        """
        R = ar1_matrix(0.5, 4)
        a = partial_corr_one(R, 1, 2, 3, 4).value
        b = partial_corr_one(R, 2, 1, 3, 4).value
        assert a == pytest.approx(b, abs=1e-14)
        # the partial correlations do depend on which pair is conditioned on
        assert abs(a - partial_corr_one(R, 1, 3, 2, 4).value) > 1e-3

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_pivot_exchange_random(self, seed):
        R = random_correlation(5, np.random.default_rng(seed))
        for i, j, m, n in permutations(range(1, 6), 4):
            assert partial_corr_one(R, i, j, m, n).value == pytest.approx(
                partial_corr_one(R, j, i, m, n).value, abs=1e-12
            )
        for i, j, k, m, n in permutations(range(1, 6), 5):
            assert partial_corr_two(R, i, j, k, m, n).value == pytest.approx(
                partial_corr_two(R, j, i, k, m, n).value, abs=1e-12
            )

    def test_distinct_indices_required(self):
        with pytest.raises(DuplicateIndex):
            partial_corr_one(ar1_matrix(0, 4), 1, 2, 2, 4)


class TestPartialTwo:
    def test_identity(self):
        # numerator 1/8, each denominator factor 1/2
        for ell in (5, 6):
            p = partial_corr_two(ar1_matrix(0, ell), 1, 2, 3, 4, 5)
            assert p.value == pytest.approx(0.25, abs=1e-15)

    def test_ar1_against_residual_oracle(self):
        R = ar1_matrix(0.5, 5)
        p = partial_corr_two(R, 1, 2, 3, 4, 5)
        assert p.value == pytest.approx(residual_correlation(R, 1, (4, 5), (2, 3)), abs=1e-6)

    def test_swaps(self):
        R = ar1_matrix(-0.3, 6)
        v = partial_corr_two(R, 2, 4, 6, 1, 5).value
        assert partial_corr_two(R, 2, 4, 6, 5, 1).value == pytest.approx(v, abs=1e-15)
        assert partial_corr_two(R, 2, 6, 4, 1, 5).value == pytest.approx(v, abs=1e-15)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, ell=st.sampled_from([4, 5, 6]))
def test_partials_match_schur_oracle(seed, ell):
    R = random_correlation(ell, np.random.default_rng(seed))
    for i, j, m, n in permutations(range(1, ell + 1), 4):
        if m > n:
            continue
        got = partial_corr_one(R, i, j, m, n).value
        assert got == pytest.approx(residual_correlation(R, i, (m, n), (j,)), abs=1e-9)
        assert got == partial_corr_one(R, i, j, n, m).value
    if ell >= 5:
        for i, j, k, m, n in permutations(range(1, ell + 1), 5):
            if m > n or j > k:
                continue
            got = partial_corr_two(R, i, j, k, m, n).value
            assert got == pytest.approx(residual_correlation(R, i, (m, n), (j, k)), abs=1e-9)
            assert got == pytest.approx(partial_corr_two(R, i, k, j, m, n).value, abs=1e-14)
            assert got == pytest.approx(partial_corr_two(R, i, j, k, n, m).value, abs=1e-14)


class TestReduced:
    def test_one_identity(self):
        np.testing.assert_allclose(reduced_matrix_one(ar1_matrix(0, 4), 1, 2).entries, [[1, 1 / 3], [1 / 3, 1]], atol=1e-15)
        m = reduced_matrix_one(ar1_matrix(0, 5), 3, 1)
        assert m.free == (2, 4, 5)
        np.testing.assert_allclose(m.offdiag(), [1 / 3] * 3, atol=1e-15)

    def test_two_identity(self):
        np.testing.assert_allclose(reduced_matrix_two(ar1_matrix(0, 5), 1, 2, 3).entries, [[1, 0.25], [0.25, 1]], atol=1e-15)
        np.testing.assert_allclose(reduced_matrix_two(ar1_matrix(0, 6), 1, 2, 3).offdiag(), [0.25] * 3, atol=1e-15)

    def test_one_ar1_valid(self):
        m = reduced_matrix_one(ar1_matrix(0.5, 5), 1, 2)
        assert m.entries.shape == (3, 3)
        new_correlation_matrix(m.entries)
        # entries are the partial correlations over (m, n, o) = (3, 4, 5)
        assert m.entries[0, 2] == partial_corr_one(ar1_matrix(0.5, 5), 1, 2, 3, 5).value

    def test_two_ar1_valid(self):
        m = reduced_matrix_two(ar1_matrix(-0.3, 6), 2, 4, 6)
        assert m.free == (1, 3, 5)
        new_correlation_matrix(m.entries)

    @settings(max_examples=25, deadline=None)
    @given(seed=seeds)
    def test_random_reduced_are_correlation_matrices(self, seed):
        rng = np.random.default_rng(seed)
        for ell in (4, 5):
            R = random_correlation(ell, rng)
            for i, j in permutations(range(1, ell + 1), 2):
                new_correlation_matrix(reduced_matrix_one(R, i, j).entries)
        for ell in (5, 6):
            R = random_correlation(ell, rng)
            for i, j, k in permutations(range(1, ell + 1), 3):
                new_correlation_matrix(reduced_matrix_two(R, i, j, k).entries)

    def test_dimension_checks(self):
        with pytest.raises(UnsupportedDimension):
            reduced_matrix_one(ar1_matrix(0, 6), 1, 2)
        with pytest.raises(UnsupportedDimension):
            reduced_matrix_two(ar1_matrix(0, 4), 1, 2, 3)
