import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussmax.corrmat import (
    ar1_matrix,
    format_matrix_text,
    new_correlation_matrix,
    parse_matrix_text,
)
from gaussmax.errors import (
    Asymmetric,
    EllOutOfRange,
    InvalidArgument,
    NonUnitDiagonal,
    NotPositiveSemidefinite,
    OutOfRangeEntry,
    RhoOutOfRange,
)

rhos = st.floats(min_value=-0.999999, max_value=0.999999, allow_nan=False)


def test_identity_is_valid():
    R = new_correlation_matrix(np.eye(3))
    assert R.dim == 3
    np.testing.assert_array_equal(R.entries, np.eye(3))


def test_out_of_range_entry():
    with pytest.raises(OutOfRangeEntry):
        new_correlation_matrix([[1, 1.5], [1.5, 1]])


def test_equicorrelated_minus_point_nine_is_not_psd():
    # smallest eigenvalue is 1 + 2 * (-0.9) = -0.8
    a = np.full((3, 3), -0.9)
    np.fill_diagonal(a, 1.0)
    assert np.linalg.eigvalsh(a).min() == pytest.approx(-0.8)
    with pytest.raises(NotPositiveSemidefinite):
        new_correlation_matrix(a)


@pytest.mark.parametrize(
    "entries, exc",
    [
        ([[1.0, 0.2], [0.2, 0.9]], NonUnitDiagonal),
        ([[1.0, 0.2], [0.2 + 1e-9, 1.0]], Asymmetric),
        ([[1.0, 0.2, 0.1]], InvalidArgument),
        ([[1.0]], InvalidArgument),
        ([[1.0, np.nan], [np.nan, 1.0]], InvalidArgument),
    ],
)
def test_rejections(entries, exc):
    with pytest.raises(exc):
        new_correlation_matrix(entries)


def test_tiny_asymmetry_is_symmetrized():
    R = new_correlation_matrix([[1.0, 0.3], [0.3 + 1e-13, 1.0]])
    assert R.entries[0, 1] == R.entries[1, 0]


def test_singular_but_psd_is_accepted():
    # rank-one all-ones matrix: perfectly correlated, still PSD
    new_correlation_matrix(np.ones((3, 3)))
    # nearly singular AR(1) matrix
    new_correlation_matrix(ar1_matrix(0.999999, 6).entries)


def test_entries_read_only():
    R = ar1_matrix(0.5, 3)
    with pytest.raises(ValueError):
        R.entries[0, 1] = 0.0


def test_ar1_independence():
    np.testing.assert_array_equal(ar1_matrix(0.0, 4).entries, np.eye(4))


def test_ar1_powers():
    expected = [[1, 0.5, 0.25], [0.5, 1, 0.5], [0.25, 0.5, 1]]
    np.testing.assert_array_equal(ar1_matrix(0.5, 3).entries, expected)


def test_ar1_negative_is_positive_definite():
    R = ar1_matrix(-0.9, 6)
    assert np.linalg.eigvalsh(R.entries).min() > 0
    np.linalg.cholesky(R.entries)


@pytest.mark.parametrize("rho", [-1.0, 1.0, 1.2, np.nan])
def test_ar1_rho_range(rho):
    with pytest.raises(RhoOutOfRange):
        ar1_matrix(rho, 3)


@pytest.mark.parametrize("ell", [1, 7])
def test_ar1_ell_range(ell):
    with pytest.raises(EllOutOfRange):
        ar1_matrix(0.3, ell)


@given(rho=rhos, ell=st.integers(2, 6))
def test_ar1_always_valid_and_nested(rho, ell):
    R = ar1_matrix(rho, ell)
    again = new_correlation_matrix(R.entries)
    assert again.entries.tobytes() == R.entries.tobytes()
    if ell > 2:
        np.testing.assert_array_equal(R.entries[:-1, :-1], ar1_matrix(rho, ell - 1).entries)


@settings(max_examples=50)
@given(seed=st.integers(0, 2**32 - 1), ell=st.integers(2, 6))
def test_validation_idempotent(seed, ell):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((ell, ell + 1))
    c = a @ a.T
    d = np.sqrt(np.diag(c))
    R = new_correlation_matrix(c / np.outer(d, d))
    assert new_correlation_matrix(R.entries).entries.tobytes() == R.entries.tobytes()


def test_text_format_round_trip():
    text = "# AR(1), rho = 0.5\n3\n1 0.5 0.25\n# middle row\n0.5 1 0.5\n0.25 0.5 1\n"
    R = parse_matrix_text(text)
    assert R == ar1_matrix(0.5, 3)
    assert parse_matrix_text(format_matrix_text(R)) == R


@pytest.mark.parametrize("text", ["", "x\n", "2\n1 0\n", "2\n1 0\n0 1 3\n", "2\n1 a\n0 1\n"])
def test_text_format_errors(text):
    with pytest.raises(InvalidArgument):
        parse_matrix_text(text)
