import numpy as np
import pytest

from gaussmax.corrmat import new_correlation_matrix


def random_correlation(ell, rng, spread=2):
    """Random positive-definite correlation matrix from a Gaussian factor."""
    a = rng.standard_normal((ell, ell + spread))
    cov = a @ a.T
    d = np.sqrt(np.diag(cov))
    return new_correlation_matrix(cov / np.outer(d, d))


def difference_cov(R, i, idx):
    """Covariance of X_i - X_a for a in ``idx`` (1-based), with X_i itself for a == i."""
    a = np.asarray(R.entries)
    p = i - 1
    vecs = []
    for x in idx:
        v = np.zeros(a.shape[0])
        v[p] += 1.0
        if x != i:
            v[x - 1] -= 1.0
        vecs.append(v)
    V = np.array(vecs)
    return V @ a @ V.T


def residual_correlation(R, i, pair, given):
    """Correlation of two differences after projecting out the conditioning ones.

    Uses the Schur complement of the exact covariance; independent of the
    cofactor formulas under test.
    """
    idx = list(pair) + list(given)
    S = difference_cov(R, i, idx)
    f, c = slice(0, 2), slice(2, len(idx))
    cond = S[f, f] - S[f, c] @ np.linalg.solve(S[c, c], S[c, f])
    return cond[0, 1] / np.sqrt(cond[0, 0] * cond[1, 1])


@pytest.fixture
def rng():
    return np.random.default_rng(20190812)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
