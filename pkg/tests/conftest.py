import numpy as np
import pytest

from zetalaws.arith import sieve

CI_SEED = 20151231


@pytest.fixture(scope="session")
def table():
    return sieve(10**6)


@pytest.fixture(scope="session")
def small_table():
    return sieve(10**5)


@pytest.fixture
def rng():
    return np.random.default_rng(CI_SEED)


def brute_factor(n):
    """Trial division, independent of the sieve."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def brute_mobius(n):
    f = brute_factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return (-1) ** len(f)


def brute_gcd_counts(nmax, m):
    """Law of the gcd of m-tuples in {1..n}^m for every n <= nmax, by enumeration.

    Grows n one step at a time, adding the tuples with some coordinate equal to n.
    """
    r = np.arange(1, nmax + 1)
    G2 = np.gcd.outer(r, r)
    counts = np.zeros(nmax + 1, dtype=np.int64)
    out = {}
    for n in range(1, nmax + 1):
        if m == 2:
            shell = np.concatenate([np.gcd(n, r[:n]), np.gcd(n, r[:n - 1])])
        else:
            shell = np.concatenate([np.gcd(n, G2[:n, :n]).ravel(),
                                    np.gcd(n, G2[:n - 1, :n]).ravel(),
                                    np.gcd(n, G2[:n - 1, :n - 1]).ravel()])
        counts += np.bincount(shell, minlength=nmax + 1)
        out[n] = counts.copy()
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
