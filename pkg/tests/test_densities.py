import math
from fractions import Fraction

import numpy as np
import pytest

from zetalaws.convergence import divisibility_profile, tv_distance
from zetalaws.densities import (Estimate, cesaro_gap, coprime_density_exact, coprime_pair_count,
                                coprime_tuple_count, gcd_counts, gcd_law_exact, mc_coprime_density,
                                mfree_count, mfree_density_exact, radical_law_exact, radical_values)
from zetalaws.zeta import ZetaLaw, zeta_value

from conftest import brute_gcd_counts

NMAX = 300


@pytest.fixture(scope="module")
def brute2():
    return brute_gcd_counts(NMAX, 2)


@pytest.fixture(scope="module")
def brute3():
    return brute_gcd_counts(NMAX, 3)


def test_coprime_pair_count_examples(small_table):
    assert coprime_pair_count(1, small_table) == 1
    assert coprime_pair_count(2, small_table) == 3
    assert coprime_pair_count(4, small_table) == 11


def test_coprime_density_examples(table):
    assert abs(coprime_density_exact(10**6, 2, table) - 6 / math.pi**2) < 5e-3
    assert coprime_density_exact(2, 3, table) == 0.875
    assert coprime_density_exact(1, 2, table) == 1.0
    assert coprime_density_exact(100, 2, table) == coprime_pair_count(100, table) / 100**2


@pytest.mark.parametrize("m", [2, 3])
def test_counts_match_enumeration(small_table, brute2, brute3, m):
    brute = brute2 if m == 2 else brute3
    for n in range(1, NMAX + 1):
        assert coprime_tuple_count(n, m, small_table) == brute[n][1]
        law = gcd_law_exact(n, m, small_table)
        expected = {d: c / n**m for d, c in enumerate(brute[n]) if c}
        assert law.mass == expected


def test_gcd_counts_large_m_exact():
    c = gcd_counts(50, 12)  # 50**12 exceeds int64
    assert sum(c) == 50**12
    assert c[50] == 1


def test_gcd_law_examples(table):
    assert gcd_law_exact(2, 2, table).mass == {1: 0.75, 2: 0.25}
    prof = divisibility_profile(gcd_law_exact(100, 2, table), 3)
    assert prof[3] == pytest.approx(0.1089, abs=1e-15)
    for n in range(1, 1001):
        counts = gcd_counts(n, 2)
        assert sum(counts) == n * n
        assert abs(math.fsum(gcd_law_exact(n, 2, table).mass.values()) - 1) < 1e-12


def test_profile_identities(small_table):
    for n in (1, 17, 100, 999, 2024):
        g = divisibility_profile(gcd_law_exact(n, 2, small_table), 40)
        r = divisibility_profile(radical_law_exact(n, 2, small_table), 40)
        for N in range(1, 41):
            assert g[N] == pytest.approx(float(Fraction(n // N, n) ** 2), abs=1e-14)
            assert r[N] == pytest.approx(float(Fraction(n // (N * N), n)), abs=1e-14)


def test_mfree_examples(table):
    assert mfree_density_exact(10, 2, table) == 0.7
    assert mfree_density_exact(3, 2, table) == 1.0
    assert abs(mfree_density_exact(10**6, 2, table) - 6 / math.pi**2) < 2e-3


def test_mfree_matches_classification(small_table):
    N = 20000
    mu = small_table.mobius
    square_free = np.cumsum(mu[1:N + 1].astype(np.int64) ** 2)
    cube_full = np.zeros(N + 1, dtype=bool)
    for p in range(2, 28):
        cube_full[p**3::p**3] = True
    cube_free = np.cumsum(~cube_full[1:])
    for n in range(1, N + 1):
        assert mfree_count(n, 2, small_table) == square_free[n - 1]
        if n % 7 == 0:
            assert mfree_count(n, 3, small_table) == cube_free[n - 1]


def test_radical_examples(small_table):
    assert radical_law_exact(4, 2, small_table).mass == {1: 0.75, 2: 0.25}
    assert radical_law_exact(1, 2, small_table).mass == {1: 1.0}
    from zetalaws.arith import power_radical

    for m in (2, 3):
        r = radical_values(5000, m)
        assert all(r[k] == power_radical(m, k, small_table) for k in range(1, 5001))


def test_cesaro_examples(small_table):
    assert cesaro_gap(1, 2, small_table) == 0
    gaps = [cesaro_gap(n, 2, small_table) for n in (10**2, 10**3, 10**4)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.03


def test_gcd_law_approaches_zeta(small_table):
    law = ZetaLaw(2).truncated_pmf(10**5)
    d = [tv_distance(gcd_law_exact(n, 2, small_table), law) for n in (10, 100, 1000, 10**4)]
    assert all(a > b for a, b in zip(d, d[1:]))
    assert d[-1] < 0.02


def test_mc_examples(rng):
    e = mc_coprime_density(2, 2, 10**6, rng)
    assert abs(e.value - 0.75) <= 4 * e.stderr
    e = mc_coprime_density(10**6, 2, 10**6, rng)
    assert abs(e.value - 0.6079) <= 4 * e.stderr
    assert e.stderr == pytest.approx(4.9e-4, abs=2e-5)
    e = mc_coprime_density(10**6, 3, 10**6, rng)
    target = 1 / zeta_value(3)
    assert abs(target - 0.831907) < 1e-6
    assert abs(e.value - target) <= 4 * e.stderr


def test_mc_binomial_sanity(small_table):
    exact = coprime_density_exact(1000, 2, small_table)
    inside = 0
    for seed in range(20):
        e = mc_coprime_density(1000, 2, 10**4, np.random.default_rng(seed))
        inside += abs(e.value - exact) <= 4 * e.stderr
    assert inside >= 19


def test_estimate_from_counts():
    e = Estimate.from_counts(25, 100)
    assert e.value == 0.25
    assert e.stderr == pytest.approx(math.sqrt(0.25 * 0.75 / 100))
    with pytest.raises(ValueError):
        Estimate.from_counts(0, 0)


def test_range_checks(small_table):
    with pytest.raises(ValueError):
        coprime_density_exact(10**5 + 1, 2, small_table)
    with pytest.raises(ValueError):
        gcd_law_exact(10, 1, small_table)
