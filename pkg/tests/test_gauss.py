import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetalaws.arith import multiplicative_values
from zetalaws.gauss import (GaussClass, GaussInt, SUM_TWO_SQUARES, UNIT, _divisible_by, ball_class_array,
                            ball_classes, batch_gcd, canonicalize, classes_of_norm, divides,
                            gauss_coprime_experiment, gauss_gcd, sum_two_squares_count,
                            unique_coprime_splitting_check, zeta_prime_law, zeta_prime_normalizer,
                            zeta_prime_pmf)
from zetalaws.zeta import dirichlet_beta, zeta_value

gauss_ints = st.builds(GaussInt, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
UNITS = [GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1)]


def test_canonicalize_examples():
    assert canonicalize(1) == (0, 1)
    assert canonicalize(GaussInt(1, 1)) == (1, 1)
    assert canonicalize(2) == (0, 2)
    with pytest.raises(ValueError):
        canonicalize(0)


@given(gauss_ints)
def test_canonicalize_associates(z):
    if not z:
        return
    c = canonicalize(z)
    assert c.a >= 0 and c.b >= 1
    assert canonicalize(c.to_int()) == c
    assert {canonicalize(u * z) for u in UNITS} == {c}
    assert any(u * c.to_int() == z for u in UNITS)


@given(gauss_ints, gauss_ints)
def test_norm_multiplicative(z, w):
    assert (z * w).norm() == z.norm() * w.norm()


def test_gcd_examples():
    assert gauss_gcd(5, GaussInt(1, 2)) == (1, 2)
    assert gauss_gcd(3, 7) == UNIT
    z = GaussInt(-7, 4)
    assert gauss_gcd(z, z) == canonicalize(z)
    assert gauss_gcd(0, z) == canonicalize(z)
    with pytest.raises(ValueError):
        gauss_gcd(0, 0)


@given(gauss_ints, gauss_ints)
def test_remainder_halves_norm(z, w):
    if not w:
        return
    q, r = z.divmod(w)
    qw = q * w
    assert (qw.re + r.re, qw.im + r.im) == (z.re, z.im)
    assert 2 * r.norm() <= w.norm()


def test_gcd_matches_common_divisors():
    bound = 200
    classes = [c for n in range(1, bound + 1) for c in classes_of_norm(n)]
    index = {c: i for i, c in enumerate(classes)}
    # multiples of each class, found by multiplying with every small Gaussian integer
    divides_tab = np.zeros((len(classes), len(classes)), dtype=bool)
    r = math.isqrt(bound)
    for i, d in enumerate(classes):
        for x, y in itertools.product(range(-r, r + 1), repeat=2):
            if 0 < x * x + y * y <= bound // d.norm():
                m = canonicalize(GaussInt(x, y) * d.to_int())
                if m.norm() <= bound:
                    divides_tab[i, index[m]] = True
    norms = np.array([c.norm() for c in classes])
    for j, z in enumerate(classes):
        common = divides_tab[:, j][:, None] & divides_tab
        best = np.where(common, norms[:, None], 0)
        top = best.max(axis=0)
        assert ((best == top).sum(axis=0) == 1).all()
        expected = [classes[i] for i in best.argmax(axis=0)]
        got = [gauss_gcd(z.to_int(), w.to_int()) for w in classes]
        assert got == expected


def test_batch_gcd_and_divisibility(rng):
    z = rng.integers(-500, 500, size=(5000, 2))
    w = rng.integers(-500, 500, size=(5000, 2))
    z[0] = (0, 0)
    g = batch_gcd(z, w)
    for (a, b), (c, d), got in zip(z.tolist(), w.tolist(), g.tolist()):
        assert tuple(got) == gauss_gcd(GaussInt(a, b), GaussInt(c, d))
    for cls in [(1, 1), (1, 2), (0, 3), (2, 2), (4, 5)]:
        mask = _divisible_by(g, cls)
        assert mask.tolist() == [divides(cls, tuple(x)) for x in g.tolist()]
    with pytest.raises(ValueError):
        batch_gcd(np.zeros((1, 2), dtype=int), np.zeros((1, 2), dtype=int))


def test_s_prime_examples(small_table):
    assert sum_two_squares_count(3, small_table) == 0
    assert sum_two_squares_count(5, small_table) == 2
    assert sum_two_squares_count(25, small_table) == 3
    assert sum_two_squares_count(1, small_table) == 1


def test_s_prime_matches_lattice(small_table):
    N = 20000
    r = np.arange(0, math.isqrt(N) + 1)
    norms = (r[:, None] ** 2 + r[None, 1:] ** 2).ravel()
    brute = np.bincount(norms[norms <= N], minlength=N + 1)
    got = np.array([0] + [sum_two_squares_count(n, small_table) for n in range(1, N + 1)])
    assert np.count_nonzero(got != brute) == 0
    vec = multiplicative_values(SUM_TWO_SQUARES, small_table, N)
    assert np.array_equal(np.rint(vec[1:]).astype(int), brute[1:])


def test_s_prime_multiplicative(table):
    S = np.rint(multiplicative_values(SUM_TWO_SQUARES, table, 500 * 500)).astype(int).tolist()
    for a in range(1, 501):
        for b in range(a, 501):
            if math.gcd(a, b) == 1:
                assert S[a * b] == S[a] * S[b]


def test_splitting_examples(small_table):
    cls = canonicalize(GaussInt(1, 1) * GaussInt(1, 2))
    assert cls.norm() == 10
    assert unique_coprime_splitting_check(cls, 2, 5, small_table)
    for c in classes_of_norm(13):
        assert unique_coprime_splitting_check(c, 1, 13)
    with pytest.raises(ValueError):
        unique_coprime_splitting_check(GaussClass(0, 2), 2, 2)


def test_splitting_exhaustive():
    for n in range(1, 501):
        pairs = [(a, n // a) for a in range(1, n + 1) if n % a == 0 and math.gcd(a, n // a) == 1]
        for c in classes_of_norm(n):
            for a, b in pairs:
                assert unique_coprime_splitting_check(c, a, b)


def test_ball_examples():
    assert ball_classes(1) == [(0, 1)]
    assert ball_classes(2) == [(0, 1), (0, 2), (1, 1)]
    arr = ball_class_array(500)
    assert abs(len(arr) * 4 / (math.pi * 500**2) - 1) < 0.02
    assert (arr[:, 0] ** 2 + arr[:, 1] ** 2 <= 500**2).all()
    assert [tuple(x) for x in arr.tolist()] == sorted(tuple(x) for x in arr.tolist())


def test_zeta_prime_examples():
    Z = zeta_prime_normalizer(2)
    assert Z == zeta_value(2) * dirichlet_beta(2)
    assert zeta_prime_pmf(2, UNIT, Z) == pytest.approx(0.663700, abs=1e-6)
    assert zeta_prime_pmf(2, (1, 1), Z) == pytest.approx(0.25 / Z, rel=1e-15)
    for s in (2.0, 3.0):
        Zs = zeta_prime_normalizer(s)
        for n in (1, 2, 5, 25, 65, 325):
            total = math.fsum(zeta_prime_pmf(s, c, Zs) for c in classes_of_norm(n))
            assert total == pytest.approx(len(classes_of_norm(n)) * n**-s / Zs, rel=1e-12)


def test_zeta_prime_law_multiples():
    law = zeta_prime_law(2, 150)
    assert law.deficiency < 1e-4
    for z in [(1, 1), (1, 2), (0, 3)]:
        mult = [k for k in law.mass if divides(z, k)]
        # missing mass only lowers the truncated sum
        assert GaussClass(*z).norm() ** -2 - 1e-4 < law.prob(mult) <= GaussClass(*z).norm() ** -2


def test_series_identity(table):
    N = 10**5
    S = multiplicative_values(SUM_TWO_SQUARES, table, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    partial = math.fsum((S[1:] / n**2).tolist())
    target = zeta_value(2) * dirichlet_beta(2)
    assert target - 2e-4 <= partial <= target


def test_experiment_small_ball(rng):
    ball = ball_classes(2)
    unit = sum(gauss_gcd(x.to_int(), y.to_int()) == UNIT for x in ball for y in ball) / 9
    assert unit == 5 / 9
    e = gauss_coprime_experiment(2, 10**5, rng)
    assert e.ball_size == 3
    assert abs(e.unit.value - unit) <= 4 * e.unit.stderr


def test_experiment_profile(rng):
    e = gauss_coprime_experiment(200, 2 * 10**5, rng)
    p = e.profile[GaussClass(1, 1)]
    assert abs(p.value - 0.25) <= 4 * p.stderr + 1e-2
    target = 1 / zeta_prime_normalizer(2)
    assert abs(e.unit.value - target) < 0.01
    with pytest.raises(ValueError):
        gauss_coprime_experiment(1, 10, rng)
